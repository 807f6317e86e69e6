//! Admissible joins and meets, and the ideals/filters closed under them.
//!
//! A set M is join-admissible when its join distributes over every element:
//! a ∧ ⋁M = ⋁ₘ (a ∧ m) for all a. Equivalently — and much cheaper — every
//! join-irreducible below ⋁M already sits below some member of M. Both
//! routes are implemented and cross-checked; the defining equation doubles as
//! the independent oracle for the criterion.

use crate::error::{Error, Result};
use crate::finlat::{FinLattice, Irr};

/// How to decide admissibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Check the distribution equation against every element.
    Definition,
    /// Check the irreducible criterion: each x ∈ J(L) under ⋁M lies under
    /// some m ∈ M (dually with M(L) for meets).
    Irreducible,
}

/// Where the distribution equation broke: `lhs = element ∧ ⋁M` differs from
/// `rhs = ⋁ₘ (element ∧ m)` (joins and meets swap for the meet case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationWitness {
    pub element: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// Outcome of an admissibility test. At most one witness field is filled,
/// matching the method that ran; `admissible` implies both are absent.
#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub witness: Option<EquationWitness>,
    /// An irreducible below the join (above the meet) of M that no member
    /// of M accounts for.
    pub irr_witness: Option<usize>,
}

impl AdmissibilityReport {
    fn ok() -> Self {
        AdmissibilityReport { admissible: true, witness: None, irr_witness: None }
    }
}

/// Is `a ∧ ⋁M = ⋁ₘ (a ∧ m)` for every a? The empty set counts (⋁∅ = 0).
pub fn is_join_admissible(l: &FinLattice, m: &[usize], method: Method) -> Result<AdmissibilityReport> {
    match method {
        Method::Definition => {
            let big = l.join_of(m);
            for a in 0..l.n() {
                let lhs = l.meet(a, big);
                let rhs = l.join_of(&m.iter().map(|&x| l.meet(a, x)).collect::<Vec<_>>());
                if lhs != rhs {
                    return Ok(AdmissibilityReport {
                        admissible: false,
                        witness: Some(EquationWitness { element: a, lhs, rhs }),
                        irr_witness: None,
                    });
                }
            }
            Ok(AdmissibilityReport::ok())
        }
        Method::Irreducible => {
            let irr = Irr::new(l)?;
            let big = l.join_of(m);
            for &x in &irr.j {
                if l.le(x, big) && !m.iter().any(|&mm| l.le(x, mm)) {
                    return Ok(AdmissibilityReport {
                        admissible: false,
                        witness: None,
                        irr_witness: Some(x),
                    });
                }
            }
            Ok(AdmissibilityReport::ok())
        }
    }
}

/// Is `a ∨ ⋀M = ⋀ₘ (a ∨ m)` for every a? The empty set counts (⋀∅ = 1).
pub fn is_meet_admissible(l: &FinLattice, m: &[usize], method: Method) -> Result<AdmissibilityReport> {
    match method {
        Method::Definition => {
            let big = l.meet_of(m);
            for a in 0..l.n() {
                let lhs = l.join(a, big);
                let rhs = l.meet_of(&m.iter().map(|&x| l.join(a, x)).collect::<Vec<_>>());
                if lhs != rhs {
                    return Ok(AdmissibilityReport {
                        admissible: false,
                        witness: Some(EquationWitness { element: a, lhs, rhs }),
                        irr_witness: None,
                    });
                }
            }
            Ok(AdmissibilityReport::ok())
        }
        Method::Irreducible => {
            let irr = Irr::new(l)?;
            let big = l.meet_of(m);
            for &y in &irr.m {
                if l.le(big, y) && !m.iter().any(|&mm| l.le(mm, y)) {
                    return Ok(AdmissibilityReport {
                        admissible: false,
                        witness: None,
                        irr_witness: Some(y),
                    });
                }
            }
            Ok(AdmissibilityReport::ok())
        }
    }
}

/// How to generate the ideal/filter closed under admissible joins/meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMethod {
    /// Alternate downward closure with adding joins of admissible subsets
    /// until stable. Exponential in the set size; the independent oracle.
    Fixpoint,
    /// Membership test via irreducibles: b belongs iff every join-irreducible
    /// below b is below some generator.
    Criterion,
}

/// The fixpoint generator walks all subsets of the growing set, so it is
/// restricted to small carriers.
pub const FIXPOINT_ELEM_CAP: usize = 12;

fn down_closure(l: &FinLattice, set: &mut Vec<bool>) {
    for b in 0..l.n() {
        if !set[b] {
            if (0..l.n()).any(|a| set[a] && l.le(b, a)) {
                set[b] = true;
            }
        }
    }
}

fn up_closure(l: &FinLattice, set: &mut Vec<bool>) {
    for b in 0..l.n() {
        if !set[b] {
            if (0..l.n()).any(|a| set[a] && l.le(a, b)) {
                set[b] = true;
            }
        }
    }
}

fn collect(set: &[bool]) -> Vec<usize> {
    set.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Smallest downset containing T and closed under admissible joins.
pub fn aideal_generate(l: &FinLattice, t: &[usize], method: GenMethod) -> Result<Vec<usize>> {
    match method {
        GenMethod::Criterion => {
            let irr = Irr::new(l)?;
            let union = t.iter().fold(0u64, |acc, &a| acc | irr.hat(a));
            Ok((0..l.n()).filter(|&b| irr.hat(b) & !union == 0).collect())
        }
        GenMethod::Fixpoint => {
            if l.n() > FIXPOINT_ELEM_CAP {
                return Err(Error::SizeExceeded(format!(
                    "fixpoint generation walks all subsets; {} elements exceed the cap of {FIXPOINT_ELEM_CAP}",
                    l.n()
                )));
            }
            let mut set = vec![false; l.n()];
            set[l.bottom()] = true;
            for &a in t {
                set[a] = true;
            }
            loop {
                down_closure(l, &mut set);
                let elems = collect(&set);
                let mut grew = false;
                for mask in 0u64..1 << elems.len() {
                    let subset: Vec<usize> = elems
                        .iter()
                        .enumerate()
                        .filter(|(p, _)| mask >> p & 1 == 1)
                        .map(|(_, &x)| x)
                        .collect();
                    if is_join_admissible(l, &subset, Method::Definition)?.admissible {
                        let j = l.join_of(&subset);
                        if !set[j] {
                            set[j] = true;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    return Ok(collect(&set));
                }
            }
        }
    }
}

/// Smallest upset containing T and closed under admissible meets.
pub fn afilter_generate(l: &FinLattice, t: &[usize], method: GenMethod) -> Result<Vec<usize>> {
    match method {
        GenMethod::Criterion => {
            let irr = Irr::new(l)?;
            let union = t.iter().fold(0u64, |acc, &a| acc | irr.check(a));
            Ok((0..l.n()).filter(|&b| irr.check(b) & !union == 0).collect())
        }
        GenMethod::Fixpoint => {
            if l.n() > FIXPOINT_ELEM_CAP {
                return Err(Error::SizeExceeded(format!(
                    "fixpoint generation walks all subsets; {} elements exceed the cap of {FIXPOINT_ELEM_CAP}",
                    l.n()
                )));
            }
            let mut set = vec![false; l.n()];
            set[l.top()] = true;
            for &a in t {
                set[a] = true;
            }
            loop {
                up_closure(l, &mut set);
                let elems = collect(&set);
                let mut grew = false;
                for mask in 0u64..1 << elems.len() {
                    let subset: Vec<usize> = elems
                        .iter()
                        .enumerate()
                        .filter(|(p, _)| mask >> p & 1 == 1)
                        .map(|(_, &x)| x)
                        .collect();
                    if is_meet_admissible(l, &subset, Method::Definition)?.admissible {
                        let m = l.meet_of(&subset);
                        if !set[m] {
                            set[m] = true;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    return Ok(collect(&set));
                }
            }
        }
    }
}

/// For b in the ideal generated by T, the set {b ∧ a : a ∈ T} is a
/// join-admissible witness with join b. Returned deduplicated and sorted;
/// the caller checks membership first.
pub fn aideal_member_witness(l: &FinLattice, t: &[usize], b: usize) -> Vec<usize> {
    let mut m: Vec<usize> = t.iter().map(|&a| l.meet(b, a)).collect();
    m.sort_unstable();
    m.dedup();
    m
}
