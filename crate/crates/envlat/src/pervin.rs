//! Finite Pervin quasi-uniform spaces: entourages, blocks, symmetrization,
//! and bicompletion.
//!
//! A subset A of a point set X determines the entourage
//! U_A = (Aᶜ×X) ∪ (X×A) = {(x,y) : x ∈ A ⇒ y ∈ A}; a generating family K
//! yields the quasi-uniformity with least basis element ∩_{A∈K} U_A (finitely
//! generated filters are principal, so the single basis relation carries the
//! whole structure). The blocks — the A whose U_A is an entourage, i.e. whose
//! characteristic map to the Sierpiński space is uniformly continuous — form
//! exactly the bounded sublattice of P(X) generated by K; `blocks` rechecks
//! that equality on every call. The bicompletion of a finite space is realised
//! by its Stone-dual characterization: prime filters of the block lattice
//! under inclusion, with each original point sent to its neighbourhood
//! filter. For the spaces a lattice induces on its irreducibles this
//! reconstructs the dual spaces of the two distributive envelopes.

use crate::envelope::{denv_join, denv_meet};
use crate::error::{Error, Result};
use crate::finlat::{
    find_order_isomorphism, full_mask, generated_sublattice, prime_filter_poset,
    FinLattice, Irr, Orientation, Poset, SubsetFamilyLattice, DEFAULT_FAMILY_CAP, MAX_MASK_BITS,
};

/// Point-count ceiling for the exhaustive 2^X block scan.
pub const PERVIN_CAP: usize = 20;

/// A finite Pervin space: points, generating family, and the least basis
/// entourage.
#[derive(Clone, Debug)]
pub struct PervinSpace {
    names: Vec<String>,
    /// Generating family K, each set as a mask over the points.
    k: Vec<u64>,
    /// Basis relation ∩_{A∈K} U_A; row x is the mask {y : (x,y) ∈ basis}.
    basis: Vec<u64>,
}

/// Builds the Pervin space (X, U_K). Point names default to indices.
pub fn pervin(x_size: usize, k: Vec<u64>, names: Option<Vec<String>>) -> Result<PervinSpace> {
    if x_size > MAX_MASK_BITS {
        return Err(Error::SizeExceeded(format!(
            "space with {x_size} points exceeds the {MAX_MASK_BITS}-bit subset masks"
        )));
    }
    let names = names.unwrap_or_else(|| (0..x_size).map(|i| i.to_string()).collect());
    if names.len() != x_size {
        return Err(Error::ParseError(format!(
            "{} point names for {x_size} points",
            names.len()
        )));
    }
    if let Some(&bad) = k.iter().find(|&&a| a >> x_size != 0) {
        return Err(Error::ParseError(format!(
            "generator {bad:#x} mentions points outside the {x_size}-point space"
        )));
    }
    let basis = (0..x_size)
        .map(|x| {
            k.iter()
                .filter(|&&a| a >> x & 1 == 1)
                .fold(full_mask(x_size), |row, &a| row & a)
        })
        .collect();
    Ok(PervinSpace { names, k, basis })
}

/// The space on J(L) generated by the sets hat(a) = {j ∈ J : j ≤ a}.
pub fn j_space(l: &FinLattice) -> Result<PervinSpace> {
    let irr = Irr::new(l)?;
    let names = irr.j.iter().map(|&x| l.name(x).to_string()).collect();
    pervin(irr.j.len(), (0..l.n()).map(|a| irr.hat(a)).collect(), Some(names))
}

/// The space on M(L) generated by the sets check(a) = {m ∈ M : a ≤ m}.
pub fn m_space(l: &FinLattice) -> Result<PervinSpace> {
    let irr = Irr::new(l)?;
    let names = irr.m.iter().map(|&y| l.name(y).to_string()).collect();
    pervin(irr.m.len(), (0..l.n()).map(|a| irr.check(a)).collect(), Some(names))
}

impl PervinSpace {
    pub fn x_size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn family(&self) -> &[u64] {
        &self.k
    }

    /// Basis relation rows: `basis()[x]` is the mask {y : (x,y) ∈ basis}.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// The entourage U_A as relation rows.
    pub fn entourage(&self, a: u64) -> Vec<u64> {
        let full = full_mask(self.x_size());
        (0..self.x_size()).map(|x| if a >> x & 1 == 1 { a } else { full }).collect()
    }

    /// Is U_A an entourage — equivalently, is χ_A uniformly continuous to
    /// the Sierpiński space? Checked as basis ⊆ U_A pair by pair.
    pub fn is_block(&self, a: u64) -> bool {
        (0..self.x_size()).all(|x| a >> x & 1 == 0 || self.basis[x] & !a == 0)
    }

    /// All blocks, by exhaustive scan, as a lattice of sets under inclusion.
    /// The result is rechecked against the bounded sublattice of P(X)
    /// generated by K; a mismatch would falsify the block theorem and is
    /// reported as a hard error.
    pub fn blocks(&self) -> Result<SubsetFamilyLattice> {
        let n = self.x_size();
        if n > PERVIN_CAP {
            return Err(Error::SizeExceeded(format!(
                "block scan over {n} points exceeds the cap of {PERVIN_CAP}"
            )));
        }
        let members: Vec<u64> = (0u64..1 << n).filter(|&a| self.is_block(a)).collect();
        let mut generated = generated_sublattice(n, &self.k, true, DEFAULT_FAMILY_CAP)?;
        generated.sort_unstable();
        let mut scanned = members.clone();
        scanned.sort_unstable();
        if scanned != generated {
            return Err(Error::TheoremViolation(format!(
                "blocks differ from the generated sublattice: {} scanned vs {} generated",
                scanned.len(),
                generated.len()
            )));
        }
        SubsetFamilyLattice::new(self.names.clone(), members, Orientation::Inclusion)
    }

    /// Symmetrization: the equivalence classes of basis ∩ basis⁻¹ (points
    /// lying in exactly the same generators), plus the symmetric relation's
    /// rows.
    pub fn symmetrize(&self) -> (Vec<Vec<usize>>, Vec<u64>) {
        let n = self.x_size();
        let sym: Vec<u64> = (0..n)
            .map(|x| {
                self.basis[x]
                    & (0..n).filter(|&y| self.basis[y] >> x & 1 == 1).fold(0, |m, y| m | 1 << y)
            })
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut class = vec![x];
            class_of[x] = classes.len();
            for y in x + 1..n {
                if class_of[y] == usize::MAX && sym[x] >> y & 1 == 1 && sym[y] >> x & 1 == 1 {
                    class_of[y] = classes.len();
                    class.push(y);
                }
            }
            classes.push(class);
        }
        (classes, sym)
    }

    /// The bicompletion, realised Stone-dually: points are the prime filters
    /// of the block lattice, ordered by filter inclusion, and η sends each
    /// original point to its block neighbourhood filter.
    pub fn bicompletion_points(&self) -> Result<Bicompletion> {
        let blocks = self.blocks()?;
        let pf = prime_filter_poset(&blocks.to_lattice()?)?;
        // prime_filter_poset orders points by reverse filter inclusion;
        // the uniform Priestley order is plain inclusion.
        let points = pf.poset.op();
        let eta = (0..self.x_size())
            .map(|x| {
                let nbhd: u64 = blocks
                    .members()
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a >> x & 1 == 1)
                    .fold(0, |m, (i, _)| m | 1 << i);
                pf.filters.iter().position(|&f| f == nbhd).ok_or_else(|| {
                    Error::TheoremViolation(format!(
                        "neighbourhood filter of point {} is not prime",
                        self.names[x]
                    ))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(Bicompletion { blocks, points, filters: pf.filters, eta })
    }
}

/// Stone-dual bicompletion of a finite Pervin space.
#[derive(Clone, Debug)]
pub struct Bicompletion {
    pub blocks: SubsetFamilyLattice,
    /// Prime filters of the block lattice under filter inclusion.
    pub points: Poset,
    /// Per point: its filter as a mask over the block lattice's carrier.
    pub filters: Vec<u64>,
    /// η_X: original point → bicompletion point.
    pub eta: Vec<usize>,
}

impl Bicompletion {
    /// η bijective means the space was already bicomplete.
    pub fn eta_bijective(&self) -> bool {
        let mut seen = vec![false; self.points.n()];
        self.eta.len() == self.points.n()
            && self.eta.iter().all(|&p| !std::mem::replace(&mut seen[p], true))
    }
}

/// Comparison of the two bicompletions of a lattice's irreducible spaces
/// with the dual spaces of its two envelopes.
#[derive(Clone, Debug)]
pub struct UnifDualReport {
    pub j_points: usize,
    pub m_points: usize,
    /// Bicompletion of the J-side space ≅ dual space of the ∧-envelope.
    pub j_iso: bool,
    /// Bicompletion of the M-side space ≅ dual space of the ∨-envelope.
    pub m_iso: bool,
    pub j_eta_bijective: bool,
    pub m_eta_bijective: bool,
}

impl UnifDualReport {
    pub fn passed(&self) -> bool {
        self.j_iso && self.m_iso
    }
}

/// Verifies that the bicompletion of the space on J(L) is the dual space of
/// D^∧(L), and dually on the M side. Point posets are compared up to order
/// isomorphism; filter inclusion on the ∧ side runs opposite to the
/// join-irreducible order of the envelope, so that comparison is against the
/// opposite poset.
pub fn verify_unifdual(l: &FinLattice) -> Result<UnifDualReport> {
    let j_bic = j_space(l)?.bicompletion_points()?;
    let env_meet = denv_meet(l)?;
    let pf_meet = prime_filter_poset(&env_meet.lattice)?;
    let j_iso = find_order_isomorphism(
        j_bic.points.n(),
        j_bic.points.leq_matrix(),
        pf_meet.poset.n(),
        pf_meet.poset.op().leq_matrix(),
        PERVIN_CAP,
    )?
    .is_some();

    let m_bic = m_space(l)?.bicompletion_points()?;
    let env_join = denv_join(l)?;
    let pf_join = prime_filter_poset(&env_join.lattice)?;
    let m_iso = find_order_isomorphism(
        m_bic.points.n(),
        m_bic.points.leq_matrix(),
        pf_join.poset.n(),
        pf_join.poset.leq_matrix(),
        PERVIN_CAP,
    )?
    .is_some();

    Ok(UnifDualReport {
        j_points: j_bic.points.n(),
        m_points: m_bic.points.n(),
        j_iso,
        m_iso,
        j_eta_bijective: j_bic.eta_bijective(),
        m_eta_bijective: m_bic.eta_bijective(),
    })
}
