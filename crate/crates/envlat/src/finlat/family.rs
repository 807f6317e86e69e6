//! Lattices whose elements are subsets of a finite base set.
//!
//! Members are `u64` bit masks over a base of at most 63 points, kept in a
//! canonical order: ascending cardinality, then lexicographic on the sorted
//! index sequence. All derived structures (names, matrices, reports) follow
//! that order, which keeps every output deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::finlat::{FinLattice, Poset, MAX_LATTICE_ELEMS, MAX_MASK_BITS};

/// Default ceiling on the number of members a subset family may reach.
pub const DEFAULT_FAMILY_CAP: usize = 1 << 20;

/// How a subset family is ordered as a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `S ≤ T` iff `S ⊆ T`.
    Inclusion,
    /// `S ≤ T` iff `S ⊇ T`.
    ReverseInclusion,
}

/// Canonical member order: cardinality first, then the sorted index sequence
/// lexicographically (for masks of equal weight this is "lowest differing bit
/// set comes first").
pub fn canonical_mask_cmp(a: &u64, b: &u64) -> Ordering {
    let ca = a.count_ones();
    let cb = b.count_ones();
    if ca != cb {
        return ca.cmp(&cb);
    }
    if a == b {
        return Ordering::Equal;
    }
    let diff = a ^ b;
    let low = diff & diff.wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// A family of subsets of a named base set, viewed as a lattice.
#[derive(Clone, Debug)]
pub struct SubsetFamilyLattice {
    base_size: usize,
    base_names: Vec<String>,
    members: Vec<u64>,
    index: BTreeMap<u64, usize>,
    orientation: Orientation,
}

impl SubsetFamilyLattice {
    pub fn new(
        base_names: Vec<String>,
        members: impl IntoIterator<Item = u64>,
        orientation: Orientation,
    ) -> Result<Self> {
        let base_size = base_names.len();
        if base_size > MAX_MASK_BITS {
            return Err(Error::SizeExceeded(format!(
                "base of {base_size} points exceeds the {MAX_MASK_BITS}-bit subset masks"
            )));
        }
        let mut members: Vec<u64> = members.into_iter().collect();
        members.sort_by(canonical_mask_cmp);
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >> base_size != 0) {
            return Err(Error::ParseError(format!(
                "member mask {bad:#x} mentions points outside the {base_size}-point base"
            )));
        }
        let index = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(SubsetFamilyLattice { base_size, base_names, members, index, orientation })
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.index.contains_key(&mask)
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// The same family under the opposite inclusion order.
    pub fn reversed(mut self) -> Self {
        self.orientation = match self.orientation {
            Orientation::Inclusion => Orientation::ReverseInclusion,
            Orientation::ReverseInclusion => Orientation::Inclusion,
        };
        self
    }

    pub fn member_name(&self, mask: u64) -> String {
        mask_name(mask, &self.base_names)
    }

    /// Materialises the family as a [`FinLattice`] (member order per the
    /// orientation). The family must be closed under union and intersection,
    /// otherwise some pair has no bound and `NotALattice` surfaces.
    pub fn to_lattice(&self) -> Result<FinLattice> {
        let n = self.members.len();
        if n == 0 {
            return Err(Error::Unbounded("empty family".into()));
        }
        if n > MAX_LATTICE_ELEMS {
            return Err(Error::SizeExceeded(format!(
                "family of {n} members exceeds the dense-matrix cap of {MAX_LATTICE_ELEMS}"
            )));
        }
        let mut leq = vec![false; n * n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                leq[i * n + j] = match self.orientation {
                    Orientation::Inclusion => a & !b == 0,
                    Orientation::ReverseInclusion => b & !a == 0,
                };
            }
        }
        let names = self.members.iter().map(|&m| self.member_name(m)).collect();
        FinLattice::from_leq(n, leq, Some(names))
    }
}

/// Renders a subset mask with the given point names, `∅` when empty.
pub fn mask_name(mask: u64, base_names: &[String]) -> String {
    if mask == 0 {
        return "∅".to_string();
    }
    let parts: Vec<&str> = (0..base_names.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| base_names[i].as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Indices set in a mask, ascending.
pub fn mask_elems(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Closure of `generators` (plus `∅` and the full base when `with_bounds`)
/// under union and intersection, as canonically sorted masks. Stops with
/// `SizeExceeded` past `cap` members.
pub fn generated_sublattice(
    base_size: usize,
    generators: &[u64],
    with_bounds: bool,
    cap: usize,
) -> Result<Vec<u64>> {
    if base_size > MAX_MASK_BITS {
        return Err(Error::SizeExceeded(format!(
            "base of {base_size} points exceeds the {MAX_MASK_BITS}-bit subset masks"
        )));
    }
    let full = super::full_mask(base_size);
    let mut family: BTreeSet<u64> = BTreeSet::new();
    let mut frontier: Vec<u64> = Vec::new();
    let push = |m: u64, family: &mut BTreeSet<u64>, frontier: &mut Vec<u64>| {
        if family.insert(m) {
            frontier.push(m);
        }
    };
    if with_bounds {
        push(0, &mut family, &mut frontier);
        push(full, &mut family, &mut frontier);
    }
    for &g in generators {
        if g & !full != 0 {
            return Err(Error::ParseError(format!(
                "generator mask {g:#x} mentions points outside the {base_size}-point base"
            )));
        }
        push(g, &mut family, &mut frontier);
    }
    while let Some(m) = frontier.pop() {
        let existing: Vec<u64> = family.iter().copied().collect();
        for x in existing {
            push(m | x, &mut family, &mut frontier);
            push(m & x, &mut family, &mut frontier);
            if family.len() > cap {
                return Err(Error::SizeExceeded(format!(
                    "generated family exceeded the cap of {cap} members"
                )));
            }
        }
    }
    let mut out: Vec<u64> = family.into_iter().collect();
    out.sort_by(canonical_mask_cmp);
    Ok(out)
}

/// All down-closed subsets of a poset, as an inclusion-ordered family.
pub fn downsets_lattice(p: &Poset, cap: usize) -> Result<SubsetFamilyLattice> {
    let n = p.n();
    if n > MAX_MASK_BITS {
        return Err(Error::SizeExceeded(format!(
            "poset of {n} points exceeds the {MAX_MASK_BITS}-bit subset masks"
        )));
    }
    let strict_down: Vec<u64> = (0..n)
        .map(|x| (0..n).filter(|&y| p.lt(y, x)).fold(0u64, |acc, y| acc | 1 << y))
        .collect();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut frontier = vec![0u64];
    seen.insert(0);
    while let Some(d) = frontier.pop() {
        for x in 0..n {
            if d >> x & 1 == 0 && strict_down[x] & !d == 0 {
                let next = d | 1 << x;
                if seen.insert(next) {
                    if seen.len() > cap {
                        return Err(Error::SizeExceeded(format!(
                            "family of down-sets exceeded the cap of {cap} members"
                        )));
                    }
                    frontier.push(next);
                }
            }
        }
    }
    SubsetFamilyLattice::new(p.names().to_vec(), seen, Orientation::Inclusion)
}

/// The prime filters of a finite distributive lattice, with the poset they
/// form. Each prime filter is the up-set of a unique join-irreducible; the
/// poset is ordered so that `↑a ≤ ↑b` iff `↑a ⊇ ↑b`, which makes it a copy of
/// the join-irreducibles in the order they inherit from `d`.
#[derive(Clone, Debug)]
pub struct PrimeFilters {
    pub poset: Poset,
    /// Per point: the filter as a mask over `d`'s carrier.
    pub filters: Vec<u64>,
    /// Per point: the join-irreducible generating the filter.
    pub generators: Vec<usize>,
}

pub fn prime_filter_poset(d: &FinLattice) -> Result<PrimeFilters> {
    if let Some((a, b, c)) = d.distributivity_witness() {
        return Err(Error::NotDistributive(format!(
            "prime filters classify only distributive lattices; {} ∧ ({} ∨ {}) differs from ({} ∧ {}) ∨ ({} ∧ {})",
            d.name(a), d.name(b), d.name(c), d.name(a), d.name(b), d.name(a), d.name(c)
        )));
    }
    if d.n() > MAX_MASK_BITS {
        return Err(Error::SizeExceeded(format!(
            "carrier of {} elements exceeds the {MAX_MASK_BITS}-bit subset masks",
            d.n()
        )));
    }
    let gens = d.join_irreducibles();
    let filters: Vec<u64> = gens
        .iter()
        .map(|&j| (0..d.n()).filter(|&x| d.le(j, x)).fold(0u64, |acc, x| acc | 1 << x))
        .collect();
    let k = gens.len();
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            // Reverse inclusion of filters = the order inherited from d.
            leq[a * k + b] = filters[b] & !filters[a] == 0;
        }
    }
    let names = gens.iter().map(|&j| format!("↑{}", d.name(j))).collect();
    let poset = Poset::new(k, leq, Some(names))?;
    Ok(PrimeFilters { poset, filters, generators: gens })
}
