//! Polarities, totally separated compact polarities, and the duality with
//! doubly dense adjoint pairs.
//!
//! A polarity is two point sets with a relation R between them. R induces
//! modal operators ⋄S = R[S] and □T = {x : R[x] ⊆ T}, a closure □⋄ on the
//! X side, an interior ⋄□ on the Y side, and quasi-orders on both sides.
//! The dual polarity of an adjoint pair has prime filters as points and
//! x R y ⟺ f[x] ⊆ y; conversely a separated polarity yields an adjoint pair
//! on its downset lattices. Tightness — every R-regular downset is R-closed
//! and every R-coregular downset is R-open — cuts out exactly the polarities
//! that arise from the two envelopes of a lattice.
//!
//! Everything here is finite, so compactness is free and "clopen" means
//! "any subset"; every report says so rather than silently overclaiming.

use crate::envelope::{validate_dadl, DaDL};
use crate::error::{Error, Result};
use crate::finlat::{
    downsets_lattice, full_mask, mask_name, prime_filter_poset, FinLattice, LatticeMap, Poset,
    SubsetFamilyLattice, DEFAULT_FAMILY_CAP, MAX_MASK_BITS,
};

/// Search budget for the simultaneous-isomorphism scan in
/// [`dadl_isomorphic`].
const ISO_NODE_BUDGET: u64 = 1_000_000;

/// Prime-filter identity of each point on one side of a polarity that was
/// built from an adjoint pair.
#[derive(Clone, Debug)]
pub struct SideProvenance {
    /// Per point: the element of the source lattice generating the filter.
    pub generators: Vec<usize>,
    /// Per point: the filter as a mask over the source lattice's carrier.
    pub filters: Vec<u64>,
}

/// Two point sets and a relation between them, with the induced modal
/// structure. Point counts are capped at the subset-mask width.
#[derive(Clone, Debug)]
pub struct Polarity {
    x_names: Vec<String>,
    y_names: Vec<String>,
    /// Per X point: the mask of related Y points.
    r: Vec<u64>,
    /// Per Y point: the mask of related X points.
    r_inv: Vec<u64>,
    pub x_provenance: Option<SideProvenance>,
    pub y_provenance: Option<SideProvenance>,
}

impl Polarity {
    pub fn new(x_names: Vec<String>, y_names: Vec<String>, rows: Vec<u64>) -> Result<Self> {
        let (xn, yn) = (x_names.len(), y_names.len());
        if xn > MAX_MASK_BITS || yn > MAX_MASK_BITS {
            return Err(Error::SizeExceeded(format!(
                "polarity with {xn}×{yn} points exceeds the {MAX_MASK_BITS}-bit subset masks"
            )));
        }
        if rows.len() != xn {
            return Err(Error::ParseError(format!(
                "relation has {} rows for {xn} points",
                rows.len()
            )));
        }
        if let Some(&bad) = rows.iter().find(|&&m| m >> yn != 0) {
            return Err(Error::ParseError(format!(
                "relation row {bad:#x} mentions points outside the {yn}-point side"
            )));
        }
        let r_inv = (0..yn)
            .map(|y| (0..xn).filter(|&x| rows[x] >> y & 1 == 1).fold(0u64, |m, x| m | 1 << x))
            .collect();
        Ok(Polarity { x_names, y_names, r: rows, r_inv, x_provenance: None, y_provenance: None })
    }

    pub fn x_size(&self) -> usize {
        self.x_names.len()
    }

    pub fn y_size(&self) -> usize {
        self.y_names.len()
    }

    pub fn x_names(&self) -> &[String] {
        &self.x_names
    }

    pub fn y_names(&self) -> &[String] {
        &self.y_names
    }

    pub fn r(&self, x: usize, y: usize) -> bool {
        self.r[x] >> y & 1 == 1
    }

    /// R[x] as a mask over Y.
    pub fn r_row(&self, x: usize) -> u64 {
        self.r[x]
    }

    /// R⁻¹[y] as a mask over X.
    pub fn r_col(&self, y: usize) -> u64 {
        self.r_inv[y]
    }

    /// ⋄S = R[S].
    pub fn diamond(&self, s: u64) -> u64 {
        (0..self.x_size()).filter(|&x| s >> x & 1 == 1).fold(0, |m, x| m | self.r[x])
    }

    /// □T = {x : R[x] ⊆ T}.
    pub fn box_of(&self, t: u64) -> u64 {
        (0..self.x_size()).filter(|&x| self.r[x] & !t == 0).fold(0, |m, x| m | 1 << x)
    }

    /// S̄ = □⋄S = {x : R[x] ⊆ R[S]}.
    pub fn closure(&self, s: u64) -> u64 {
        self.box_of(self.diamond(s))
    }

    /// T° = ⋄□T.
    pub fn interior(&self, t: u64) -> u64 {
        self.diamond(self.box_of(t))
    }

    pub fn is_r_closed(&self, s: u64) -> bool {
        self.closure(s) == s
    }

    pub fn is_r_open(&self, t: u64) -> bool {
        self.interior(t) == t
    }

    /// Induced quasi-order on X: a ≤ b ⟺ R[a] ⊆ R[b].
    pub fn x_le(&self, a: usize, b: usize) -> bool {
        self.r[a] & !self.r[b] == 0
    }

    /// Induced quasi-order on Y: a ≤ b ⟺ R⁻¹[a] ⊇ R⁻¹[b].
    pub fn y_le(&self, a: usize, b: usize) -> bool {
        self.r_inv[b] & !self.r_inv[a] == 0
    }

    /// The induced X order as a poset; errors if it is not antisymmetric.
    pub fn x_poset(&self) -> Result<Poset> {
        let n = self.x_size();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.x_le(a, b);
            }
        }
        Poset::new(n, leq, Some(self.x_names.clone()))
    }

    pub fn y_poset(&self) -> Result<Poset> {
        let n = self.y_size();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.y_le(a, b);
            }
        }
        Poset::new(n, leq, Some(self.y_names.clone()))
    }

    fn x_set_name(&self, mask: u64) -> String {
        mask_name(mask, &self.x_names)
    }

    fn y_set_name(&self, mask: u64) -> String {
        mask_name(mask, &self.y_names)
    }
}

/// The dual polarity of an adjoint pair: points are prime filters of the two
/// sides, and x R y ⟺ f[x] ⊆ y.
pub fn dual_polarity(dadl: &DaDL) -> Result<Polarity> {
    let pf_d = prime_filter_poset(&dadl.d)?;
    let pf_e = prime_filter_poset(&dadl.e)?;
    let xn = pf_d.filters.len();
    let _yn = pf_e.filters.len();
    let mut rows = vec![0u64; xn];
    for (x, &fx) in pf_d.filters.iter().enumerate() {
        for (y, &gy) in pf_e.filters.iter().enumerate() {
            let contained =
                (0..dadl.d.n()).filter(|&d| fx >> d & 1 == 1).all(|d| gy >> dadl.f.apply(d) & 1 == 1);
            if contained {
                rows[x] |= 1 << y;
            }
        }
    }
    let mut pol = Polarity::new(pf_d.poset.names().to_vec(), pf_e.poset.names().to_vec(), rows)?;
    pol.x_provenance =
        Some(SideProvenance { generators: pf_d.generators, filters: pf_d.filters });
    pol.y_provenance =
        Some(SideProvenance { generators: pf_e.generators, filters: pf_e.filters });
    Ok(pol)
}

/// Outcome of the three totally-separated axioms on a finite polarity.
#[derive(Clone, Debug)]
pub struct TscpReport {
    pub x_separated: bool,
    pub y_separated: bool,
    /// A pair of distinct points with identical relational profile, if any.
    pub x_collision: Option<(String, String)>,
    pub y_collision: Option<(String, String)>,
    pub operational: bool,
    pub disconnected: bool,
    /// A non-related pair with no separating stable pair (U, V), if any.
    pub disconnection_failure: Option<(String, String)>,
    /// Finite-case caveat recorded on every report.
    pub note: &'static str,
}

impl TscpReport {
    pub fn passed(&self) -> bool {
        self.x_separated && self.y_separated && self.operational && self.disconnected
    }
}

/// Checks R-separation, R-operationality, and total R-disconnectedness.
/// Finite spaces are compact and discrete, so "clopen" below means "any
/// subset"; the report says so in `note`.
pub fn check_tscp(pol: &Polarity) -> TscpReport {
    let (xn, yn) = (pol.x_size(), pol.y_size());

    let mut x_collision = None;
    for a in 0..xn {
        for b in a + 1..xn {
            if pol.x_le(a, b) && pol.x_le(b, a) {
                x_collision = Some((pol.x_names[a].clone(), pol.x_names[b].clone()));
            }
        }
    }
    let mut y_collision = None;
    for a in 0..yn {
        for b in a + 1..yn {
            if pol.y_le(a, b) && pol.y_le(b, a) {
                y_collision = Some((pol.y_names[a].clone(), pol.y_names[b].clone()));
            }
        }
    }

    // Operationality: ⋄ must send downsets of X to downsets of Y, and □
    // conversely. Finitely this is automatic — ⋄U = ∪ R[x] and each R[x] is
    // a Y-downset by definition of the Y order, dually for □ — but we check
    // the pointwise kernel rather than assert it.
    let mut operational = true;
    for x in 0..xn {
        for y in 0..yn {
            for y2 in 0..yn {
                if pol.r(x, y) && pol.y_le(y2, y) && !pol.r(x, y2) {
                    operational = false;
                }
            }
        }
    }
    for a in 0..xn {
        for b in 0..xn {
            if pol.x_le(a, b) && pol.r_row(a) & !pol.r_row(b) != 0 {
                operational = false;
            }
        }
    }

    // Total R-disconnectedness: for ¬(x R y), try U = □⋄{x} and V = ⋄U.
    // U is the least R-closed set containing x and V the least eligible
    // image, so if this pair fails, no pair works.
    let mut disconnection_failure = None;
    'outer: for x in 0..xn {
        for y in 0..yn {
            if pol.r(x, y) {
                continue;
            }
            let u = pol.box_of(pol.r_row(x));
            let v = pol.diamond(u);
            let ok = pol.box_of(v) == u && u >> x & 1 == 1 && v >> y & 1 == 0;
            if !ok {
                disconnection_failure = Some((pol.x_names[x].clone(), pol.y_names[y].clone()));
                break 'outer;
            }
        }
    }

    TscpReport {
        x_separated: x_collision.is_none(),
        y_separated: y_collision.is_none(),
        x_collision,
        y_collision,
        operational,
        disconnected: disconnection_failure.is_none(),
        disconnection_failure,
        note: "finite polarity: compactness and clopen-ness hold for every subset",
    }
}

fn tscp_gate(pol: &Polarity) -> Result<()> {
    let report = check_tscp(pol);
    if !report.passed() {
        let what = match (&report.x_collision, &report.y_collision) {
            (Some((a, b)), _) => format!("X points {a} and {b} are not separated"),
            (_, Some((a, b))) => format!("Y points {a} and {b} are not separated"),
            _ => "polarity fails total R-disconnectedness".to_string(),
        };
        return Err(Error::NotTSCP(what));
    }
    Ok(())
}

/// Tightness scan results: which points carry the irreducibility guard, and
/// every regular-but-not-closed (or coregular-but-not-open) downset.
#[derive(Clone, Debug)]
pub struct TightReport {
    pub tight: bool,
    /// Per X point: R[x] ≠ R[{x' < x}].
    pub x_guarded: Vec<bool>,
    /// Per Y point: R⁻¹[y] ≠ R⁻¹[{y' > y}].
    pub y_guarded: Vec<bool>,
    /// R-regular downsets of X that are not R-closed, as point-set names.
    pub x_failures: Vec<String>,
    pub x_failure_masks: Vec<u64>,
    /// Non-R-open downsets of Y whose complementary upsets are R-coregular.
    pub y_failures: Vec<String>,
    pub y_failure_masks: Vec<u64>,
}

/// Decides tightness by enumerating every downset on both sides. A downset
/// U ⊆ X is R-regular when each guarded x with R[x] ⊆ R[U] lies in U; the
/// polarity is tight when all such U are R-closed, and dually on Y.
pub fn is_tight(pol: &Polarity) -> Result<TightReport> {
    tscp_gate(pol)?;
    let (xn, yn) = (pol.x_size(), pol.y_size());

    let x_guarded: Vec<bool> = (0..xn)
        .map(|x| {
            let below: u64 = (0..xn)
                .filter(|&x2| x2 != x && pol.x_le(x2, x))
                .fold(0, |m, x2| m | 1 << x2);
            pol.r_row(x) != pol.diamond(below)
        })
        .collect();
    let y_guarded: Vec<bool> = (0..yn)
        .map(|y| {
            let above: Vec<usize> =
                (0..yn).filter(|&y2| y2 != y && pol.y_le(y, y2)).collect();
            let pre: u64 = above.iter().fold(0, |m, &y2| m | pol.r_col(y2));
            pol.r_col(y) != pre
        })
        .collect();

    let x_downs = downsets_lattice(&pol.x_poset()?, DEFAULT_FAMILY_CAP)?;
    let mut x_failures = Vec::new();
    let mut x_failure_masks = Vec::new();
    for &u in x_downs.members() {
        let image = pol.diamond(u);
        let regular = (0..xn)
            .filter(|&x| x_guarded[x])
            .all(|x| pol.r_row(x) & !image != 0 || u >> x & 1 == 1);
        if regular && !pol.is_r_closed(u) {
            x_failures.push(pol.x_set_name(u));
            x_failure_masks.push(u);
        }
    }

    // Order-dually to the X side, coregularity constrains the complementary
    // upset V = Y ∖ W: each guarded y with R⁻¹[y] ⊆ R⁻¹[V] must lie in V.
    // (Coregular upsets with all points guarded are exactly complements of
    // R-open downsets, so only unguarded points can break this.)
    let y_downs = downsets_lattice(&pol.y_poset()?, DEFAULT_FAMILY_CAP)?;
    let mut y_failures = Vec::new();
    let mut y_failure_masks = Vec::new();
    for &w in y_downs.members() {
        let v = full_mask(yn) & !w;
        let pre: u64 = (0..yn).filter(|&y| v >> y & 1 == 1).fold(0, |m, y| m | pol.r_col(y));
        let coregular = (0..yn)
            .filter(|&y| y_guarded[y])
            .all(|y| pol.r_col(y) & !pre != 0 || w >> y & 1 == 0);
        if coregular && !pol.is_r_open(w) {
            y_failures.push(pol.y_set_name(w));
            y_failure_masks.push(w);
        }
    }

    Ok(TightReport {
        tight: x_failures.is_empty() && y_failures.is_empty(),
        x_guarded,
        y_guarded,
        x_failures,
        x_failure_masks,
        y_failures,
        y_failure_masks,
    })
}

/// The adjoint pair dual to a TSCP, together with the downset families that
/// realise its two sides (kept so points can be traced through double
/// dualisation).
#[derive(Clone, Debug)]
pub struct DualPair {
    pub dadl: DaDL,
    pub x_downsets: SubsetFamilyLattice,
    pub y_downsets: SubsetFamilyLattice,
}

/// D = downsets of (X, ≤), E = downsets of (Y, ≤), f = ⋄, g = □.
pub fn dual_adjoint_pair(pol: &Polarity) -> Result<DualPair> {
    tscp_gate(pol)?;
    let x_downs = downsets_lattice(&pol.x_poset()?, DEFAULT_FAMILY_CAP)?;
    let y_downs = downsets_lattice(&pol.y_poset()?, DEFAULT_FAMILY_CAP)?;
    let d = x_downs.to_lattice()?;
    let e = y_downs.to_lattice()?;
    let f_table: Vec<usize> = x_downs
        .members()
        .iter()
        .map(|&u| {
            y_downs.index_of(pol.diamond(u)).ok_or_else(|| {
                Error::TheoremViolation("⋄ of a downset is not a downset".into())
            })
        })
        .collect::<Result<_>>()?;
    let g_table: Vec<usize> = y_downs
        .members()
        .iter()
        .map(|&v| {
            x_downs.index_of(pol.box_of(v)).ok_or_else(|| {
                Error::TheoremViolation("□ of a downset is not a downset".into())
            })
        })
        .collect::<Result<_>>()?;
    let f = LatticeMap::new(d.clone(), e.clone(), f_table)?;
    let g = LatticeMap::new(e.clone(), d.clone(), g_table)?;
    let dadl = validate_dadl(d, e, f, g, None)?;
    Ok(DualPair { dadl, x_downsets: x_downs, y_downsets: y_downs })
}

/// Exhibits the bijections φ : X → X'' and ψ : Y → Y'' onto the dual
/// polarity of the dual adjoint pair, with x R y ⟺ φ(x) R'' ψ(y). Each
/// point goes to its principal-downset prime filter.
pub fn double_dual_check(pol: &Polarity) -> Result<(Vec<usize>, Vec<usize>)> {
    let dp = dual_adjoint_pair(pol)?;
    let pol2 = dual_polarity(&dp.dadl)?;
    if pol2.x_size() != pol.x_size() || pol2.y_size() != pol.y_size() {
        return Err(Error::TheoremViolation(format!(
            "double dual has {}×{} points; expected {}×{}",
            pol2.x_size(),
            pol2.y_size(),
            pol.x_size(),
            pol.y_size()
        )));
    }
    let x_prov = pol2.x_provenance.as_ref().expect("dual polarity carries provenance");
    let y_prov = pol2.y_provenance.as_ref().expect("dual polarity carries provenance");

    let locate = |downsets: &SubsetFamilyLattice, gens: &[usize], principal: u64| -> Result<usize> {
        let member = downsets.index_of(principal).ok_or_else(|| {
            Error::TheoremViolation("principal downset missing from the dual carrier".into())
        })?;
        gens.iter().position(|&g| g == member).ok_or_else(|| {
            Error::TheoremViolation("principal downset is not a point of the double dual".into())
        })
    };

    let mut phi = Vec::with_capacity(pol.x_size());
    for x in 0..pol.x_size() {
        let down: u64 =
            (0..pol.x_size()).filter(|&x2| pol.x_le(x2, x)).fold(0, |m, x2| m | 1 << x2);
        phi.push(locate(&dp.x_downsets, &x_prov.generators, down)?);
    }
    let mut psi = Vec::with_capacity(pol.y_size());
    for y in 0..pol.y_size() {
        let down: u64 =
            (0..pol.y_size()).filter(|&y2| pol.y_le(y2, y)).fold(0, |m, y2| m | 1 << y2);
        psi.push(locate(&dp.y_downsets, &y_prov.generators, down)?);
    }

    let mut seen = vec![false; pol.x_size()];
    for &p in &phi {
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::TheoremViolation("double-dual X map is not injective".into()));
        }
    }
    let mut seen = vec![false; pol.y_size()];
    for &p in &psi {
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::TheoremViolation("double-dual Y map is not injective".into()));
        }
    }
    for x in 0..pol.x_size() {
        for y in 0..pol.y_size() {
            if pol.r(x, y) != pol2.r(phi[x], psi[y]) {
                return Err(Error::TheoremViolation(format!(
                    "double dual changes the relation at ({}, {})",
                    pol.x_names[x], pol.y_names[y]
                )));
            }
        }
    }
    Ok((phi, psi))
}

/// The free adjoint pair over a distributive lattice: all downsets of its
/// carrier against all upsets, adjoint via upper/lower bounds — the unique
/// adjunction sending each generator ↓a to ↑a. Doubly dense but (for
/// nontrivial D) not the envelope pair of any lattice.
pub fn free_dadl(d: &FinLattice) -> Result<DaDL> {
    if let Some((a, b, c)) = d.distributivity_witness() {
        return Err(Error::NotDistributive(format!(
            "free pair needs a distributive base; fails at ({}, {}, {})",
            d.name(a),
            d.name(b),
            d.name(c)
        )));
    }
    let n = d.n();
    if n > MAX_MASK_BITS {
        return Err(Error::SizeExceeded(format!(
            "base of {n} elements exceeds the {MAX_MASK_BITS}-bit subset masks"
        )));
    }
    let downs = downsets_lattice(&d.poset(), DEFAULT_FAMILY_CAP)?;
    let ups = downsets_lattice(&d.poset().op(), DEFAULT_FAMILY_CAP)?.reversed();
    let dl = downs.to_lattice()?;
    let el = ups.to_lattice()?;

    let up_masks: Vec<u64> =
        (0..n).map(|a| (0..n).filter(|&b| d.le(a, b)).fold(0, |m, b| m | 1 << b)).collect();
    let down_masks: Vec<u64> =
        (0..n).map(|a| (0..n).filter(|&b| d.le(b, a)).fold(0, |m, b| m | 1 << b)).collect();
    let bounds = |set: u64, cones: &[u64]| -> u64 {
        (0..n).filter(|&a| set >> a & 1 == 1).fold(full_mask(n), |m, a| m & cones[a])
    };

    let f_table: Vec<usize> = downs
        .members()
        .iter()
        .map(|&u| {
            ups.index_of(bounds(u, &up_masks))
                .ok_or_else(|| Error::TheoremViolation("upper bounds are not an upset".into()))
        })
        .collect::<Result<_>>()?;
    let g_table: Vec<usize> = ups
        .members()
        .iter()
        .map(|&w| {
            downs
                .index_of(bounds(w, &down_masks))
                .ok_or_else(|| Error::TheoremViolation("lower bounds are not a downset".into()))
        })
        .collect::<Result<_>>()?;
    let f = LatticeMap::new(dl.clone(), el.clone(), f_table)?;
    let g = LatticeMap::new(el.clone(), dl.clone(), g_table)?;
    validate_dadl(dl, el, f, g, Some(d.clone()))
}

/// Back-and-forth report for the dual of an adjoint-pair morphism.
#[derive(Clone, Debug)]
pub struct TscpMorphismReport {
    /// Contravariant point map X₂ → X₁ (prime-filter preimage under h∧).
    pub s_x: Vec<usize>,
    /// Contravariant point map Y₂ → Y₁ (preimage under h∨).
    pub s_y: Vec<usize>,
    pub forth: bool,
    pub diamond_back: bool,
    pub box_back: bool,
    pub violations: Vec<String>,
}

impl TscpMorphismReport {
    pub fn passed(&self) -> bool {
        self.forth && self.diamond_back && self.box_back
    }
}

/// Dualises a morphism of adjoint pairs (h∧, h∨) : (D₁,E₁) → (D₂,E₂) to the
/// pair of point maps between the dual polarities, and verifies the (forth),
/// (⋄-back), and (□-back) conditions pointwise.
pub fn dual_tscp_morphism(
    dadl1: &DaDL,
    dadl2: &DaDL,
    h_meet: &LatticeMap,
    h_join: &LatticeMap,
) -> Result<TscpMorphismReport> {
    if !h_meet.dom.same_order(&dadl1.d)
        || !h_meet.cod.same_order(&dadl2.d)
        || !h_join.dom.same_order(&dadl1.e)
        || !h_join.cod.same_order(&dadl2.e)
    {
        return Err(Error::PreconditionViolated(
            "morphism components do not run between the given pairs".into(),
        ));
    }
    for (m, side) in [(h_meet, "left"), (h_join, "right")] {
        if !crate::morphisms::classify_map(m)?.homomorphism {
            return Err(Error::NotDaDLMorphism(format!(
                "{side} component is not a bounded-lattice homomorphism"
            )));
        }
    }
    for d in 0..dadl1.d.n() {
        if h_join.apply(dadl1.f.apply(d)) != dadl2.f.apply(h_meet.apply(d)) {
            return Err(Error::NotDaDLMorphism(format!(
                "square h∨∘f₁ = f₂∘h∧ fails at {}",
                dadl1.d.name(d)
            )));
        }
    }
    for e in 0..dadl1.e.n() {
        if h_meet.apply(dadl1.g.apply(e)) != dadl2.g.apply(h_join.apply(e)) {
            return Err(Error::NotDaDLMorphism(format!(
                "square h∧∘g₁ = g₂∘h∨ fails at {}",
                dadl1.e.name(e)
            )));
        }
    }

    let pol1 = dual_polarity(dadl1)?;
    let pol2 = dual_polarity(dadl2)?;
    let preimage = |filters1: &[u64], filters2_point: u64, h: &LatticeMap| -> Result<usize> {
        let mut pre = 0u64;
        for d in 0..h.dom.n() {
            if filters2_point >> h.apply(d) & 1 == 1 {
                pre |= 1 << d;
            }
        }
        filters1.iter().position(|&f| f == pre).ok_or_else(|| {
            Error::TheoremViolation("preimage of a prime filter is not a prime filter".into())
        })
    };
    let x1 = pol1.x_provenance.as_ref().expect("provenance");
    let y1 = pol1.y_provenance.as_ref().expect("provenance");
    let x2 = pol2.x_provenance.as_ref().expect("provenance");
    let y2 = pol2.y_provenance.as_ref().expect("provenance");
    let s_x: Vec<usize> = x2
        .filters
        .iter()
        .map(|&fx| preimage(&x1.filters, fx, h_meet))
        .collect::<Result<_>>()?;
    let s_y: Vec<usize> = y2
        .filters
        .iter()
        .map(|&gy| preimage(&y1.filters, gy, h_join))
        .collect::<Result<_>>()?;

    // The dual morphism runs from the polarity of the codomain pair to the
    // polarity of the domain pair.
    let mut violations = Vec::new();
    let mut forth = true;
    for x in 0..pol2.x_size() {
        for y in 0..pol2.y_size() {
            if pol2.r(x, y) && !pol1.r(s_x[x], s_y[y]) {
                forth = false;
                violations.push(format!(
                    "(forth) fails at ({}, {})",
                    pol2.x_names()[x],
                    pol2.y_names()[y]
                ));
            }
        }
    }
    let mut diamond_back = true;
    for x1p in 0..pol1.x_size() {
        for y in 0..pol2.y_size() {
            if pol1.r(x1p, s_y[y]) {
                let ok = (0..pol2.x_size())
                    .any(|z| pol2.r(z, y) && pol1.x_le(s_x[z], x1p));
                if !ok {
                    diamond_back = false;
                    violations.push(format!(
                        "(⋄-back) fails at ({}, {})",
                        pol1.x_names()[x1p],
                        pol2.y_names()[y]
                    ));
                }
            }
        }
    }
    let mut box_back = true;
    for x in 0..pol2.x_size() {
        for y1p in 0..pol1.y_size() {
            if pol1.r(s_x[x], y1p) {
                let ok =
                    (0..pol2.y_size()).any(|w| pol2.r(x, w) && pol1.y_le(y1p, s_y[w]));
                if !ok {
                    box_back = false;
                    violations.push(format!(
                        "(□-back) fails at ({}, {})",
                        pol2.x_names()[x],
                        pol1.y_names()[y1p]
                    ));
                }
            }
        }
    }
    Ok(TscpMorphismReport { s_x, s_y, forth, diamond_back, box_back, violations })
}

/// The two classical comparison structures for a lattice.
#[derive(Clone, Debug)]
pub struct ClassicalDuals {
    /// Join-irreducibles against meet-irreducibles under the lattice order.
    pub hartung: Polarity,
    /// Closed sets over J(L): intersections of unions of the sets hat(a).
    pub j_closed_sets: SubsetFamilyLattice,
    /// Closed sets over M(L): intersections of unions of the sets check(a).
    pub m_closed_sets: SubsetFamilyLattice,
    pub urquhart: UrquhartSpace,
}

/// The ⪯-maximal pairs (x, y) ∈ J×M with x ≰ y, carrying the two coordinate
/// projection quasi-orders.
#[derive(Clone, Debug)]
pub struct UrquhartSpace {
    /// Lattice element indices (join-irreducible, meet-irreducible).
    pub pairs: Vec<(usize, usize)>,
    pub names: Vec<String>,
    /// p ≤₁ q ⟺ first(p) ≥ first(q), flattened row-major.
    pub leq1: Vec<bool>,
    /// p ≤₂ q ⟺ second(p) ≤ second(q).
    pub leq2: Vec<bool>,
}

pub fn classical_duals(l: &FinLattice) -> Result<ClassicalDuals> {
    let irr = crate::finlat::Irr::new(l)?;
    let jn = irr.j.len();
    let mn = irr.m.len();

    let rows: Vec<u64> = (0..jn)
        .map(|p| (0..mn).filter(|&q| l.le(irr.j[p], irr.m[q])).fold(0, |m, q| m | 1 << q))
        .collect();
    let j_names: Vec<String> = irr.j.iter().map(|&x| l.name(x).to_string()).collect();
    let m_names: Vec<String> = irr.m.iter().map(|&y| l.name(y).to_string()).collect();
    let hartung = Polarity::new(j_names.clone(), m_names.clone(), rows)?;

    let hat_gens: Vec<u64> = (0..l.n()).map(|a| irr.hat(a)).collect();
    let check_gens: Vec<u64> = (0..l.n()).map(|a| irr.check(a)).collect();
    let j_closed_sets = SubsetFamilyLattice::new(
        j_names,
        closed_set_family(jn, &hat_gens),
        crate::finlat::Orientation::Inclusion,
    )?;
    let m_closed_sets = SubsetFamilyLattice::new(
        m_names,
        closed_set_family(mn, &check_gens),
        crate::finlat::Orientation::Inclusion,
    )?;

    // Urquhart: maximal pairs of the complement of the Hartung relation
    // under ⪯ = (≥, ≤).
    let mut all: Vec<(usize, usize)> = Vec::new();
    for &x in &irr.j {
        for &y in &irr.m {
            if !l.le(x, y) {
                all.push((x, y));
            }
        }
    }
    let prec = |p: (usize, usize), q: (usize, usize)| l.le(q.0, p.0) && l.le(p.1, q.1);
    let pairs: Vec<(usize, usize)> = all
        .iter()
        .copied()
        .filter(|&p| !all.iter().any(|&q| q != p && prec(p, q) && !prec(q, p)))
        .collect();
    let names: Vec<String> =
        pairs.iter().map(|&(x, y)| format!("({},{})", l.name(x), l.name(y))).collect();
    let k = pairs.len();
    let mut leq1 = vec![false; k * k];
    let mut leq2 = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq1[a * k + b] = l.le(pairs[b].0, pairs[a].0);
            leq2[a * k + b] = l.le(pairs[a].1, pairs[b].1);
        }
    }
    Ok(ClassicalDuals {
        hartung,
        j_closed_sets,
        m_closed_sets,
        urquhart: UrquhartSpace { pairs, names, leq1, leq2 },
    })
}

/// Closed sets of the topology with the given subbasis for closed sets:
/// all intersections of unions of the generators (finite case), including
/// the empty set and the full space.
fn closed_set_family(base: usize, gens: &[u64]) -> Vec<u64> {
    use std::collections::BTreeSet;
    let mut unions: BTreeSet<u64> = BTreeSet::new();
    unions.insert(0);
    for &g in gens {
        let snapshot: Vec<u64> = unions.iter().copied().collect();
        for u in snapshot {
            unions.insert(u | g);
        }
        unions.insert(g);
    }
    let mut closed: BTreeSet<u64> = BTreeSet::new();
    closed.insert(full_mask(base));
    let mut work: Vec<u64> = vec![full_mask(base)];
    while let Some(c) = work.pop() {
        for &u in &unions {
            let next = c & u;
            if closed.insert(next) {
                work.push(next);
            }
        }
    }
    closed.into_iter().collect()
}

/// Searches for an isomorphism of adjoint pairs: order isomorphisms of both
/// sides commuting with f and g. Returns the component tables if found.
pub fn dadl_isomorphic(a: &DaDL, b: &DaDL) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if a.d.n() != b.d.n() || a.e.n() != b.e.n() {
        return Ok(None);
    }
    let mut nodes = 0u64;
    let isos = all_order_isos(&a.d, &b.d, &mut nodes)?;
    for phi in isos {
        // ψ is forced on the meet-dense image of f and extended by meets.
        let mut psi = Vec::with_capacity(a.e.n());
        for e1 in 0..a.e.n() {
            let above: Vec<usize> = (0..a.d.n())
                .filter(|&d1| a.e.le(e1, a.f.apply(d1)))
                .map(|d1| b.f.apply(phi[d1]))
                .collect();
            psi.push(b.e.meet_of(&above));
        }
        let bijective = {
            let mut seen = vec![false; b.e.n()];
            psi.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        };
        if !bijective {
            continue;
        }
        let order_iso = (0..a.e.n())
            .all(|p| (0..a.e.n()).all(|q| a.e.le(p, q) == b.e.le(psi[p], psi[q])));
        let f_commutes = (0..a.d.n()).all(|d1| psi[a.f.apply(d1)] == b.f.apply(phi[d1]));
        let g_commutes = (0..a.e.n()).all(|e1| phi[a.g.apply(e1)] == b.g.apply(psi[e1]));
        if order_iso && f_commutes && g_commutes {
            return Ok(Some((phi, psi)));
        }
    }
    Ok(None)
}

/// All order isomorphisms between two lattices' carriers, by invariant-guided
/// backtracking with a node budget.
fn all_order_isos(p: &FinLattice, q: &FinLattice, nodes: &mut u64) -> Result<Vec<Vec<usize>>> {
    let n = p.n();
    if q.n() != n {
        return Ok(Vec::new());
    }
    let profile = |l: &FinLattice, a: usize| -> (usize, usize) {
        ((0..n).filter(|&x| l.le(x, a)).count(), (0..n).filter(|&x| l.le(a, x)).count())
    };
    let pp: Vec<_> = (0..n).map(|a| profile(p, a)).collect();
    let qp: Vec<_> = (0..n).map(|a| profile(q, a)).collect();
    let mut cands: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).filter(|&b| qp[b] == pp[a]).collect()).collect();
    for c in &mut cands {
        if c.is_empty() {
            return Ok(Vec::new());
        }
        c.sort_unstable();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| cands[a].len());

    let mut table = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    fn rec(
        depth: usize,
        order: &[usize],
        cands: &[Vec<usize>],
        p: &FinLattice,
        q: &FinLattice,
        table: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
    ) -> bool {
        if depth == order.len() {
            out.push(table.clone());
            return true;
        }
        let a = order[depth];
        for &b in &cands[a] {
            *nodes += 1;
            if *nodes > ISO_NODE_BUDGET {
                return false;
            }
            if used[b] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&a2| {
                p.le(a, a2) == q.le(b, table[a2]) && p.le(a2, a) == q.le(table[a2], b)
            });
            if !consistent {
                continue;
            }
            table[a] = b;
            used[b] = true;
            let ok = rec(depth + 1, order, cands, p, q, table, used, out, nodes);
            table[a] = usize::MAX;
            used[b] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    if !rec(0, &order, &cands, p, q, &mut table, &mut used, &mut out, nodes) {
        return Err(Error::SizeExceeded(
            "isomorphism enumeration exceeded its search budget".into(),
        ));
    }
    Ok(out)
}
