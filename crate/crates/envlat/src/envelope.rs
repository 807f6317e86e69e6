//! Distributive envelopes and the adjoint pair between them.
//!
//! For a finite bounded lattice L, the meet-envelope is the sublattice of
//! P(J(L)) generated by the sets hat(a) = {x ∈ J : x ≤ a} — equivalently,
//! all downsets of (J(L), ≤) — with unit a ↦ hat(a). The unit preserves all
//! finite meets and exactly the admissible joins, and any map out of L with
//! those preservation properties into a distributive lattice factors through
//! it uniquely. The join-envelope is the order dual over M(L). The two are
//! linked by the upper/lower-bound maps, a Galois adjunction whose closed
//! elements recover L.

use crate::error::{Error, Result};
use crate::finlat::{
    find_isomorphism, generated_sublattice, FinLattice, Irr, LatticeMap, Orientation,
    SubsetFamilyLattice, DEFAULT_FAMILY_CAP,
};
use crate::morphisms::{classify_map, enumerate_maps, MapClass, MapFilter};

/// Distributivity of a materialised carrier is re-verified up to this size;
/// larger carriers are distributive by construction (families of sets under
/// union and intersection).
const DISTRIBUTIVITY_RECHECK_CAP: usize = 128;

/// Caps for the exhaustive uniqueness scan in [`extend_map`]: above these,
/// uniqueness follows from join-density of the unit image and is not
/// re-searched.
const UNIQUENESS_CARRIER_CAP: usize = 64;
const UNIQUENESS_CODOMAIN_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvelopeKind {
    /// Carrier over J(L) by inclusion; unit preserves meets and admissible
    /// joins; unit image is join-dense.
    Meet,
    /// Carrier over M(L) by reverse inclusion; unit preserves joins and
    /// admissible meets; unit image is meet-dense.
    Join,
}

/// A distributive envelope of a lattice.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub source: FinLattice,
    /// Subsets of the irreducible base (J(L) or M(L)).
    pub carrier: SubsetFamilyLattice,
    /// The carrier materialised as a lattice (members in canonical order).
    pub lattice: FinLattice,
    /// η : source → lattice.
    pub unit: LatticeMap,
    pub kind: EnvelopeKind,
}

fn build_envelope(l: &FinLattice, kind: EnvelopeKind) -> Result<Envelope> {
    let irr = Irr::new(l)?;
    let (base, masks, orientation): (Vec<usize>, Vec<u64>, Orientation) = match kind {
        EnvelopeKind::Meet => {
            (irr.j.clone(), (0..l.n()).map(|a| irr.hat(a)).collect(), Orientation::Inclusion)
        }
        EnvelopeKind::Join => {
            (irr.m.clone(), (0..l.n()).map(|a| irr.check(a)).collect(), Orientation::ReverseInclusion)
        }
    };
    let base_names: Vec<String> = base.iter().map(|&x| l.name(x).to_string()).collect();
    let members = generated_sublattice(base.len(), &masks, true, DEFAULT_FAMILY_CAP)?;
    let carrier = SubsetFamilyLattice::new(base_names, members, orientation)?;
    let lattice = carrier.to_lattice()?;
    let table: Vec<usize> = (0..l.n())
        .map(|a| carrier.index_of(masks[a]).expect("unit images generate the carrier"))
        .collect();
    let unit = LatticeMap::new(l.clone(), lattice.clone(), table)?;

    // The unit must be an order embedding; anything else is a bug upstream.
    for a in 0..l.n() {
        for b in 0..l.n() {
            if l.le(a, b) != lattice.le(unit.apply(a), unit.apply(b)) {
                return Err(Error::TheoremViolation(format!(
                    "envelope unit does not embed the order at ({}, {})",
                    l.name(a),
                    l.name(b)
                )));
            }
        }
    }
    if lattice.n() <= DISTRIBUTIVITY_RECHECK_CAP {
        if let Some((a, b, c)) = lattice.distributivity_witness() {
            return Err(Error::TheoremViolation(format!(
                "envelope carrier is not distributive at ({}, {}, {})",
                lattice.name(a),
                lattice.name(b),
                lattice.name(c)
            )));
        }
    }
    Ok(Envelope { source: l.clone(), carrier, lattice, unit, kind })
}

/// The distributive meet-envelope of `l`.
pub fn denv_meet(l: &FinLattice) -> Result<Envelope> {
    build_envelope(l, EnvelopeKind::Meet)
}

/// The distributive join-envelope of `l`.
pub fn denv_join(l: &FinLattice) -> Result<Envelope> {
    build_envelope(l, EnvelopeKind::Join)
}

/// Lifts `f : L → D` (meets and admissible joins preserved, D distributive)
/// to the homomorphism `f̂ : carrier → D` with `f̂ ∘ η = f`: a carrier member
/// goes to the join of the f-images of its points. Uniqueness is re-verified
/// by exhaustive homomorphism enumeration for small carriers and codomains.
pub fn extend_map(f: &LatticeMap, env: &Envelope) -> Result<LatticeMap> {
    if env.kind != EnvelopeKind::Meet {
        return Err(Error::PreconditionViolated(
            "extension is defined along the meet-envelope unit".into(),
        ));
    }
    if !env.source.same_order(&f.dom) {
        return Err(Error::PreconditionViolated(
            "map domain differs from the envelope source".into(),
        ));
    }
    let cod = &f.cod;
    if let Some((a, b, c)) = cod.distributivity_witness() {
        return Err(Error::NotDistributiveCodomain(format!(
            "codomain breaks distributivity at ({}, {}, {})",
            cod.name(a),
            cod.name(b),
            cod.name(c)
        )));
    }
    let class = classify_map(f)?;
    if !class.meet_preserving || !class.preserves_admissible_joins {
        let detail = class
            .witnesses
            .iter()
            .find(|w| w.flag == "meet_preserving" || w.flag == "preserves_admissible_joins")
            .map(|w| w.detail.clone())
            .unwrap_or_else(|| "map does not satisfy the extension preconditions".into());
        return Err(Error::PreconditionViolated(detail));
    }

    let base_elems: Vec<usize> = env
        .carrier
        .base_names()
        .iter()
        .map(|n| env.source.index_by_name(n).expect("carrier base points are source elements"))
        .collect();
    let table: Vec<usize> = env
        .carrier
        .members()
        .iter()
        .map(|&v| {
            let images: Vec<usize> = base_elems
                .iter()
                .enumerate()
                .filter(|(p, _)| v >> p & 1 == 1)
                .map(|(_, &j)| f.apply(j))
                .collect();
            cod.join_of(&images)
        })
        .collect();
    let fhat = LatticeMap::new(env.lattice.clone(), cod.clone(), table)?;

    // f̂ ∘ η = f and f̂ a homomorphism; both are consequences of the
    // preconditions, so a failure here is reported loudly.
    for a in 0..env.source.n() {
        if fhat.apply(env.unit.apply(a)) != f.apply(a) {
            return Err(Error::TheoremViolation(format!(
                "extension does not restrict to the map at {}",
                env.source.name(a)
            )));
        }
    }
    let fc = classify_map(&fhat)?;
    if !fc.homomorphism {
        return Err(Error::TheoremViolation(
            "extension is not a bounded-lattice homomorphism".into(),
        ));
    }
    if env.lattice.n() <= UNIQUENESS_CARRIER_CAP && cod.n() <= UNIQUENESS_CODOMAIN_CAP {
        match enumerate_maps(&env.lattice, cod, MapClass::Homomorphism, MapFilter::default()) {
            Ok(homs) => {
                let extending = homs
                    .iter()
                    .filter(|h| {
                        (0..env.source.n()).all(|a| h.apply(env.unit.apply(a)) == f.apply(a))
                    })
                    .count();
                if extending != 1 {
                    return Err(Error::TheoremViolation(format!(
                        "{extending} homomorphisms extend the map; expected exactly one"
                    )));
                }
            }
            Err(Error::SizeExceeded(_)) => {} // above the scan budget: uniqueness holds by density
            Err(e) => return Err(e),
        }
    }
    Ok(fhat)
}

/// A doubly dense adjoint pair of distributive lattices.
#[derive(Clone, Debug)]
pub struct DaDL {
    pub d: FinLattice,
    pub e: FinLattice,
    /// Lower adjoint f : D → E.
    pub f: LatticeMap,
    /// Upper adjoint g : E → D.
    pub g: LatticeMap,
    /// The lattice this pair was built from, when there is one.
    pub source: Option<FinLattice>,
}

/// Checks every axiom: distributivity of both sides, the adjunction
/// `f(d) ≤ e ⟺ d ≤ g(e)`, and double density (g[E] join-dense in D, f[D]
/// meet-dense in E).
pub fn validate_dadl(
    d: FinLattice,
    e: FinLattice,
    f: LatticeMap,
    g: LatticeMap,
    source: Option<FinLattice>,
) -> Result<DaDL> {
    if !f.dom.same_order(&d) || !f.cod.same_order(&e) || !g.dom.same_order(&e) || !g.cod.same_order(&d) {
        return Err(Error::PreconditionViolated(
            "adjoint-pair maps do not run between the given lattices".into(),
        ));
    }
    if let Some((a, b, c)) = d.distributivity_witness() {
        return Err(Error::NotDistributive(format!(
            "left side breaks distributivity at ({}, {}, {})",
            d.name(a),
            d.name(b),
            d.name(c)
        )));
    }
    if let Some((a, b, c)) = e.distributivity_witness() {
        return Err(Error::NotDistributive(format!(
            "right side breaks distributivity at ({}, {}, {})",
            e.name(a),
            e.name(b),
            e.name(c)
        )));
    }
    for dd in 0..d.n() {
        for ee in 0..e.n() {
            let lhs = e.le(f.apply(dd), ee);
            let rhs = d.le(dd, g.apply(ee));
            if lhs != rhs {
                return Err(Error::NotAdjoint {
                    d: d.name(dd).to_string(),
                    e: e.name(ee).to_string(),
                    detail: if lhs {
                        "f(d) ≤ e but d ≰ g(e)".into()
                    } else {
                        "d ≤ g(e) but f(d) ≰ e".into()
                    },
                });
            }
        }
    }
    for dd in 0..d.n() {
        let below: Vec<usize> =
            (0..e.n()).map(|ee| g.apply(ee)).filter(|&x| d.le(x, dd)).collect();
        if d.join_of(&below) != dd {
            return Err(Error::NotDoublyDense(format!(
                "{} is not a join of g-images",
                d.name(dd)
            )));
        }
    }
    for ee in 0..e.n() {
        let above: Vec<usize> =
            (0..d.n()).map(|dd| f.apply(dd)).filter(|&x| e.le(ee, x)).collect();
        if e.meet_of(&above) != ee {
            return Err(Error::NotDoublyDense(format!(
                "{} is not a meet of f-images",
                e.name(ee)
            )));
        }
    }
    Ok(DaDL { d, e, f, g, source })
}

/// The adjoint pair between the two envelopes of `l`: f sends a set of
/// join-irreducibles to its set of upper bounds in M(L), g dually.
pub fn galois_pair(l: &FinLattice) -> Result<DaDL> {
    let env_meet = denv_meet(l)?;
    let env_join = denv_join(l)?;
    let irr = Irr::new(l)?;

    let jn = irr.j.len();
    let mn = irr.m.len();
    let upper = |v: u64| -> u64 {
        // ∩_{x ∈ V} check(x); the empty intersection is all of M(L).
        let mut acc = crate::finlat::full_mask(mn);
        for (p, &x) in irr.j.iter().enumerate() {
            if v >> p & 1 == 1 {
                acc &= irr.check(x);
            }
        }
        acc
    };
    let lower = |w: u64| -> u64 {
        let mut acc = crate::finlat::full_mask(jn);
        for (p, &y) in irr.m.iter().enumerate() {
            if w >> p & 1 == 1 {
                acc &= irr.hat(y);
            }
        }
        acc
    };

    let f_table: Vec<usize> = env_meet
        .carrier
        .members()
        .iter()
        .map(|&v| {
            env_join
                .carrier
                .index_of(upper(v))
                .ok_or_else(|| Error::TheoremViolation("upper bounds left the carrier".into()))
        })
        .collect::<Result<_>>()?;
    let g_table: Vec<usize> = env_join
        .carrier
        .members()
        .iter()
        .map(|&w| {
            env_meet
                .carrier
                .index_of(lower(w))
                .ok_or_else(|| Error::TheoremViolation("lower bounds left the carrier".into()))
        })
        .collect::<Result<_>>()?;

    let f = LatticeMap::new(env_meet.lattice.clone(), env_join.lattice.clone(), f_table)?;
    let g = LatticeMap::new(env_join.lattice.clone(), env_meet.lattice.clone(), g_table)?;
    validate_dadl(env_meet.lattice, env_join.lattice, f, g, Some(l.clone()))
}

/// The lattice of Galois-closed elements {d : g(f(d)) = d} with the induced
/// order, together with an isomorphism onto the source when one is recorded.
pub fn galois_closed(dadl: &DaDL) -> Result<(FinLattice, Option<LatticeMap>)> {
    let closed: Vec<usize> =
        (0..dadl.d.n()).filter(|&x| dadl.g.apply(dadl.f.apply(x)) == x).collect();
    let k = closed.len();
    let mut leq = vec![false; k * k];
    for (i, &a) in closed.iter().enumerate() {
        for (j, &b) in closed.iter().enumerate() {
            leq[i * k + j] = dadl.d.le(a, b);
        }
    }
    let names = closed.iter().map(|&a| dadl.d.name(a).to_string()).collect();
    let lattice = FinLattice::from_leq(k, leq, Some(names))?;
    let iso = match &dadl.source {
        None => None,
        Some(src) => {
            let table = find_isomorphism(&lattice, src)?.ok_or_else(|| {
                Error::TheoremViolation(
                    "Galois-closed elements are not isomorphic to the source".into(),
                )
            })?;
            Some(LatticeMap::new(lattice.clone(), src.clone(), table)?)
        }
    };
    Ok((lattice, iso))
}

/// Functorial action on an admissible homomorphism h : L₁ → L₂: the induced
/// homomorphisms between the meet-envelopes and between the join-envelopes.
/// Both naturality squares and the adjoint-pair intertwining squares are
/// verified.
pub fn denv_on_morphism(h: &LatticeMap) -> Result<(LatticeMap, LatticeMap)> {
    let class = classify_map(h)?;
    if !class.admissible_homomorphism() {
        let detail = class
            .witnesses
            .iter()
            .map(|w| w.detail.clone())
            .next()
            .unwrap_or_else(|| "map is not an admissible homomorphism".into());
        return Err(Error::PreconditionViolated(detail));
    }
    let pair1 = galois_pair(&h.dom)?;
    let pair2 = galois_pair(&h.cod)?;
    let env1_meet = denv_meet(&h.dom)?;
    let env2_meet = denv_meet(&h.cod)?;
    let env1_join = denv_join(&h.dom)?;
    let env2_join = denv_join(&h.cod)?;
    let irr1 = Irr::new(&h.dom)?;
    let irr2 = Irr::new(&h.cod)?;

    let meet_table: Vec<usize> = env1_meet
        .carrier
        .members()
        .iter()
        .map(|&v| {
            let mut image = 0u64;
            for (p, &j) in irr1.j.iter().enumerate() {
                if v >> p & 1 == 1 {
                    image |= irr2.hat(h.apply(j));
                }
            }
            env2_meet
                .carrier
                .index_of(image)
                .ok_or_else(|| Error::TheoremViolation("image left the meet carrier".into()))
        })
        .collect::<Result<_>>()?;
    let join_table: Vec<usize> = env1_join
        .carrier
        .members()
        .iter()
        .map(|&w| {
            let mut image = 0u64;
            for (p, &y) in irr1.m.iter().enumerate() {
                if w >> p & 1 == 1 {
                    image |= irr2.check(h.apply(y));
                }
            }
            env2_join
                .carrier
                .index_of(image)
                .ok_or_else(|| Error::TheoremViolation("image left the join carrier".into()))
        })
        .collect::<Result<_>>()?;

    let h_meet = LatticeMap::new(env1_meet.lattice.clone(), env2_meet.lattice.clone(), meet_table)?;
    let h_join = LatticeMap::new(env1_join.lattice.clone(), env2_join.lattice.clone(), join_table)?;

    for (m, side) in [(&h_meet, "meet"), (&h_join, "join")] {
        let c = classify_map(m)?;
        if !c.homomorphism {
            return Err(Error::TheoremViolation(format!(
                "induced {side}-envelope map is not a homomorphism"
            )));
        }
    }
    for a in 0..h.dom.n() {
        if h_meet.apply(env1_meet.unit.apply(a)) != env2_meet.unit.apply(h.apply(a)) {
            return Err(Error::TheoremViolation(format!(
                "meet-envelope naturality fails at {}",
                h.dom.name(a)
            )));
        }
        if h_join.apply(env1_join.unit.apply(a)) != env2_join.unit.apply(h.apply(a)) {
            return Err(Error::TheoremViolation(format!(
                "join-envelope naturality fails at {}",
                h.dom.name(a)
            )));
        }
    }
    // Intertwining with the adjoint pairs: f₂ ∘ h∧ = h∨ ∘ f₁ and
    // g₂ ∘ h∨ = h∧ ∘ g₁.
    for v in 0..pair1.d.n() {
        if pair2.f.apply(h_meet.apply(v)) != h_join.apply(pair1.f.apply(v)) {
            return Err(Error::TheoremViolation(format!(
                "upper-bound square fails at {}",
                pair1.d.name(v)
            )));
        }
    }
    for w in 0..pair1.e.n() {
        if pair2.g.apply(h_join.apply(w)) != h_meet.apply(pair1.g.apply(w)) {
            return Err(Error::TheoremViolation(format!(
                "lower-bound square fails at {}",
                pair1.e.name(w)
            )));
        }
    }
    Ok((h_meet, h_join))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::finlat::downsets_lattice;

    fn idx(l: &FinLattice, name: &str) -> usize {
        l.index_by_name(name).unwrap()
    }

    #[test]
    fn meet_envelope_of_the_diamond_is_the_cube() {
        let env = denv_meet(&corpus::m3()).unwrap();
        assert_eq!(env.lattice.n(), 8);
        assert!(find_isomorphism(&env.lattice, &corpus::cube()).unwrap().is_some());
        // Unit sends the middle elements to singletons and 1 to the full set.
        let a = idx(&env.source, "a");
        assert_eq!(env.lattice.name(env.unit.apply(a)), "{a}");
        assert_eq!(env.lattice.name(env.unit.apply(env.source.top())), "{a,b,c}");
    }

    #[test]
    fn meet_envelope_of_the_pentagon_has_six_members() {
        let env = denv_meet(&corpus::n5()).unwrap();
        let names: Vec<String> =
            env.carrier.members().iter().map(|&m| env.carrier.member_name(m)).collect();
        assert_eq!(names, vec!["∅", "{a}", "{b}", "{a,b}", "{b,c}", "{a,b,c}"]);
    }

    #[test]
    fn join_envelope_mirrors_the_meet_envelope_of_the_dual() {
        // The diamond is self-dual: its join-envelope is again the cube,
        // with the unit landing in co-singletons for middle elements.
        let env = denv_join(&corpus::m3()).unwrap();
        assert_eq!(env.lattice.n(), 8);
        assert!(find_isomorphism(&env.lattice, &corpus::cube()).unwrap().is_some());
        let a = idx(&env.source, "a");
        assert_eq!(env.lattice.name(env.unit.apply(a)), "{a}");
        // Bottom of the reverse-inclusion carrier is the full set check(0).
        assert_eq!(env.lattice.name(env.lattice.bottom()), "{a,b,c}");
        assert_eq!(env.lattice.name(env.unit.apply(env.source.bottom())), "{a,b,c}");
    }

    #[test]
    fn envelope_carrier_is_exactly_the_downsets_of_the_irreducibles() {
        // Independent oracle: the closure of the hat-images under union and
        // intersection is the full family of downsets of (J(L), ≤).
        for (name, l) in corpus::corpus() {
            let env = denv_meet(&l).unwrap();
            let irr = Irr::new(&l).unwrap();
            let k = irr.j.len();
            let mut leq = vec![false; k * k];
            for p in 0..k {
                for q in 0..k {
                    leq[p * k + q] = l.le(irr.j[p], irr.j[q]);
                }
            }
            let jposet = crate::finlat::Poset::new(k, leq, None).unwrap();
            let downs = downsets_lattice(&jposet, 1 << 20).unwrap();
            assert_eq!(env.carrier.members(), downs.members(), "{name}");
        }
    }

    #[test]
    fn envelope_of_a_distributive_lattice_is_itself() {
        for l in [corpus::cube(), corpus::chain(4), corpus::square()] {
            let env = denv_meet(&l).unwrap();
            assert!(find_isomorphism(&env.lattice, &l).unwrap().is_some());
            let env = denv_join(&l).unwrap();
            assert!(find_isomorphism(&env.lattice, &l).unwrap().is_some());
        }
    }

    #[test]
    fn unit_preserves_meets_and_admissible_joins_and_is_dense() {
        for (name, l) in corpus::corpus() {
            if l.n() > 7 {
                continue;
            }
            let env = denv_meet(&l).unwrap();
            let c = classify_map(&env.unit).unwrap();
            assert!(c.wedge_avee(), "{name}: unit should be a meet/admissible-join map");
            assert!(c.injective, "{name}");
            // Join-density: every carrier member is a union of unit images.
            for (i, &v) in env.carrier.members().iter().enumerate() {
                let mut acc = 0u64;
                for a in 0..l.n() {
                    let img = env.carrier.members()[env.unit.apply(a)];
                    if img & !v == 0 {
                        acc |= img;
                    }
                }
                assert_eq!(acc, v, "{name} member {i}");
            }

            let env = denv_join(&l).unwrap();
            let c = classify_map(&env.unit).unwrap();
            assert!(c.vee_awedge(), "{name}: dual unit");
        }
    }

    #[test]
    fn extension_of_the_unit_is_the_identity() {
        let l = corpus::m3();
        let env = denv_meet(&l).unwrap();
        let fhat = extend_map(&env.unit, &env).unwrap();
        assert_eq!(fhat.table, (0..env.lattice.n()).collect::<Vec<_>>());
    }

    #[test]
    fn extension_rejects_the_composite_that_breaks_an_admissible_join() {
        let f = corpus::square_into_antichain3();
        let g = corpus::antichain3_into_cube();
        let gf = f.then(&g).unwrap();
        let env = denv_meet(&corpus::square()).unwrap();
        let err = extend_map(&gf, &env).unwrap_err();
        match err {
            Error::PreconditionViolated(msg) => {
                assert!(msg.contains("{a,b}"), "witness should name the set: {msg}");
            }
            other => panic!("expected PreconditionViolated, got {other:?}"),
        }
    }

    #[test]
    fn extension_rejects_nondistributive_codomains() {
        let l = corpus::square();
        let env = denv_meet(&l).unwrap();
        let into_m3 = LatticeMap::new(
            l.clone(),
            corpus::m3(),
            vec![0, idx(&corpus::m3(), "a"), idx(&corpus::m3(), "b"), 4],
        )
        .unwrap();
        assert!(matches!(
            extend_map(&into_m3, &env),
            Err(Error::NotDistributiveCodomain(_))
        ));
    }

    #[test]
    fn extension_satisfies_the_universal_property_on_a_real_instance() {
        // The singleton embedding of the bounded antichain into the cube is
        // the unit in disguise, so its extension is an isomorphism.
        let g = corpus::antichain3_into_cube();
        let env = denv_meet(&corpus::antichain3()).unwrap();
        let ghat = extend_map(&g, &env).unwrap();
        let c = classify_map(&ghat).unwrap();
        assert!(c.homomorphism && c.injective && c.surjective);
        for a in 0..g.dom.n() {
            assert_eq!(ghat.apply(env.unit.apply(a)), g.apply(a));
        }
    }

    #[test]
    fn galois_pair_of_the_diamond() {
        let pair = galois_pair(&corpus::m3()).unwrap();
        assert_eq!(pair.d.n(), 8);
        assert_eq!(pair.e.n(), 8);
        // u(hat(a)) = check(a) and u({a,b}) = check(1) = ∅.
        let d_a = pair.d.index_by_name("{a}").unwrap();
        assert_eq!(pair.e.name(pair.f.apply(d_a)), "{a}");
        let d_ab = pair.d.index_by_name("{a,b}").unwrap();
        assert_eq!(pair.e.name(pair.f.apply(d_ab)), "∅");
    }

    #[test]
    fn galois_maps_on_principal_members_swap_hat_and_check() {
        for (name, l) in corpus::corpus() {
            if l.n() > 8 {
                continue;
            }
            let pair = galois_pair(&l).unwrap();
            let env_meet = denv_meet(&l).unwrap();
            let env_join = denv_join(&l).unwrap();
            for a in 0..l.n() {
                assert_eq!(
                    pair.f.apply(env_meet.unit.apply(a)),
                    env_join.unit.apply(a),
                    "{name} at {}",
                    l.name(a)
                );
                assert_eq!(pair.g.apply(env_join.unit.apply(a)), env_meet.unit.apply(a));
            }
        }
    }

    #[test]
    fn galois_pair_of_a_distributive_lattice_is_an_isomorphism_pair() {
        for l in [corpus::square(), corpus::chain(3), corpus::cube()] {
            let pair = galois_pair(&l).unwrap();
            let c = classify_map(&pair.f).unwrap();
            assert!(c.injective && c.surjective && c.homomorphism);
            for x in 0..pair.d.n() {
                assert_eq!(pair.g.apply(pair.f.apply(x)), x);
            }
        }
        let pair = galois_pair(&corpus::chain(2)).unwrap();
        assert_eq!(pair.d.n(), 2);
        assert_eq!(pair.f.table, vec![pair.e.bottom(), pair.e.top()]);
    }

    #[test]
    fn galois_closed_elements_recover_the_lattice() {
        for (name, l) in corpus::corpus() {
            if l.n() > 8 {
                continue;
            }
            let pair = galois_pair(&l).unwrap();
            let (closed, iso) = galois_closed(&pair).unwrap();
            assert_eq!(closed.n(), l.n(), "{name}");
            let iso = iso.expect("source recorded");
            for a in 0..closed.n() {
                for b in 0..closed.n() {
                    assert_eq!(closed.le(a, b), l.le(iso.apply(a), iso.apply(b)), "{name}");
                }
            }
        }
    }

    #[test]
    fn trivial_pair_reconstructs_its_side() {
        let d = corpus::cube();
        let id = LatticeMap::new(d.clone(), d.clone(), (0..d.n()).collect()).unwrap();
        let pair = validate_dadl(d.clone(), d.clone(), id.clone(), id, Some(d.clone())).unwrap();
        let (closed, iso) = galois_closed(&pair).unwrap();
        assert_eq!(closed.n(), d.n());
        assert!(iso.is_some());
    }

    #[test]
    fn broken_adjunctions_are_rejected() {
        let d = corpus::cube();
        let id = LatticeMap::new(d.clone(), d.clone(), (0..d.n()).collect()).unwrap();
        let top = LatticeMap::new(d.clone(), d.clone(), vec![d.top(); d.n()]).unwrap();
        assert!(matches!(
            validate_dadl(d.clone(), d.clone(), top, id.clone(), None),
            Err(Error::NotAdjoint { .. })
        ));
        // Constant-bottom g against identity f: adjunction fails.
        let bot = LatticeMap::new(d.clone(), d.clone(), vec![d.bottom(); d.n()]).unwrap();
        assert!(matches!(
            validate_dadl(d.clone(), d.clone(), id, bot, None),
            Err(Error::NotAdjoint { .. })
        ));
    }

    #[test]
    fn nondistributive_sides_are_rejected() {
        let m3 = corpus::m3();
        let id = LatticeMap::new(m3.clone(), m3.clone(), (0..m3.n()).collect()).unwrap();
        assert!(matches!(
            validate_dadl(m3.clone(), m3.clone(), id.clone(), id, None),
            Err(Error::NotDistributive(_))
        ));
    }

    #[test]
    fn functor_action_on_identity_and_surjection() {
        let l = corpus::m3();
        let id = LatticeMap::new(l.clone(), l.clone(), (0..l.n()).collect()).unwrap();
        let (hm, hj) = denv_on_morphism(&id).unwrap();
        assert_eq!(hm.table, (0..hm.dom.n()).collect::<Vec<_>>());
        assert_eq!(hj.table, (0..hj.dom.n()).collect::<Vec<_>>());

        // Collapse the middle of a 3-chain to the top: a surjective
        // homomorphism, admissible since the codomain is distributive.
        let c3 = corpus::chain(3);
        let c2 = corpus::chain(2);
        let collapse = LatticeMap::new(c3.clone(), c2.clone(), vec![0, 1, 1]).unwrap();
        let (hm, hj) = denv_on_morphism(&collapse).unwrap();
        assert!(classify_map(&hm).unwrap().surjective);
        assert!(classify_map(&hj).unwrap().surjective);
        assert_eq!(hm.dom.n(), 3);
        assert_eq!(hm.cod.n(), 2);
    }

    #[test]
    fn functor_action_rejects_plain_homomorphisms() {
        let f = corpus::square_into_antichain3();
        let err = denv_on_morphism(&f).unwrap_err();
        match err {
            Error::PreconditionViolated(msg) => assert!(msg.contains("{a,b}"), "{msg}"),
            other => panic!("expected PreconditionViolated, got {other:?}"),
        }
    }

    #[test]
    fn universal_property_beats_exhaustive_search_on_small_pairs() {
        // For each qualifying map from the square or the diamond into a
        // small distributive lattice, the extension is the unique extending
        // homomorphism; injective maps lift to injective extensions.
        for dom in [corpus::square(), corpus::m3()] {
            let env = denv_meet(&dom).unwrap();
            for cod in [corpus::chain(2), corpus::chain(3), corpus::square()] {
                let maps =
                    enumerate_maps(&dom, &cod, MapClass::WedgeAvee, MapFilter::default()).unwrap();
                for f in maps {
                    let fhat = extend_map(&f, &env).unwrap();
                    for a in 0..dom.n() {
                        assert_eq!(fhat.apply(env.unit.apply(a)), f.apply(a));
                    }
                    if f.is_injective() {
                        assert!(fhat.is_injective());
                    }
                }
            }
        }
    }

    #[test]
    fn kite_envelopes_have_the_expected_shapes() {
        // J(kite) = {x, p, q} with x below both: downsets ∅, {x}, {x,p},
        // {x,q}, {x,p,q}. M(kite) = {0, p, q} with 0 below both: five
        // upsets, dually.
        let env = denv_meet(&corpus::kite()).unwrap();
        let names: Vec<String> =
            env.carrier.members().iter().map(|&m| env.carrier.member_name(m)).collect();
        assert_eq!(names, vec!["∅", "{x}", "{x,p}", "{x,q}", "{x,p,q}"]);
        let env = denv_join(&corpus::kite()).unwrap();
        assert_eq!(env.lattice.n(), 5);
    }
}
