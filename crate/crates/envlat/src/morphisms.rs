//! Classification of maps between lattices by the structure they preserve,
//! and exhaustive enumeration of maps in a given class.
//!
//! Beyond the textbook flags (monotone, meet/join-preserving, homomorphism)
//! the classifier tracks how a map interacts with admissible joins and
//! meets: whether it preserves them, and whether it sends admissible sets to
//! admissible sets. Those distinctions carve out the morphism classes for
//! which the envelope constructions are functorial.

use rand::Rng;
use rand::SeedableRng;

use crate::admissible::{is_join_admissible, is_meet_admissible, Method};
use crate::error::{Error, Result};
use crate::finlat::{FinLattice, LatticeMap};

/// Exhaustive admissibility transport is checked for domains up to this many
/// elements; larger domains get a deterministic random sample.
pub const SUBSET_EXHAUSTIVE_CAP: usize = 12;

/// Sample size for domains over the exhaustive cap.
pub const SUBSET_SAMPLES: usize = 10_000;

/// Budget on partial assignments explored by [`enumerate_maps`]; the pruned
/// search gives up with `SizeExceeded` past this many nodes.
pub const ENUMERATION_CAP: u64 = 10_000_000;
/// Hard cap on the number of maps an enumeration may return.
pub const ENUMERATION_RESULT_CAP: usize = 200_000;

/// A named counterexample for a flag that came out false.
#[derive(Clone, Debug)]
pub struct Witness {
    pub flag: &'static str,
    pub detail: String,
}

/// Everything the classifier found out about one map.
#[derive(Clone, Debug)]
pub struct Classification {
    pub monotone: bool,
    /// Binary meets and the empty meet (top).
    pub meet_preserving: bool,
    /// Binary joins and the empty join (bottom).
    pub join_preserving: bool,
    /// Meet- and join-preserving including both bounds.
    pub homomorphism: bool,
    pub preserves_admissible_joins: bool,
    pub preserves_admissible_meets: bool,
    pub sends_join_admissible_to_join_admissible: bool,
    pub sends_meet_admissible_to_meet_admissible: bool,
    pub surjective: bool,
    pub injective: bool,
    /// True when the admissibility flags rest on a subset sample rather than
    /// an exhaustive scan.
    pub sampled: bool,
    pub witnesses: Vec<Witness>,
}

impl Classification {
    /// Preserves finite meets, admissible joins, and admissibility of joins.
    pub fn wedge_avee(&self) -> bool {
        self.meet_preserving
            && self.preserves_admissible_joins
            && self.sends_join_admissible_to_join_admissible
    }

    /// The order dual of [`Classification::wedge_avee`].
    pub fn vee_awedge(&self) -> bool {
        self.join_preserving
            && self.preserves_admissible_meets
            && self.sends_meet_admissible_to_meet_admissible
    }

    /// A homomorphism transporting admissible sets to admissible sets.
    pub fn admissible_homomorphism(&self) -> bool {
        self.homomorphism
            && self.sends_join_admissible_to_join_admissible
            && self.sends_meet_admissible_to_meet_admissible
    }
}

fn set_names(l: &FinLattice, xs: &[usize]) -> String {
    l.set_name(xs)
}

/// Computes every flag for `h`. Subset-quantified flags scan all subsets of
/// the domain when it has at most [`SUBSET_EXHAUSTIVE_CAP`] elements and a
/// fixed-seed sample of [`SUBSET_SAMPLES`] subsets otherwise (`sampled` is
/// set accordingly).
pub fn classify_map(h: &LatticeMap) -> Result<Classification> {
    let dom = &h.dom;
    let cod = &h.cod;
    let mut w = Vec::new();

    let mut monotone = true;
    'mono: for a in 0..dom.n() {
        for b in 0..dom.n() {
            if dom.le(a, b) && !cod.le(h.apply(a), h.apply(b)) {
                monotone = false;
                w.push(Witness {
                    flag: "monotone",
                    detail: format!(
                        "{} ≤ {} but f({}) ≰ f({})",
                        dom.name(a),
                        dom.name(b),
                        dom.name(a),
                        dom.name(b)
                    ),
                });
                break 'mono;
            }
        }
    }

    let mut meet_preserving = true;
    if h.apply(dom.top()) != cod.top() {
        meet_preserving = false;
        w.push(Witness { flag: "meet_preserving", detail: "f(top) ≠ top".into() });
    } else {
        'meets: for a in 0..dom.n() {
            for b in 0..dom.n() {
                if h.apply(dom.meet(a, b)) != cod.meet(h.apply(a), h.apply(b)) {
                    meet_preserving = false;
                    w.push(Witness {
                        flag: "meet_preserving",
                        detail: format!(
                            "f({} ∧ {}) = {} but f({}) ∧ f({}) = {}",
                            dom.name(a),
                            dom.name(b),
                            cod.name(h.apply(dom.meet(a, b))),
                            dom.name(a),
                            dom.name(b),
                            cod.name(cod.meet(h.apply(a), h.apply(b)))
                        ),
                    });
                    break 'meets;
                }
            }
        }
    }

    let mut join_preserving = true;
    if h.apply(dom.bottom()) != cod.bottom() {
        join_preserving = false;
        w.push(Witness { flag: "join_preserving", detail: "f(bottom) ≠ bottom".into() });
    } else {
        'joins: for a in 0..dom.n() {
            for b in 0..dom.n() {
                if h.apply(dom.join(a, b)) != cod.join(h.apply(a), h.apply(b)) {
                    join_preserving = false;
                    w.push(Witness {
                        flag: "join_preserving",
                        detail: format!(
                            "f({} ∨ {}) = {} but f({}) ∨ f({}) = {}",
                            dom.name(a),
                            dom.name(b),
                            cod.name(h.apply(dom.join(a, b))),
                            dom.name(a),
                            dom.name(b),
                            cod.name(cod.join(h.apply(a), h.apply(b)))
                        ),
                    });
                    break 'joins;
                }
            }
        }
    }

    let homomorphism = meet_preserving && join_preserving;

    let mut preserves_admissible_joins = true;
    let mut preserves_admissible_meets = true;
    let mut sends_join = true;
    let mut sends_meet = true;

    let check_subset = |set: &[usize],
                            w: &mut Vec<Witness>,
                            paj: &mut bool,
                            pam: &mut bool,
                            sj: &mut bool,
                            sm: &mut bool|
     -> Result<()> {
        let image: Vec<usize> = set.iter().map(|&x| h.apply(x)).collect();
        if is_join_admissible(dom, set, Method::Irreducible)?.admissible {
            if *paj && h.apply(dom.join_of(set)) != cod.join_of(&image) {
                *paj = false;
                w.push(Witness {
                    flag: "preserves_admissible_joins",
                    detail: format!(
                        "join of {} maps to {} but images join to {}",
                        set_names(dom, set),
                        cod.name(h.apply(dom.join_of(set))),
                        cod.name(cod.join_of(&image))
                    ),
                });
            }
            if *sj && !is_join_admissible(cod, &image, Method::Irreducible)?.admissible {
                *sj = false;
                w.push(Witness {
                    flag: "sends_join_admissible_to_join_admissible",
                    detail: format!(
                        "{} is join-admissible but its image {} is not",
                        set_names(dom, set),
                        set_names(cod, &image)
                    ),
                });
            }
        }
        if is_meet_admissible(dom, set, Method::Irreducible)?.admissible {
            if *pam && h.apply(dom.meet_of(set)) != cod.meet_of(&image) {
                *pam = false;
                w.push(Witness {
                    flag: "preserves_admissible_meets",
                    detail: format!(
                        "meet of {} maps to {} but images meet to {}",
                        set_names(dom, set),
                        cod.name(h.apply(dom.meet_of(set))),
                        cod.name(cod.meet_of(&image))
                    ),
                });
            }
            if *sm && !is_meet_admissible(cod, &image, Method::Irreducible)?.admissible {
                *sm = false;
                w.push(Witness {
                    flag: "sends_meet_admissible_to_meet_admissible",
                    detail: format!(
                        "{} is meet-admissible but its image {} is not",
                        set_names(dom, set),
                        set_names(cod, &image)
                    ),
                });
            }
        }
        Ok(())
    };

    let sampled = dom.n() > SUBSET_EXHAUSTIVE_CAP;
    if !sampled {
        for mask in 0u64..1 << dom.n() {
            let set: Vec<usize> = (0..dom.n()).filter(|&i| mask >> i & 1 == 1).collect();
            check_subset(
                &set,
                &mut w,
                &mut preserves_admissible_joins,
                &mut preserves_admissible_meets,
                &mut sends_join,
                &mut sends_meet,
            )?;
        }
    } else {
        if dom.n() > crate::finlat::MAX_MASK_BITS {
            return Err(Error::SizeExceeded(format!(
                "domain of {} elements exceeds the subset-mask width",
                dom.n()
            )));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SUBSET_SAMPLES {
            let mask = rng.random_range(0..1u64 << dom.n());
            let set: Vec<usize> = (0..dom.n()).filter(|&i| mask >> i & 1 == 1).collect();
            check_subset(
                &set,
                &mut w,
                &mut preserves_admissible_joins,
                &mut preserves_admissible_meets,
                &mut sends_join,
                &mut sends_meet,
            )?;
        }
    }

    let surjective = h.is_surjective();
    if !surjective {
        let missed = (0..cod.n()).find(|&v| !h.table.contains(&v)).unwrap();
        w.push(Witness {
            flag: "surjective",
            detail: format!("{} is not in the image", cod.name(missed)),
        });
    }
    let injective = h.is_injective();
    if !injective {
        'inj: for a in 0..dom.n() {
            for b in a + 1..dom.n() {
                if h.apply(a) == h.apply(b) {
                    w.push(Witness {
                        flag: "injective",
                        detail: format!("f({}) = f({})", dom.name(a), dom.name(b)),
                    });
                    break 'inj;
                }
            }
        }
    }

    Ok(Classification {
        monotone,
        meet_preserving,
        join_preserving,
        homomorphism,
        preserves_admissible_joins,
        preserves_admissible_meets,
        sends_join_admissible_to_join_admissible: sends_join,
        sends_meet_admissible_to_meet_admissible: sends_meet,
        surjective,
        injective,
        sampled,
        witnesses: w,
    })
}

/// Which maps [`enumerate_maps`] should return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Monotone,
    MeetPreserving,
    JoinPreserving,
    Homomorphism,
    /// Meets plus admissible joins plus join-admissibility transport.
    WedgeAvee,
    /// Joins plus admissible meets plus meet-admissibility transport.
    VeeAwedge,
    AdmissibleHomomorphism,
}

/// Extra requirements layered on a [`MapClass`].
#[derive(Clone, Copy, Debug, Default)]
pub struct MapFilter {
    pub surjective: bool,
    pub injective: bool,
}

/// All maps dom → cod in the class, by backtracking over a linear extension
/// of the domain with monotonicity and partial meet/join pruning. Output is
/// ordered lexicographically by table.
pub fn enumerate_maps(
    dom: &FinLattice,
    cod: &FinLattice,
    class: MapClass,
    filter: MapFilter,
) -> Result<Vec<LatticeMap>> {
    // Assign along a linear extension so monotonicity prunes immediately.
    let mut order: Vec<usize> = (0..dom.n()).collect();
    order.sort_by_key(|&a| (0..dom.n()).filter(|&x| dom.le(x, a)).count());

    let needs_meets =
        matches!(class, MapClass::MeetPreserving | MapClass::Homomorphism | MapClass::WedgeAvee | MapClass::AdmissibleHomomorphism);
    let needs_joins =
        matches!(class, MapClass::JoinPreserving | MapClass::Homomorphism | MapClass::VeeAwedge | MapClass::AdmissibleHomomorphism);

    let mut table = vec![usize::MAX; dom.n()];
    let mut out = Vec::new();
    let mut nodes: u64 = 0;

    // Returns false once a budget is exhausted; the search then unwinds.
    #[allow(clippy::too_many_arguments)]
    fn assign(
        depth: usize,
        order: &[usize],
        dom: &FinLattice,
        cod: &FinLattice,
        needs_meets: bool,
        needs_joins: bool,
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
    ) -> bool {
        if depth == order.len() {
            if out.len() >= ENUMERATION_RESULT_CAP {
                return false;
            }
            out.push(table.clone());
            return true;
        }
        let a = order[depth];
        'cand: for v in 0..cod.n() {
            *nodes += 1;
            if *nodes > ENUMERATION_CAP {
                return false;
            }
            // Bounds are pinned for bound-preserving classes.
            if needs_meets && a == dom.top() && v != cod.top() {
                continue;
            }
            if needs_joins && a == dom.bottom() && v != cod.bottom() {
                continue;
            }
            // Monotone against all assigned comparables.
            for &p in &order[..depth] {
                let q = table[p];
                if dom.le(p, a) && !cod.le(q, v) || dom.le(a, p) && !cod.le(v, q) {
                    continue 'cand;
                }
            }
            table[a] = v;
            // Partial meet/join consistency: any pair among assigned whose
            // meet (join) is assigned must already commute.
            let assigned = &order[..=depth];
            let ok = assigned.iter().all(|&p| {
                let mp = dom.meet(p, a);
                let jp = dom.join(p, a);
                (!needs_meets
                    || table[mp] == usize::MAX
                    || table[mp] == cod.meet(table[p], table[a]))
                    && (!needs_joins
                        || table[jp] == usize::MAX
                        || table[jp] == cod.join(table[p], table[a]))
            });
            if ok && !assign(depth + 1, order, dom, cod, needs_meets, needs_joins, table, out, nodes)
            {
                return false;
            }
            table[a] = usize::MAX;
        }
        true
    }

    if !assign(0, &order, dom, cod, needs_meets, needs_joins, &mut table, &mut out, &mut nodes) {
        return Err(Error::SizeExceeded(format!(
            "map enumeration from {} into {} elements exceeded its search budget",
            dom.n(),
            cod.n()
        )));
    }
    out.sort();

    let mut maps = Vec::new();
    for table in out {
        let h = LatticeMap::new(dom.clone(), cod.clone(), table)?;
        if filter.surjective && !h.is_surjective() || filter.injective && !h.is_injective() {
            continue;
        }
        let c = classify_map(&h)?;
        let keep = match class {
            MapClass::Monotone => c.monotone,
            MapClass::MeetPreserving => c.meet_preserving,
            MapClass::JoinPreserving => c.join_preserving,
            MapClass::Homomorphism => c.homomorphism,
            MapClass::WedgeAvee => c.wedge_avee(),
            MapClass::VeeAwedge => c.vee_awedge(),
            MapClass::AdmissibleHomomorphism => c.admissible_homomorphism(),
        };
        if keep {
            maps.push(h);
        }
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_has_every_flag() {
        let l = corpus::m3();
        let id = LatticeMap::new(l.clone(), l.clone(), (0..l.n()).collect()).unwrap();
        let c = classify_map(&id).unwrap();
        assert!(c.monotone && c.homomorphism && c.surjective && c.injective);
        assert!(c.preserves_admissible_joins && c.preserves_admissible_meets);
        assert!(c.admissible_homomorphism() && c.wedge_avee() && c.vee_awedge());
        assert!(c.witnesses.is_empty());
        assert!(!c.sampled);
    }

    #[test]
    fn square_map_classifies_as_nonadmissible_homomorphism() {
        let f = corpus::square_into_antichain3();
        let c = classify_map(&f).unwrap();
        assert!(c.homomorphism);
        assert!(c.injective && !c.surjective);
        assert!(!c.sends_join_admissible_to_join_admissible);
        assert!(!c.admissible_homomorphism());
        let w = c
            .witnesses
            .iter()
            .find(|w| w.flag == "sends_join_admissible_to_join_admissible")
            .unwrap();
        assert!(w.detail.contains("{a,b}"), "{}", w.detail);
    }

    #[test]
    fn envelope_unit_classifies_as_wedge_avee_only() {
        let g = corpus::antichain3_into_cube();
        let c = classify_map(&g).unwrap();
        assert!(c.meet_preserving);
        assert!(!c.join_preserving);
        assert!(c.preserves_admissible_joins);
        assert!(c.sends_join_admissible_to_join_admissible);
        assert!(c.wedge_avee());
        assert!(!c.homomorphism);
    }

    #[test]
    fn composite_of_ex_maps_loses_admissible_joins() {
        let f = corpus::square_into_antichain3();
        let g = corpus::antichain3_into_cube();
        let gf = f.then(&g).unwrap();
        let c = classify_map(&gf).unwrap();
        assert!(c.meet_preserving);
        assert!(!c.preserves_admissible_joins);
        assert!(!c.wedge_avee());
        let w = c.witnesses.iter().find(|w| w.flag == "preserves_admissible_joins").unwrap();
        assert!(w.detail.contains("{a,b}"), "{}", w.detail);
    }

    #[test]
    fn homomorphisms_into_distributive_codomains_are_admissible() {
        for dom in [corpus::m3(), corpus::n5(), corpus::kite()] {
            for cod in [corpus::chain(2), corpus::square(), corpus::chain(3)] {
                for h in
                    enumerate_maps(&dom, &cod, MapClass::Homomorphism, MapFilter::default())
                        .unwrap()
                {
                    let c = classify_map(&h).unwrap();
                    assert!(c.admissible_homomorphism());
                }
            }
        }
    }

    #[test]
    fn enumeration_ground_truths() {
        let c2 = corpus::chain(2);
        let homs = enumerate_maps(&c2, &c2, MapClass::Homomorphism, MapFilter::default()).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].table, vec![0, 1]);

        // The bound-preserving homomorphisms from the square into the
        // bounded antichain: bounds are pinned; a and b go to middle points
        // or bounds such that joins/meets work out. Check the corpus map is
        // among them.
        let homs = enumerate_maps(
            &corpus::square(),
            &corpus::antichain3(),
            MapClass::Homomorphism,
            MapFilter::default(),
        )
        .unwrap();
        let f = corpus::square_into_antichain3();
        assert!(homs.iter().any(|h| h.table == f.table));

        let surj = enumerate_maps(
            &corpus::m3(),
            &c2,
            MapClass::Homomorphism,
            MapFilter { surjective: true, injective: false },
        )
        .unwrap();
        assert!(surj.is_empty());
    }

    /// Oracle: filter all |cod|^|dom| raw tables by direct law checks, with
    /// no backtracking or pruning involved.
    #[test]
    fn enumeration_matches_bruteforce_oracle() {
        let dom = corpus::square();
        let cod = corpus::chain(3);
        let n = dom.n();
        let mut oracle = Vec::new();
        for code in 0..cod.n().pow(n as u32) {
            let mut c = code;
            let mut table = Vec::with_capacity(n);
            for _ in 0..n {
                table.push(c % cod.n());
                c /= cod.n();
            }
            let hom = table[dom.bottom()] == cod.bottom()
                && table[dom.top()] == cod.top()
                && (0..n).all(|a| {
                    (0..n).all(|b| {
                        table[dom.meet(a, b)] == cod.meet(table[a], table[b])
                            && table[dom.join(a, b)] == cod.join(table[a], table[b])
                    })
                });
            if hom {
                oracle.push(table);
            }
        }
        oracle.sort();
        let got: Vec<Vec<usize>> =
            enumerate_maps(&dom, &cod, MapClass::Homomorphism, MapFilter::default())
                .unwrap()
                .into_iter()
                .map(|h| h.table)
                .collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn surjective_meet_and_admissible_join_maps_transport_admissibility() {
        // Surjectivity upgrade: any surjective map preserving meets and
        // admissible joins also sends join-admissible sets to join-admissible
        // sets. Spot-check over small corpus pairs.
        for dom in [corpus::square(), corpus::m3(), corpus::n5(), corpus::kite()] {
            for cod in [corpus::chain(2), corpus::chain(3), corpus::square()] {
                let maps = enumerate_maps(
                    &dom,
                    &cod,
                    MapClass::MeetPreserving,
                    MapFilter { surjective: true, injective: false },
                )
                .unwrap();
                for h in maps {
                    let c = classify_map(&h).unwrap();
                    if c.preserves_admissible_joins {
                        assert!(
                            c.sends_join_admissible_to_join_admissible,
                            "{:?}",
                            h.table
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        let b4 = corpus::boolean(4);
        assert!(matches!(
            enumerate_maps(&b4, &b4, MapClass::Monotone, MapFilter::default()),
            Err(crate::error::Error::SizeExceeded(_))
        ));
    }
}
