//! The embedded acceptance suite: eleven numbered checks covering envelopes,
//! admissibility, the universal property, Galois reconstruction, the duality
//! pipeline, tightness, Pervin blocks, bicompletion, and report determinism.
//! Every check runs offline on the built-in corpus and the small-lattice
//! enumeration; `selftest` runs them all and the integration tests run them
//! one by one.

use crate::admissible::{aideal_generate, is_join_admissible, is_meet_admissible, GenMethod, Method};
use crate::corpus;
use crate::duality::{
    check_tscp, classical_duals, double_dual_check, dual_polarity, free_dadl, is_tight,
};
use crate::envelope::{denv_meet, extend_map, galois_closed, galois_pair, validate_dadl};
use crate::error::{Error, Result};
use crate::finlat::{enumerate_lattices, find_order_isomorphism, FinLattice, Irr};
use crate::morphisms::{classify_map, enumerate_maps, MapClass, MapFilter};
use crate::pervin::{j_space, pervin, verify_unifdual};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How many checks the suite has.
pub const CRITERIA: usize = 11;

/// One suite check, done.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    /// The fixed one-line rendering used in reports.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} ({}): {} — {}",
            self.id,
            self.name,
            if self.passed { "pass" } else { "FAIL" },
            self.detail
        )
    }
}

const NAMES: [&str; CRITERIA] = [
    "meet-envelope of m3",
    "counterexample maps",
    "admissibility criteria agree",
    "a-ideal generation and intersection law",
    "envelope universal property",
    "galois reconstruction",
    "surjections transport admissibility",
    "duality suite",
    "free pair fails tightness",
    "pervin suite",
    "deterministic reports",
];

/// Caps an enumeration ceiling by the `--max-n` flag when one was given.
fn capped(full: usize, max_n: Option<usize>) -> usize {
    max_n.map_or(full, |m| m.clamp(1, full))
}

fn fail(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}

/// Runs one check by number (1-based).
pub fn run_criterion(id: usize, seed: u64, max_n: Option<usize>) -> CriterionResult {
    let body: Result<String> = match id {
        1 => envelope_of_m3(),
        2 => counterexample_maps(),
        3 => admissibility_criteria_agree(max_n),
        4 => ideal_generation_and_intersection(max_n),
        5 => universal_property(max_n),
        6 => galois_reconstruction(max_n),
        7 => surjections_transport_admissibility(max_n),
        8 => duality_suite(max_n),
        9 => free_pair_tightness_failure(),
        10 => pervin_suite(seed, max_n),
        11 => deterministic_reports(seed),
        _ => Err(Error::ParseError(format!("no criterion {id}; the suite has {CRITERIA}"))),
    };
    match body {
        Ok(detail) => CriterionResult { id, name: NAMES[id - 1], passed: true, detail },
        Err(e) => CriterionResult {
            id,
            name: NAMES.get(id - 1).copied().unwrap_or("unknown"),
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Runs the whole suite in order.
pub fn run_all(seed: u64, max_n: Option<usize>) -> Vec<CriterionResult> {
    (1..=CRITERIA).map(|id| run_criterion(id, seed, max_n)).collect()
}

/// 1. The meet-envelope of M3 is the 8-element boolean cube.
fn envelope_of_m3() -> Result<String> {
    let env = denv_meet(&corpus::m3())?;
    if env.lattice.n() != 8 {
        return Err(fail(format!("carrier has {} members; expected 8", env.lattice.n())));
    }
    let cube = corpus::cube();
    let iso =
        find_order_isomorphism(env.lattice.n(), env.lattice.leq_matrix(), cube.n(), cube.leq_matrix(), 16)?;
    if iso.is_none() {
        return Err(fail("8-member carrier is not isomorphic to the cube"));
    }
    Ok("carrier has 8 members and is isomorphic to the three-atom boolean lattice".into())
}

/// 2. The corpus counterexample maps behave as documented: the square map
/// destroys join-admissibility of {a,b}, and extending the composite into
/// the cube is rejected.
fn counterexample_maps() -> Result<String> {
    let f = corpus::square_into_antichain3();
    let a = f.dom.index_by_name("a").expect("square has an a");
    let b = f.dom.index_by_name("b").expect("square has a b");
    if !is_join_admissible(&f.dom, &[a, b], Method::Definition)?.admissible {
        return Err(fail("{a,b} should be join-admissible in the square"));
    }
    let image = [f.apply(a), f.apply(b)];
    let rep = is_join_admissible(&f.cod, &image, Method::Definition)?;
    if rep.admissible {
        return Err(fail("the image of {a,b} should not be join-admissible"));
    }
    let w = rep.witness.ok_or_else(|| fail("definition check returned no witness"))?;
    if f.cod.name(w.element) != "c" {
        return Err(fail(format!(
            "distribution breaks at {}; expected c",
            f.cod.name(w.element)
        )));
    }
    let class = classify_map(&f)?;
    if class.sends_join_admissible_to_join_admissible {
        return Err(fail("classifier missed the admissibility loss"));
    }
    let recorded = class
        .witnesses
        .iter()
        .find(|w| w.flag == "sends_join_admissible_to_join_admissible")
        .ok_or_else(|| fail("classifier recorded no witness for the lost flag"))?;
    if !recorded.detail.contains("{a,b}") {
        return Err(fail(format!("classifier witness is {}; expected {{a,b}}", recorded.detail)));
    }

    let composite = f.then(&corpus::antichain3_into_cube())?;
    let env = denv_meet(&composite.dom)?;
    match extend_map(&composite, &env) {
        Err(Error::PreconditionViolated(_)) => {}
        Err(e) => return Err(fail(format!("extension failed for the wrong reason: {e}"))),
        Ok(_) => return Err(fail("extension of the composite should be rejected")),
    }
    Ok("witness {a,b} breaks at c; extending the composite is rejected as expected".into())
}

/// 3. The distribution-equation definition of admissibility and the
/// irreducible criterion agree on every nonempty subset of every small
/// lattice, for joins and for meets.
fn admissibility_criteria_agree(max_n: Option<usize>) -> Result<String> {
    let n = capped(7, max_n);
    let mut lattices = 0usize;
    let mut subsets = 0usize;
    for l in enumerate_lattices(n)? {
        lattices += 1;
        for mask in 1u64..1 << l.n() {
            let set: Vec<usize> = (0..l.n()).filter(|&i| mask >> i & 1 == 1).collect();
            subsets += 1;
            let dj = is_join_admissible(&l, &set, Method::Definition)?.admissible;
            let ij = is_join_admissible(&l, &set, Method::Irreducible)?.admissible;
            if dj != ij {
                return Err(fail(format!(
                    "join methods disagree on {} in a {}-element lattice",
                    l.set_name(&set),
                    l.n()
                )));
            }
            let dm = is_meet_admissible(&l, &set, Method::Definition)?.admissible;
            let im = is_meet_admissible(&l, &set, Method::Irreducible)?.admissible;
            if dm != im {
                return Err(fail(format!(
                    "meet methods disagree on {} in a {}-element lattice",
                    l.set_name(&set),
                    l.n()
                )));
            }
        }
    }
    Ok(format!("both methods agree on {subsets} subsets across {lattices} lattices (n ≤ {n})"))
}

/// 4. Fixpoint and criterion a-ideal generation agree on every subset, and
/// ⟨S⟩ ∩ ⟨T⟩ = ⟨pairwise meets⟩ for every pair of subsets.
fn ideal_generation_and_intersection(max_n: Option<usize>) -> Result<String> {
    let n = capped(5, max_n);
    let mut pairs = 0usize;
    for l in enumerate_lattices(n)? {
        let subsets: Vec<Vec<usize>> = (0..1u64 << l.n())
            .map(|mask| (0..l.n()).filter(|&i| mask >> i & 1 == 1).collect())
            .collect();
        let ideals: Vec<Vec<usize>> = subsets
            .iter()
            .map(|s| {
                let fix = aideal_generate(&l, s, GenMethod::Fixpoint)?;
                let crit = aideal_generate(&l, s, GenMethod::Criterion)?;
                if fix != crit {
                    return Err(fail(format!(
                        "generation methods disagree on {} in a {}-element lattice",
                        l.set_name(s),
                        l.n()
                    )));
                }
                Ok(fix)
            })
            .collect::<Result<_>>()?;
        for (s, is_) in subsets.iter().zip(&ideals) {
            for (t, it) in subsets.iter().zip(&ideals) {
                pairs += 1;
                let inter: Vec<usize> = is_.iter().copied().filter(|x| it.contains(x)).collect();
                let mut meets = Vec::new();
                for &a in s {
                    for &b in t {
                        meets.push(l.meet(a, b));
                    }
                }
                if inter != aideal_generate(&l, &meets, GenMethod::Criterion)? {
                    return Err(fail(format!(
                        "intersection law breaks for {} and {} in a {}-element lattice",
                        l.set_name(s),
                        l.set_name(t),
                        l.n()
                    )));
                }
            }
        }
    }
    Ok(format!("methods agree and the intersection law holds on {pairs} subset pairs (n ≤ {n})"))
}

/// 5. Universal property of the meet-envelope: every map preserving meets
/// and admissible joins into a distributive lattice extends uniquely to a
/// homomorphism on the envelope, and injective maps extend injectively.
fn universal_property(max_n: Option<usize>) -> Result<String> {
    let n = capped(5, max_n);
    let lattices = enumerate_lattices(n)?;
    let mut extended = 0usize;
    let mut injective = 0usize;
    for l in &lattices {
        let env = denv_meet(l)?;
        for d in &lattices {
            if d.distributivity_witness().is_some() {
                continue;
            }
            let homs = enumerate_maps(&env.lattice, d, MapClass::Homomorphism, MapFilter::default())?;
            for f in enumerate_maps(l, d, MapClass::MeetPreserving, MapFilter::default())? {
                let class = classify_map(&f)?;
                if !class.preserves_admissible_joins {
                    continue;
                }
                // extend_map re-checks commutation and that the lift is a
                // homomorphism; uniqueness is counted against the full
                // enumeration here.
                let lift = extend_map(&f, &env)?;
                extended += 1;
                let matching = homs
                    .iter()
                    .filter(|h| (0..l.n()).all(|a| h.apply(env.unit.apply(a)) == f.apply(a)))
                    .count();
                if matching != 1 {
                    return Err(fail(format!(
                        "{matching} homomorphisms extend a map from a {}-element lattice; expected exactly one",
                        l.n()
                    )));
                }
                if f.is_injective() {
                    injective += 1;
                    if !lift.is_injective() {
                        return Err(fail(format!(
                            "injective map from a {}-element lattice lifts non-injectively",
                            l.n()
                        )));
                    }
                }
            }
        }
    }
    Ok(format!(
        "{extended} maps extend uniquely ({injective} injective ones injectively; n ≤ {n})"
    ))
}

/// 6. Galois reconstruction: the closed elements of the envelope adjunction
/// form a lattice isomorphic to the source.
fn galois_reconstruction(max_n: Option<usize>) -> Result<String> {
    let n = capped(6, max_n);
    let mut count = 0usize;
    for l in enumerate_lattices(n)? {
        let (closed, iso) = galois_closed(&galois_pair(&l)?)?;
        if closed.n() != l.n() || iso.is_none() {
            return Err(fail(format!(
                "{}-element lattice reconstructs to {} closed elements",
                l.n(),
                closed.n()
            )));
        }
        count += 1;
    }
    Ok(format!("all {count} lattices (n ≤ {n}) are recovered from their Galois-closed elements"))
}

/// 7. Surjective maps preserving meets and admissible joins also transport
/// join-admissibility, over all ordered corpus pairs of size ≤ 5.
fn surjections_transport_admissibility(max_n: Option<usize>) -> Result<String> {
    let cap = capped(5, max_n);
    let small: Vec<(String, FinLattice)> =
        corpus::corpus().into_iter().filter(|(_, l)| l.n() <= cap).collect();
    let mut checked = 0usize;
    for (n1, l1) in &small {
        for (n2, l2) in &small {
            let filter = MapFilter { surjective: true, injective: false };
            for f in enumerate_maps(l1, l2, MapClass::MeetPreserving, filter)? {
                let class = classify_map(&f)?;
                if !class.preserves_admissible_joins {
                    continue;
                }
                checked += 1;
                if !class.sends_join_admissible_to_join_admissible {
                    let detail = class
                        .witnesses
                        .iter()
                        .find(|w| w.flag == "sends_join_admissible_to_join_admissible")
                        .map(|w| w.detail.clone())
                        .unwrap_or_default();
                    return Err(fail(format!(
                        "surjection {n1} → {n2} loses admissibility: {detail}"
                    )));
                }
            }
        }
    }
    Ok(format!("{checked} surjections between corpus lattices (n ≤ {cap}) all transport it"))
}

/// Every order isomorphism between two finite quasi-ordered sets presented
/// by predicates; small sizes only.
fn order_isos(
    n: usize,
    le_a: &dyn Fn(usize, usize) -> bool,
    le_b: &dyn Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        depth: usize,
        n: usize,
        le_a: &dyn Fn(usize, usize) -> bool,
        le_b: &dyn Fn(usize, usize) -> bool,
        image: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == n {
            out.push(image.to_vec());
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let consistent = (0..depth).all(|p| {
                le_a(p, depth) == le_b(image[p], v) && le_a(depth, p) == le_b(v, image[p])
            });
            if consistent {
                image[depth] = v;
                used[v] = true;
                rec(depth + 1, n, le_a, le_b, image, used, out);
                used[v] = false;
            }
        }
    }
    rec(0, n, le_a, le_b, &mut image, &mut used, &mut out);
    out
}

/// 8. The full duality pipeline on every small lattice: the dual polarity is
/// a tight TSCP, the double dual reproduces it, its sides are the
/// irreducible posets, and its relation is the complement of the classical
/// one (which itself is the restricted lattice order).
fn duality_suite(max_n: Option<usize>) -> Result<String> {
    let n = capped(6, max_n);
    let mut count = 0usize;
    for l in enumerate_lattices(n)? {
        count += 1;
        let pol = dual_polarity(&galois_pair(&l)?)?;
        let tscp = check_tscp(&pol);
        if !tscp.passed() {
            return Err(fail(format!("dual of a {}-element lattice is not a TSCP", l.n())));
        }
        let tight = is_tight(&pol)?;
        if !tight.tight {
            return Err(fail(format!(
                "dual of a {}-element lattice is not tight: X {:?}, Y {:?}",
                l.n(),
                tight.x_failures,
                tight.y_failures
            )));
        }
        double_dual_check(&pol)?;

        let irr = Irr::new(&l)?;
        if pol.x_size() != irr.j.len() || pol.y_size() != irr.m.len() {
            return Err(fail(format!(
                "dual sides have {}×{} points; expected {}×{} irreducibles",
                pol.x_size(),
                pol.y_size(),
                irr.j.len(),
                irr.m.len()
            )));
        }
        let hart = classical_duals(&l)?.hartung;
        for (i, &j) in irr.j.iter().enumerate() {
            for (k, &m) in irr.m.iter().enumerate() {
                if hart.r(i, k) != l.le(j, m) {
                    return Err(fail(format!(
                        "classical relation differs from ≤ at ({}, {})",
                        l.name(j),
                        l.name(m)
                    )));
                }
            }
        }
        let phis = order_isos(pol.x_size(), &|a, b| l.le(irr.j[a], irr.j[b]), &|a, b| {
            pol.x_le(a, b)
        });
        let psis = order_isos(pol.y_size(), &|a, b| l.le(irr.m[a], irr.m[b]), &|a, b| {
            pol.y_le(a, b)
        });
        let aligned = phis.iter().any(|phi| {
            psis.iter().any(|psi| {
                (0..irr.j.len()).all(|i| {
                    (0..irr.m.len())
                        .all(|k| pol.r(phi[i], psi[k]) == !l.le(irr.j[i], irr.m[k]))
                })
            })
        });
        if phis.is_empty() || psis.is_empty() || !aligned {
            return Err(fail(format!(
                "dual of a {}-element lattice does not realise the irreducible posets with the complemented relation",
                l.n()
            )));
        }
    }
    Ok(format!(
        "{count} duals (n ≤ {n}) are tight TSCPs over (J,≤) and (M,≤), R complementing the classical relation, double dual identical"
    ))
}

/// 9. The free adjoint pair over the square is a genuine daDL whose polarity
/// fails tightness, with the failing downsets named.
fn free_pair_tightness_failure() -> Result<String> {
    let pair = free_dadl(&corpus::square())?;
    validate_dadl(pair.d.clone(), pair.e.clone(), pair.f.clone(), pair.g.clone(), None)?;
    let pol = dual_polarity(&pair)?;
    if !check_tscp(&pol).passed() {
        return Err(fail("free-pair polarity should still be a TSCP"));
    }
    let tight = is_tight(&pol)?;
    if tight.tight {
        return Err(fail("free-pair polarity must not be tight"));
    }
    if tight.x_failures.is_empty() || tight.y_failures.is_empty() {
        return Err(fail("tightness failure must come with explicit witnesses"));
    }
    Ok(format!(
        "daDL axioms hold yet tightness fails; unforced regular downsets: X side {}, Y side {}",
        tight.x_failures.join(" and "),
        tight.y_failures.join(" and ")
    ))
}

/// The seeded random half of the Pervin block check; returns a summary that
/// must be byte-stable for a fixed seed.
fn seeded_block_trials(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks_total = 0usize;
    for _ in 0..200 {
        let points = rng.random_range(1..=5);
        let gens = rng.random_range(0..=4usize);
        let k: Vec<u64> = (0..gens).map(|_| rng.random_range(0..1u64 << points)).collect();
        // blocks() cross-checks the entourage criterion against the
        // generated sublattice and errors on any disagreement.
        blocks_total += pervin(points, k, None)?.blocks()?.members().len();
    }
    Ok(format!("200 seeded trials (≤ 5 points), {blocks_total} blocks in total"))
}

/// 10. Pervin spaces: blocks = generated sublattice exhaustively at ≤ 3
/// points and on seeded random spaces, the bicompletions of the irreducible
/// spaces are the envelope duals, and bounded antichains are already
/// bicomplete.
fn pervin_suite(seed: u64, max_n: Option<usize>) -> Result<String> {
    let mut exhaustive = 0usize;
    for points in 1usize..=3 {
        let universe = 1u64 << points;
        for family_bits in 0u64..1 << universe {
            let k: Vec<u64> = (0..universe).filter(|i| family_bits >> i & 1 == 1).collect();
            pervin(points, k, None)?.blocks()?;
            exhaustive += 1;
        }
    }
    let trials = seeded_block_trials(seed)?;

    let n = capped(6, max_n);
    let mut duals = 0usize;
    for l in enumerate_lattices(n)? {
        let report = verify_unifdual(&l)?;
        if !report.passed() {
            return Err(fail(format!(
                "bicompletion of a {}-element lattice's spaces misses the envelope duals (J side {}, M side {})",
                l.n(),
                report.j_iso,
                report.m_iso
            )));
        }
        duals += 1;
    }

    for atoms in 2..=5 {
        let bic = j_space(&corpus::antichain_bounded(atoms))?.bicompletion_points()?;
        if !bic.eta_bijective() || bic.points.n() != atoms {
            return Err(fail(format!(
                "bounded {atoms}-antichain is not already bicomplete: {} points",
                bic.points.n()
            )));
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive spaces agree; {trials}; {duals} lattice bicompletions (n ≤ {n}) match the envelope duals; bounded antichains up to 5 atoms are already bicomplete"
    ))
}

/// 11. Determinism: the only seeded computation in the suite reproduces its
/// summary byte-for-byte when reseeded. Whole-report byte-identity across
/// two process runs is exercised by the integration tests.
fn deterministic_reports(seed: u64) -> Result<String> {
    let first = seeded_block_trials(seed)?;
    let second = seeded_block_trials(seed)?;
    if first != second {
        return Err(fail(format!("seeded summaries diverge: {first} vs {second}")));
    }
    Ok(format!("seed {seed} reproduces the seeded trial summary byte-for-byte"))
}

#[cfg(test)]
mod tests {
    use super::*;

    // The full suite is exercised criterion by criterion in the integration
    // tests; here only the plumbing is covered.

    #[test]
    fn unknown_criterion_fails_cleanly() {
        let r = run_criterion(12, 42, Some(3));
        assert!(!r.passed);
        assert!(r.detail.contains("no criterion"));
    }

    #[test]
    fn fast_criteria_pass_at_tiny_sizes() {
        for id in [1, 2, 9] {
            let r = run_criterion(id, 42, Some(3));
            assert!(r.passed, "{}", r.line());
        }
        let r = run_criterion(3, 42, Some(3));
        assert!(r.passed, "{}", r.line());
    }

    #[test]
    fn lines_are_stable() {
        let r = run_criterion(1, 42, None);
        assert_eq!(r.line(), run_criterion(1, 42, None).line());
        assert!(r.line().starts_with("criterion  1 (meet-envelope of m3): pass"));
    }
}
