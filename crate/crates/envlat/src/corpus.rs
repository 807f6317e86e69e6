//! A small zoo of named lattices and maps used by tests, examples and the
//! command-line `corpus`/`selftest` runs.

use crate::error::Result;
use crate::finlat::{FinLattice, LatticeMap, Orientation, SubsetFamilyLattice};

const LETTERS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn built(r: Result<FinLattice>) -> FinLattice {
    r.expect("corpus lattices are valid by construction")
}

/// The chain 0 < 1 < … < n-1.
pub fn chain(n: usize) -> FinLattice {
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let names = (0..n).map(|i| i.to_string()).collect();
    built(FinLattice::build_lattice(n, &covers, Some(names)))
}

/// The boolean lattice of subsets of k letters (k ≤ 6).
pub fn boolean(k: usize) -> FinLattice {
    assert!(k <= LETTERS.len());
    let base: Vec<String> = LETTERS[..k].iter().map(|s| s.to_string()).collect();
    let fam = SubsetFamilyLattice::new(base, 0..1u64 << k, Orientation::Inclusion)
        .expect("powerset family");
    built(fam.to_lattice())
}

/// Bottom, k pairwise-incomparable middle elements, top.
pub fn antichain_bounded(k: usize) -> FinLattice {
    let n = k + 2;
    let mut covers = Vec::new();
    let mut names = vec!["0".to_string()];
    for i in 1..=k {
        covers.push((0, i));
        covers.push((i, n - 1));
        names.push(format!("m{i}"));
    }
    if k == 0 {
        covers.push((0, 1));
    }
    names.push("1".to_string());
    built(FinLattice::build_lattice(n, &covers, Some(names)))
}

/// The diamond: three incomparable elements between the bounds.
pub fn m3() -> FinLattice {
    built(FinLattice::build_lattice(
        5,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        Some(vec!["0".into(), "a".into(), "b".into(), "c".into(), "1".into()]),
    ))
}

/// The pentagon: 0 < b < c < 1 with a incomparable to both.
pub fn n5() -> FinLattice {
    built(FinLattice::build_lattice(
        5,
        &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)],
        Some(vec!["0".into(), "a".into(), "b".into(), "c".into(), "1".into()]),
    ))
}

/// 0 < x < p, q < 1 (one stem, two incomparable tips).
pub fn kite() -> FinLattice {
    built(FinLattice::build_lattice(
        5,
        &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)],
        Some(vec!["0".into(), "x".into(), "p".into(), "q".into(), "1".into()]),
    ))
}

/// 0 < p, q < x < 1 (order dual of [`kite`]).
pub fn cokite() -> FinLattice {
    built(FinLattice::build_lattice(
        5,
        &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
        Some(vec!["0".into(), "p".into(), "q".into(), "x".into(), "1".into()]),
    ))
}

/// The four-element boolean lattice with plain names 0 < a, b < 1.
pub fn square() -> FinLattice {
    built(FinLattice::build_lattice(
        4,
        &[(0, 1), (0, 2), (1, 3), (2, 3)],
        Some(vec!["0".into(), "a".into(), "b".into(), "1".into()]),
    ))
}

/// Bottom, the antichain a, b, c, top.
pub fn antichain3() -> FinLattice {
    built(FinLattice::build_lattice(
        5,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        Some(vec!["0".into(), "a".into(), "b".into(), "c".into(), "1".into()]),
    ))
}

/// The three-letter boolean cube.
pub fn cube() -> FinLattice {
    boolean(3)
}

/// Two long legs and a spine of pendant atoms: the spine a₀ > a₁ > … > a_d
/// carries leg pairs bᵢ, cᵢ ⋖ aᵢ and pendant atoms z_j ⋖ a_j for j < t
/// (t ≤ d+1); everything sits over a common bottom. Every aᵢ is a join of
/// elements below it in several ways, which makes the lattice a stress test
/// for admissible-join bookkeeping.
pub fn pendant_chains(d: usize, t: usize) -> FinLattice {
    assert!(t <= d + 1, "at most one pendant per spine level");
    // Indices: 0 = bottom; a_i = 1 + 3i; b_i = 2 + 3i; c_i = 3 + 3i; then z_j.
    let a = |i: usize| 1 + 3 * i;
    let b = |i: usize| 2 + 3 * i;
    let c = |i: usize| 3 + 3 * i;
    let z = |j: usize| 1 + 3 * (d + 1) + j;
    let n = 1 + 3 * (d + 1) + t;
    let mut covers = Vec::new();
    let mut names = vec![String::from("0"); n];
    for i in 0..=d {
        names[a(i)] = format!("a{i}");
        names[b(i)] = format!("b{i}");
        names[c(i)] = format!("c{i}");
        covers.push((b(i), a(i)));
        covers.push((c(i), a(i)));
        if i < d {
            covers.push((a(i + 1), a(i)));
            covers.push((b(i + 1), b(i)));
            covers.push((c(i + 1), c(i)));
        }
    }
    for j in 0..t {
        names[z(j)] = format!("z{j}");
        covers.push((z(j), a(j)));
        covers.push((0, z(j)));
    }
    covers.push((0, b(d)));
    covers.push((0, c(d)));
    built(FinLattice::build_lattice(n, &covers, Some(names)))
}

/// The named corpus, in a fixed order.
pub fn corpus() -> Vec<(String, FinLattice)> {
    vec![
        ("chain2".into(), chain(2)),
        ("chain5".into(), chain(5)),
        ("square".into(), square()),
        ("m3".into(), m3()),
        ("n5".into(), n5()),
        ("kite".into(), kite()),
        ("cokite".into(), cokite()),
        ("antichain3".into(), antichain3()),
        ("antichain4".into(), antichain_bounded(4)),
        ("cube".into(), cube()),
        ("boolean4".into(), boolean(4)),
        ("pendant22".into(), pendant_chains(2, 2)),
    ]
}

/// Looks a corpus lattice up by its label.
pub fn by_name(name: &str) -> Option<FinLattice> {
    corpus().into_iter().find(|(n, _)| n == name).map(|(_, l)| l)
}

fn table_by_names(dom: &FinLattice, cod: &FinLattice, pairs: &[(&str, &str)]) -> Vec<usize> {
    (0..dom.n())
        .map(|i| {
            let target = pairs
                .iter()
                .find(|(d, _)| *d == dom.name(i))
                .map(|&(_, c)| c)
                .unwrap_or_else(|| dom.name(i));
            cod.index_by_name(target).expect("corpus map targets exist")
        })
        .collect()
}

/// The bound-preserving homomorphism from the square onto two of the three
/// middle elements of [`antichain3`]. Its image is a sublattice on which the
/// pair {a, b} has lost its property of joining distributively.
pub fn square_into_antichain3() -> LatticeMap {
    let dom = square();
    let cod = antichain3();
    let table = table_by_names(&dom, &cod, &[]);
    LatticeMap::new(dom, cod, table).expect("corpus map")
}

/// The singleton embedding of [`antichain3`] into the cube: a ↦ {a} and the
/// bounds to the bounds. Preserves meets and the bounds, but sends the join
/// a ∨ b = 1 to {a,b,c} rather than {a} ∪ {b}.
pub fn antichain3_into_cube() -> LatticeMap {
    let dom = antichain3();
    let cod = cube();
    let table = table_by_names(
        &dom,
        &cod,
        &[("0", "∅"), ("a", "{a}"), ("b", "{b}"), ("c", "{c}"), ("1", "{a,b,c}")],
    );
    LatticeMap::new(dom, cod, table).expect("corpus map")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_members_are_lattices_with_unique_labels() {
        let all = corpus();
        let mut labels: Vec<&str> = all.iter().map(|(n, _)| n.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), all.len());
        assert!(by_name("m3").is_some());
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn pendant_chains_shape() {
        let l = pendant_chains(2, 2);
        assert_eq!(l.n(), 1 + 9 + 2);
        assert_eq!(l.name(l.top()), "a0");
        // J: the two legs and the pendants; no spine element is irreducible.
        let j: Vec<&str> = l.join_irreducibles().iter().map(|&x| l.name(x)).collect();
        assert_eq!(j, vec!["b0", "c0", "b1", "c1", "b2", "c2", "z0", "z1"]);
        // Each spine element is the join of its leg pair.
        for i in 0..=2 {
            let ai = l.index_by_name(&format!("a{i}")).unwrap();
            let bi = l.index_by_name(&format!("b{i}")).unwrap();
            let ci = l.index_by_name(&format!("c{i}")).unwrap();
            assert_eq!(l.join(bi, ci), ai);
        }
    }

    #[test]
    fn pendant_chain_degenerate_sizes() {
        let l = pendant_chains(0, 0);
        assert_eq!(l.n(), 4); // 0, a0, b0, c0 — the square in disguise
        assert!(crate::finlat::find_isomorphism(&l, &square()).unwrap().is_some());
        let l = pendant_chains(0, 1);
        assert!(crate::finlat::find_isomorphism(&l, &antichain3()).unwrap().is_some());
    }

    #[test]
    fn square_map_is_a_bound_preserving_homomorphism() {
        let f = square_into_antichain3();
        assert_eq!(f.apply(f.dom.bottom()), f.cod.bottom());
        assert_eq!(f.apply(f.dom.top()), f.cod.top());
        for x in 0..f.dom.n() {
            for y in 0..f.dom.n() {
                assert_eq!(f.apply(f.dom.meet(x, y)), f.cod.meet(f.apply(x), f.apply(y)));
                assert_eq!(f.apply(f.dom.join(x, y)), f.cod.join(f.apply(x), f.apply(y)));
            }
        }
    }

    #[test]
    fn antichain_embedding_preserves_meets_but_not_joins() {
        let g = antichain3_into_cube();
        assert_eq!(g.apply(g.dom.bottom()), g.cod.bottom());
        assert_eq!(g.apply(g.dom.top()), g.cod.top());
        for x in 0..g.dom.n() {
            for y in 0..g.dom.n() {
                assert_eq!(g.apply(g.dom.meet(x, y)), g.cod.meet(g.apply(x), g.apply(y)));
            }
        }
        let a = g.dom.index_by_name("a").unwrap();
        let b = g.dom.index_by_name("b").unwrap();
        assert_ne!(g.apply(g.dom.join(a, b)), g.cod.join(g.apply(a), g.apply(b)));
    }

    #[test]
    fn named_shapes() {
        assert_eq!(kite().join_irreducibles().len(), 3);
        let k = kite();
        let ms: Vec<&str> = k.meet_irreducibles().iter().map(|&x| k.name(x)).collect();
        assert_eq!(ms, vec!["0", "p", "q"]); // 0 has unique upper cover x
        assert!(crate::finlat::find_isomorphism(&kite(), &cokite()).unwrap().is_none());
        assert_eq!(boolean(4).n(), 16);
        assert_eq!(antichain_bounded(0).n(), 2);
    }
}
