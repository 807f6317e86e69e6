#!/usr/bin/env python3
"""Smoke test for the envlat_py extension module.

There is no wheel: `cargo build -p envlat-py` produces target/<profile>/
libenvlat_py.so, and this script loads it directly. Run from anywhere:

    cargo build -p envlat-py && python3 python/smoke_test.py
"""

import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libenvlat_py.so", "envlat_py.so", "libenvlat_py.dylib")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("no built extension found; run `cargo build -p envlat-py` first")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    spec = importlib.util.spec_from_file_location("envlat_py", newest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    print(f"loaded {newest.relative_to(ROOT)}")
    return module


def main():
    envlat = load_module()

    # Admissibility: in M3 the join of {a, b} is 1, but c ∧ 1 = c while
    # (c ∧ a) ∨ (c ∧ b) = 0, so the set is not join-admissible.
    m3 = envlat.Lattice.corpus("m3")
    assert len(m3) == 5 and m3.is_distributive() is False
    assert m3.is_join_admissible(["a", "b"]) is False
    assert m3.is_join_admissible(["a", "b"], method="irreducible") is False
    element, lhs, rhs = m3.admissibility_witness(["a", "b"])
    assert (element, lhs, rhs) == ("c", "c", "0"), (element, lhs, rhs)
    assert m3.aideal(["a", "b"]) == ["0", "a", "b"]
    assert m3.aideal(["a", "b"], method="fixpoint") == ["0", "a", "b"]
    print("admissibility: {a,b} in m3 fails at c, a-ideal is {0,a,b}")

    # Meet-envelope of M3: free distributive cover on three atoms, the cube.
    env = m3.envelope("meet")
    assert len(env) == 8 and env.kind() == "meet"
    assert env.members()[0] == [] and env.members()[-1] == ["a", "b", "c"]
    assert env.lattice().is_distributive()
    assert env.unit("0") == "∅" and env.unit("a") == "{a}"
    print(f"envelope: meet-envelope of m3 has {len(env)} members (the cube)")

    # Universal property: maps that preserve meets and admissible joins
    # extend uniquely through the envelope. Sending each atom of m3 to the
    # matching atom of the cube qualifies ({a,b} etc. are inadmissible, so
    # their joins need not be preserved); the extension is an isomorphism.
    cube = envlat.Lattice.corpus("cube")
    images = env.extend(cube, ["∅", "{a}", "{b}", "{c}", "{a,b,c}"])
    assert len(images) == 8 and set(images) == set(cube.elements())
    print("extension: m3 ↪ cube lifts to an isomorphism of envelopes")

    # Galois reconstruction: closing the adjoint envelope pair gives the
    # original lattice back, even in the non-distributive case.
    n5 = envlat.Lattice.corpus("n5")
    closed = n5.galois_reconstruct()
    assert len(closed) == len(n5)
    assert m3.galois_reconstruct() is not None
    print("reconstruction: galois closure of n5 and m3 match the originals")

    # Tightness separates the canonical pair from the free pair.
    square = envlat.Lattice.corpus("square")
    tight, x_fail, y_fail = square.tight("galois")
    assert tight and x_fail == [] and y_fail == []
    loose, x_fail, y_fail = square.tight("free")
    assert not loose and len(x_fail) == 2 and len(y_fail) == 2
    assert square.tscp() is True
    print("tightness: galois pair tight, free pair fails on both sides")

    # Pervin spaces: blocks and bicompletion.
    space = envlat.PervinSpace(3, [[0, 1], [1, 2]])
    assert space.is_block([1]) and not space.is_block([0])
    blocks = space.blocks()
    assert len(blocks) == 5 and ["1"] in blocks
    assert len(space.block_lattice()) == 5
    points, bijective = space.bicompletion()
    assert (points, bijective) == (3, True)
    print(f"pervin: 3-point space has {len(blocks)} blocks, already bicomplete")

    j = n5.pervin("j")
    assert sorted(j.points()) == ["a", "b", "c"]
    points, bijective = j.bicompletion()
    assert bijective
    print("pervin: J-space of n5 is bicomplete")

    names = envlat.corpus_names()
    assert "m3" in names and "cube" in names
    passed, lines = envlat.selftest(seed=42, max_n=3)
    assert passed and len(lines) == 11
    print(f"selftest: all {len(lines)} criteria pass at max_n=3")

    print("smoke test passed")


if __name__ == "__main__":
    main()
