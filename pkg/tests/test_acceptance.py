"""End-to-end acceptance checks, all at integer equality.

Run under pytest (one PASS/FAIL line per criterion is printed in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import sys
from collections import Counter
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from polartax import golden, pauli  # noqa: E402
from polartax.conwell import (  # noqa: E402
    conwell_heptads,
    doily_heptad,
    quadric_lines,
    tangent_knot,
    triple_to_point,
)
from polartax.doily import Doily  # noqa: E402
from polartax.polar import (  # noqa: E402
    distinguished_quadric,
    enumerate_generators,
    enumerate_lines,
    enumerate_points,
    space,
)
from polartax.subspaces import (  # noqa: E402
    distinguished_intersections,
    linear_subspaces,
    negative_plane_counts,
    negative_planes,
    quadratic_subspaces,
)
from polartax.taxonomy import (  # noqa: E402
    all_doily_hyperplanes,
    classify,
    composite_census,
    composite_type_breakdown,
    doilies,
    doilies_containing,
    doilies_on_planar_triad,
    doilies_sharing_hyperplane,
    lift_composite,
    planar_triads,
    shared_hyperplane_census,
)

CRITERIA = {
    1: "point/line/generator censuses",
    2: "negative-line censuses",
    3: "Veldkamp lines of the doily (Table 1)",
    4: "two-qubit W(1,2) types (Table 2)",
    5: "three-qubit doily types and composites (Table 3)",
    6: "residual Veldkamp signatures (Table 4)",
    7: "distinguished-quadric intersections of doilies",
    8: "four doilies per hyperplane and their splits",
    9: "planar tricentric triads",
    10: "deep/zero points and order signatures",
    11: "Conwell heptads",
    12: "four-qubit W(5,2) types and composites (Table 5)",
    13: "negative planes",
    14: "property suite and closed-form counts",
}


def _labels(pts, n=3):
    return sorted(pauli.decode(p, n) for p in pts)


def _table_ok(tid):
    rows, diff = golden.check_table(tid)
    assert not diff, "\n".join(diff)
    return rows


# ---- criteria ------------------------------------------------------------------------


def criterion_1():
    got = [(len(enumerate_points(n)), len(enumerate_lines(n)), len(enumerate_generators(n))) for n in (2, 3, 4)]
    assert got == [(15, 15, 15), (63, 315, 135), (255, 5355, 2295)]


def criterion_2():
    assert space(2).negative_line_census() == {"B-B-B": 3}
    c3 = space(3).negative_line_census()
    assert c3 == {"C-C-B": 81, "B-B-B": 9} and sum(c3.values()) == 90
    c4 = space(4).negative_line_census()
    assert c4 == {"D-D-D": 108, "D-D-B": 486, "D-C-C": 972, "C-C-B": 324, "B-B-B": 18}
    assert sum(c4.values()) == 1908


def criterion_3():
    rows = _table_ok(1)
    assert [r["#"] for r in rows] == [45, 15, 20, 60, 15]
    assert [(r["Perps"], r["Ovoids"], r["Grids"]) for r in rows] == [(1, 0, 2), (3, 0, 0), (3, 0, 0), (1, 1, 1), (1, 2, 0)]


def criterion_4():
    rows = _table_ok(2)
    assert [r["Wl"] + r["Wq"] for r in rows] == [6, 36, 18, 18, 2]
    # Type-1 triads are exactly the ovoids of the hyperbolic quadric YY
    S = space(2)
    yy = pauli.encode("YY")
    q = S.quadric_points(yy)
    assert len(q) == 9
    grid_lines = [ln.points for ln in S.lines if set(ln.points) <= q]
    assert len(grid_lines) == 6
    ovoids = {frozenset(t) for t in itertools.combinations(sorted(q), 3)
              if all(len(set(t) & set(ln)) == 1 for ln in grid_lines)}
    type1 = {frozenset(r.subspace.points) for r in classify(2) if r.type_id == 1}
    assert len(type1) == 6 and type1 == ovoids


def criterion_5():
    rows = _table_ok(3)
    assert len(rows) == 13
    assert sum(r["Dl"] for r in rows) == 336 and sum(r["Dq"] for r in rows) == 1008
    assert len(linear_subspaces(3)) == 336 and len(quadratic_subspaces(3)) == 1008
    labels = Counter(r.label for r in classify(3))
    assert (labels["9A"], labels["9B"]) == (162, 54)
    census = composite_census(3)
    assert sum(census.values()) == 279
    assert composite_type_breakdown(3) == {
        "perp": {"10": 81, "11": 54},
        "hyp": {"12": 81, "8'": 9},
        "ell": {"9B": 54},
    }


def criterion_6():
    rows = _table_ok(4)
    trivial_cols = {r["T"]: (r["ov"], r["ps"], r["gr"], r["fl"]) for r in rows}
    assert trivial_cols["8'"] == (0, 0, 1, 0)
    assert trivial_cols["9B"] == (1, 0, 0, 0)
    assert trivial_cols["10"] == trivial_cols["11"] == (0, 1, 0, 0)
    assert trivial_cols["12"] == (0, 0, 1, 0)
    assert trivial_cols["13"] == (0, 0, 0, 1)


def criterion_7():
    recs = classify(3)
    inter = distinguished_intersections([r.subspace for r in recs])
    assert set(inter) <= {"ell", "perp", "hyp", "full"}
    by_type: dict[int, set] = {}
    for r, c in zip(recs, inter):
        by_type.setdefault(r.type_id, set()).add(c)
    expected = {8: "full"}
    expected.update({t: "ell" for t in (3, 4, 6, 11)})
    expected.update({t: "perp" for t in (1, 5, 9, 12)})
    expected.update({t: "hyp" for t in (2, 7, 10, 13)})
    assert by_type == {t: {c} for t, c in expected.items()}
    assert not any(r.kind == "quadratic" and c == "hyp" for r, c in zip(recs, inter))
    # the three distinguished Type-8 doilies
    yyy = distinguished_quadric(3)
    S = space(3)
    for w in ("ZZZ", "III", "XXX"):
        wp = 0 if w == "III" else pauli.encode(w)
        pts = tuple(sorted(S.quadric_points(yyy) & S.quadric_points(wp)))
        rec = next(r for r in recs if r.subspace.points == pts)
        assert rec.type_id == 8 and rec.kind == "quadratic"
    # Q+_(ZZZ): two X's or no X; Q+_(XXX): two Z's or no Z
    assert all(w.count("X") in (0, 2) for w in S.labels(S.quadric_points(pauli.encode("ZZZ"))))
    assert all(w.count("Z") in (0, 2) for w in S.labels(S.quadric_points(pauli.encode("XXX"))))


def criterion_8():
    census = shared_hyperplane_census()
    assert census["pairs"] == 31 * 1344
    assert {c: set(v) for c, v in census["containment"].items()} == {"perp": {4}, "grid": {4}, "ovoid": {4}}
    # the illustrated ovoid and its unicentric triad
    ov = pauli.parse_many("IXZ,XYI,IZZ,ZYI,YYI")
    sh = doilies_sharing_hyperplane(ov)
    recs = classify(3)
    triad = pauli.parse_many("ZYI,XYI,YYI")
    centers = {}
    for i in sh.doilies:
        d = doilies()[i]
        (c,) = d.centers(tuple(d.index[p] for p in triad))
        centers[pauli.decode(d.points[c], 3)] = recs[i].label
    assert centers == {"IYI": "11", "IIX": "3", "IIY": "3", "IYZ": "8'"}
    top = pauli.encode("IYI")
    others = pauli.parse_many("IIX,IIY,IYZ")
    assert all(pauli.commute(top, o, 3) for o in others)
    assert not any(pauli.commute(a, b, 3) for a, b in itertools.combinations(others, 2))
    # splits over every shared hyperplane
    splits: Counter = Counter()
    for pts, cls in all_doily_hyperplanes().items():
        s = doilies_sharing_hyperplane(pts)
        splits[(cls, recs[s.doilies[0]].kind if cls == "perp" else "-", s.split)] += 1
    expected_split = {"ovoid": "3+1", "grid": "3+1", "perp": "2+2"}
    wrong = {k: v for k, v in splits.items() if k[2] != expected_split[k[0]]}
    assert not wrong, f"hyperplanes with an unexpected split: {dict(wrong)}; all: {dict(splits)}"


def criterion_9():
    recs = classify(3)
    triads = planar_triads()
    assert triads
    for t in triads:
        pt = doilies_on_planar_triad(t)
        tricentric_in = []
        for i in doilies_containing(t):
            d = doilies()[i]
            if recs[i].kind == "quadratic" and len(d.centers(tuple(d.index[p] for p in t))) == 3:
                tricentric_in.append(i)
        assert sorted(pt.doilies) == sorted(tricentric_in) and len(pt.doilies) == 4
        assert len(pt.complementary) == 4
        # polar Fano plane: one distinguished point commuting with all, six forming three commuting pairs
        plane = pt.polar_plane
        assert len(plane) == 7
        rest = [p for p in plane if p != pt.distinguished]
        assert all(pauli.commute(pt.distinguished, p, 3) for p in rest)
        pairs = [(a, b) for a, b in itertools.combinations(rest, 2) if pauli.commute(a, b, 3)]
        assert len(pairs) == 3 and len({p for ab in pairs for p in ab}) == 6
        fano_lines = {tuple(sorted((a, b, a ^ b))) for a, b in itertools.combinations(plane, 2)}
        assert len(fano_lines) == 7
        iso = [ln for ln in fano_lines if all(pauli.commute(a, b, 3) for a, b in itertools.combinations(ln, 2))]
        assert len(iso) == 3 and all(pt.distinguished in ln for ln in iso)


def criterion_10():
    recs = classify(3)
    reps = []
    for r, d in zip(recs, doilies()):
        if r.type_id != 3:
            continue
        deep, zero = d.deep_and_zero_points()
        if _labels(deep) == ["ZIZ"] and _labels(zero) == ["IIY", "XIZ"]:
            reps.append(d)
    assert len(reps) == 1
    d = reps[0]
    # the deep and zero points form a tricentric triad
    idx = tuple(d.index[p] for p in pauli.parse_many("ZIZ,IIY,XIZ"))
    assert len(d.centers(idx)) == 3
    assert not any(d.collinear[a] >> b & 1 for a, b in itertools.combinations(idx, 2))
    patterns = {
        (0, 9, 6, 0): {1, 2},
        (2, 9, 3, 1): {3},
        (5, 5, 5, 0): {4, 5},
        (6, 6, 3, 0): {6},
        (6, 9, 0, 0): set(range(7, 14)),
    }
    seen: dict[tuple, set] = {}
    for r, dd in zip(recs, doilies()):
        seen.setdefault(tuple(dd.order_signature()), set()).add(r.type_id)
    assert seen == patterns


def criterion_11():
    S = space(3)
    assert [len(conwell_heptads(w)) for w in S.hyperbolic_parameters] == [8] * 36
    ref = golden.load_heptads()
    hs = conwell_heptads(0)
    assert {frozenset(h) for h in ref["heptads"]} == {frozenset(h.labels()) for h in hs}
    for a, b in itertools.combinations(hs, 2):
        assert len(set(a.points) & set(b.points)) == 1
    assert set(Counter(p for h in hs for p in h.points).values()) == {2}
    assert len(Counter(p for h in hs for p in h.points)) == 28
    first = ref["heptads"][0]
    from polartax.conwell import ConwellHeptad

    ordered = ConwellHeptad(tuple(pauli.encode(w) for w in first), 0)
    assert pauli.decode(triple_to_point(ordered, (0, 3, 5)), 3) == "IXZ"
    total = 0
    for w in S.hyperbolic_parameters:
        qlines = {ln.points for ln in quadric_lines(w)}
        assert len(qlines) == 105
        for h in conwell_heptads(w):
            dh = doily_heptad(h)
            ds = [Doily(pts, 3) for pts in dh.doilies]
            assert len(ds) == 7
            lines = [ln.points for d in ds for ln in d.lines]
            assert len(lines) == 105 and set(lines) == qlines
            for x, y in itertools.combinations(ds, 2):
                common = x.to_mask(set(x.points) & set(y.points))
                assert x.hyperplane_class(common) == "ovoid"
            for p in S.quadric_points(w):
                p1, p2, p3 = tangent_knot(h, p)
                assert p1 ^ p2 ^ p3 == p
            for six in itertools.combinations(h.points, 6):
                assert _gf2_rank(six) == 6
            total += 1
    assert total == 288


def _gf2_rank(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def criterion_12():
    rows = _table_ok(5)
    assert len(rows) == 29
    assert len(linear_subspaces(4)) == 5440 and len(quadratic_subspaces(4)) == 16320
    cs = [r["C-"] for r in rows]
    assert all(c % 2 == 0 for c in cs)
    assert all((a - b) % 4 == 0 for a, b in itertools.combinations(cs, 2))
    census = composite_census(4)
    assert census == {"perp": 63 * 12, "hyp": 36 * 12, "ell": 28 * 12}
    assert sum(census.values()) == 1524
    recs = classify(4)
    ninety = [r for r in recs if r.neg_lines == 90]
    assert sum(1 for r in ninety if not r.trivial) == 1524 + 36
    irreducible = {r.type_id for r in ninety if not r.composite and not r.trivial}
    assert irreducible == {23}
    assert all(r.label == "29" for r in ninety if r.trivial)
    S3 = space(3)
    by_points = {r.subspace.points: r for r in recs}
    for j in range(4):
        for m in "XYZ":
            r = by_points[lift_composite(3, S3.perp_mask(pauli.encode("XII")), j, m).points]
            assert (r.type_id, r.distribution) == (28, (7, 17, 21, 18))
            r = by_points[lift_composite(3, S3.quadric_mask(pauli.encode("YXI")), j, m).points]
            assert (r.type_id, r.distribution) == (25, (4, 16, 28, 15))


def criterion_13():
    assert len(space(3).generators) == 135
    assert negative_planes(n=3) == 54
    recs = [r for r in classify(4) if r.composite or r.trivial]
    assert len(recs) == 1524 + 4
    counts = negative_plane_counts([r.subspace for r in recs])
    assert set(counts.tolist()) == {54}


def criterion_14():
    for n in (2, 3, 4):
        S = space(n)
        sig = S.sigma
        assert (sig == sig.T).all() and not sig.diagonal().any()
        sample = S.points if n < 4 else S.points[::17]
        for a in sample:
            for b in sample:
                assert sig[a, b] == pauli.symplectic_form(a, b, n)
        for ln in S.lines if n < 4 else S.lines[::31]:
            signs = {pauli.line_sign(perm, n) for perm in itertools.permutations(ln.points)}
            assert signs == {ln.sign} and ln.sign in (1, -1)
        # closed forms for points, generators, quadrics and subspaces
        assert len(S.points) == 4**n - 1
        gens = 1
        for k in range(1, n + 1):
            gens *= 2**k + 1
        assert len(S.generators) == gens
        hyp_pts = (2 ** (n - 1) + 1) * (2**n - 1)
        ell_pts = (2 ** (n - 1) - 1) * (2**n + 1)
        assert {len(S.quadric_points(w)) for w in S.hyperbolic_parameters} == {hyp_pts}
        assert {len(S.quadric_points(w)) for w in S.elliptic_parameters} == {ell_pts}
        assert S.quadric_census() == (hyp_pts + 1, ell_pts + 1)
        assert len(linear_subspaces(n)) == 4 ** (n - 1) * (4**n - 1) // 3
        assert len(quadratic_subspaces(n)) == 4 ** (n - 1) * (4**n - 1)
        # hyperplane law for every perp and quadric
        L = S.line_array
        for mask_row in (S.perp_table, S.quadric_table):
            rows = mask_row[1:] if mask_row is S.perp_table else mask_row
            hits = rows[:, L].sum(axis=2)
            assert np.isin(hits, (1, 3)).all()
    # Veldkamp closure and the 1-or-3 law inside doilies
    for d in [Doily(space(2).points, 2), *doilies()[::97]]:
        hs = {h.mask for h in d.hyperplanes}
        for h1, h2 in itertools.combinations(sorted(hs), 2):
            assert d.full & ~(h1 ^ h2) in hs
        for h in hs:
            assert all((h & lm).bit_count() in (1, 3) for lm in d.line_masks)


# ---- pytest entry points ---------------------------------------------------------------


def test_criterion_01_censuses():
    criterion_1()


def test_criterion_02_negative_lines():
    criterion_2()


def test_criterion_03_veldkamp_lines():
    criterion_3()


def test_criterion_04_two_qubit_types():
    criterion_4()


def test_criterion_05_doily_types():
    criterion_5()


def test_criterion_06_residuals():
    criterion_6()


def test_criterion_07_distinguished_intersections():
    criterion_7()


def test_criterion_08_shared_hyperplanes():
    criterion_8()


def test_criterion_09_planar_triads():
    criterion_9()


def test_criterion_10_deep_points_and_signatures():
    criterion_10()


def test_criterion_11_conwell():
    criterion_11()


def test_criterion_12_four_qubit_types():
    criterion_12()


def test_criterion_13_negative_planes():
    criterion_13()


def test_criterion_14_properties():
    criterion_14()


def main() -> int:
    failed = 0
    for k, name in CRITERIA.items():
        try:
            globals()[f"criterion_{k}"]()
        except AssertionError as exc:
            failed += 1
            first = str(exc).splitlines()[0] if str(exc) else "assertion failed"
            print(f"FAIL {k:2d} {name}: {first[:300]}")
        else:
            print(f"PASS {k:2d} {name}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
