from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from polartax import pauli
from polartax.doily import Doily, NotADoily, order_signature
from polartax.polar import space
from polartax.subspaces import all_subspaces


@pytest.fixture(scope="module")
def two_qubit():
    return Doily(space(2).points, 2)


three_qubit_doilies = st.sampled_from(all_subspaces(3)).map(lambda s: Doily(s.points, 3))


def test_hyperplanes_agree_with_brute_force(two_qubit):
    d = two_qubit
    brute = oracles.brute_force_hyperplanes(d.labels(), [ln.labels(2) for ln in d.lines])
    full = frozenset(d.labels())
    mine = {frozenset(d.labels(h.mask)) for h in d.hyperplanes}
    assert mine == {h for h in brute if h != full}
    assert d.hyperplane_census() == {"perp": 15, "grid": 10, "ovoid": 6}


@settings(max_examples=8, deadline=None)
@given(three_qubit_doilies)
def test_three_qubit_hyperplanes_agree_with_brute_force(d):
    brute = oracles.brute_force_hyperplanes(d.labels(), [ln.labels(3) for ln in d.lines])
    mine = {frozenset(d.labels(h.mask)) for h in d.hyperplanes}
    assert mine == set(brute) - {frozenset(d.labels())}


def test_perp_nuclei_are_the_points(two_qubit):
    nuclei = sorted(h.nucleus for h in two_qubit.hyperplanes if h.cls == "perp")
    assert nuclei == list(range(15))


def test_veldkamp_closure_for_every_pair(two_qubit):
    d = two_qubit
    hs = {h.mask for h in d.hyperplanes}
    for h1, h2 in combinations(sorted(hs), 2):
        h3 = d.full & ~(h1 ^ h2)
        assert h3 in hs
        assert d.is_hyperplane(h3)


@settings(max_examples=10, deadline=None)
@given(three_qubit_doilies, st.data())
def test_veldkamp_closure_three_qubit_doilies(d, data):
    hs = [h.mask for h in d.hyperplanes]
    h1, h2 = data.draw(st.sampled_from(list(combinations(hs, 2))))
    vl = d.veldkamp_line(h1, h2)
    assert all(d.is_hyperplane(h) for h in vl.hyperplanes)
    assert vl.core == (h1 & h2)


def test_veldkamp_space_has_155_lines_in_five_types(two_qubit):
    s = two_qubit.veldkamp_summary()
    assert sum(row["count"] for row in s.values()) == 155
    assert {t: row["core"] for t, row in s.items()} == {
        "I": "2cl", "II": "le", "III": "ttr", "IV": "utr", "V": "pt",
    }


def test_triads(two_qubit):
    assert two_qubit.triad_census() == (60, 20)
    assert {len(t.centers) for t in two_qubit.triads} == {1, 3}


def test_two_qubit_signs(two_qubit):
    assert two_qubit.negative_line_count() == 3
    assert two_qubit.order_signature() == [6, 9, 0, 0]
    assert two_qubit.deep_and_zero_points()[0] == []


def test_hyperplane_law_in_every_doily_sample():
    for s in all_subspaces(3)[::37]:
        d = Doily(s.points, 3)
        for h in d.hyperplanes:
            assert all((h.mask & lm).bit_count() in (1, 3) for lm in d.line_masks)


def test_order_signature_sums_to_points():
    for s in all_subspaces(3)[::91]:
        sig = order_signature(s.points, 3)
        assert len(sig) == 4
        assert sum(sig) == 15
        assert sum(k * c for k, c in enumerate(sig)) == 3 * Doily(s.points, 3).negative_line_count()


def test_from_labels_and_rejections():
    d = Doily.from_labels(",".join(pauli.decode(p, 2) for p in space(2).points))
    assert len(d.lines) == 15
    with pytest.raises(NotADoily):
        Doily(space(3).points[:15], 3)
    with pytest.raises(NotADoily):
        Doily(space(2).points[:14], 2)


def test_residual_signature_columns_are_known():
    seen = Counter()
    for s in all_subspaces(3)[::13]:
        for c in Doily(s.points, 3).residual_signature():
            seen[c] += 1
    assert set(seen) <= {"2cl", "le", "ttr", "utr", "pt", "ov", "ps", "gr", "fl"}
