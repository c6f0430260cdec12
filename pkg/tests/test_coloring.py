import itertools
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdecc import lattice
from mdecc.coloring import (
    ColoringMatrix,
    ColoringScheme,
    TheoremRestrictionWarning,
    brute_force_p1,
    brute_force_p2,
    cross_matrix,
    cross_scheme,
    semicross_matrix,
    semicross_scheme,
)
from mdecc.lattice import ClusterShape


def loop_colors(scheme, s, p):
    v = sum(a * c for a, c in zip(scheme.matrix.rows[s], p))
    m = scheme.matrix.moduli[s]
    return v % m if m is not None else v


def loop_spans(scheme):
    out = []
    for s in range(scheme.D):
        worst = 0
        for inst in lattice.instances(scheme.dims, scheme.shape):
            cols = [loop_colors(scheme, s, p) for p in inst]
            worst = max(worst, max(cols) - min(cols) + 1)
        out.append(worst)
    return tuple(out)


SCHEMES = [
    ("semi", 2, 3, False),
    ("semi", 4, 3, False),
    ("semi", 4, 3, True),
    ("semi", 6, 2, False),
    ("cross", 2, 5, False),
    ("cross", 2, 5, True),
    ("cross", 3, 3, True),
    ("cross", 3, 5, False),
]


def make(kind, D, n, modular):
    if kind == "semi":
        return semicross_scheme(D, n, modular=modular)
    return cross_scheme(D, n, modular=modular)


@pytest.fixture(params=SCHEMES, ids=lambda c: f"{c[0]}-D{c[1]}-n{c[2]}-{'mod' if c[3] else 'plain'}")
def scheme(request):
    return make(*request.param)


def test_colors_match_loop(scheme):
    for s in range(scheme.D):
        raw = scheme.raw_colors(s)
        for p in scheme.dims.positions():
            assert raw[p] == loop_colors(scheme, s, p)
            assert scheme.color_of(s, p) == raw[p] - scheme.lo[s]
        assert scheme.colors(s).min() == 0
        assert scheme.colors(s).max() == scheme.eta[s] - 1


def test_spans_match_loop(scheme):
    assert scheme.spans == loop_spans(scheme)
    assert all(d >= 0 for d in scheme.deltas)


def test_vectorised_checks_match_brute_force(scheme):
    assert bool(scheme.check_p1()) == bool(brute_force_p1(scheme))
    assert bool(scheme.check_p2()) == bool(brute_force_p2(scheme))


def test_projection_is_color_xor(scheme):
    rng = np.random.default_rng(5)
    arr = rng.integers(0, 2, scheme.dims.n).astype(np.uint8)
    for s in range(scheme.D):
        want = np.zeros(scheme.eta[s], dtype=np.uint8)
        for p in scheme.dims.positions():
            if arr[p]:
                want[scheme.color_of(s, p)] ^= 1
        assert np.array_equal(scheme.project(s, arr), want)


def test_semicross_rows():
    assert semicross_matrix(4).rows == ((1, 2, 3, 4), (1, -3, -2, -1), (1, 2, -2, -1), (1, 2, 3, -1))


@pytest.mark.parametrize("D", [2, 4, 6])
def test_plain_semicross_is_tight(D):
    # every cluster of D + 1 cells gets D + 1 consecutive colors
    assert semicross_scheme(D, 3).deltas == (0,) * D


def test_cross_rows_symmetric_residues():
    m = cross_matrix(3, 5)
    assert m.rows == ((1, 2, 3), (2, 4, -3), (3, -1, 2))
    assert m.moduli == (None, 40, 30)
    assert cross_matrix(3, 5, modular=False).is_plain


def test_odd_dimension_warns_or_raises():
    with pytest.warns(TheoremRestrictionWarning):
        semicross_matrix(3)
    with pytest.raises(ValueError):
        semicross_matrix(3, strict=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        semicross_matrix(4, strict=True)


def test_repeated_color_detected():
    # row 2 gives cells p and p + e1 + e2 ... and p, p + e2 the same color
    bad = ColoringMatrix.plain([(1, 2), (1, 0)])
    sch = ColoringScheme(bad, ClusterShape.semi_cross(1), (4, 4))
    res = sch.check_p1()
    assert not res and res.counterexample[0] == 1
    assert not brute_force_p1(sch)


def test_singular_matrix_fails_p2_with_witness():
    sch = ColoringScheme(ColoringMatrix.plain([(1, 2), (2, 4)]), ClusterShape.semi_cross(1), (5, 5))
    res = sch.check_p2()
    assert not res
    pa, pb = res.counterexample
    assert pa != pb and all(sch.color_of(s, pa) == sch.color_of(s, pb) for s in range(2))
    assert sch.matrix.determinant() == 0 and sch.p2_determinant_agrees()


def test_determinant_exact():
    assert ColoringMatrix.plain([(2, 0, 1), (1, 3, 2), (1, 1, 1)]).determinant() == 0
    assert ColoringMatrix.plain([(2, 0, 1), (1, 3, 2), (1, 1, 2)]).determinant() == 6
    rng = np.random.default_rng(1)
    for _ in range(20):
        rows = rng.integers(-4, 5, (4, 4))
        assert ColoringMatrix.plain(rows.tolist()).determinant() == round(np.linalg.det(rows))
    assert semicross_matrix(4).determinant() != 0


def test_determinant_needs_plain_rows():
    with pytest.raises(ValueError):
        semicross_scheme(4, 3, modular=True).p2_determinant_agrees()


def test_modular_semicross_breaks_alignment():
    assert semicross_scheme(4, 3).check_p3()
    res = semicross_scheme(4, 3, modular=True).check_p3()
    assert not res and "congruent" in res.detail


small_rows = st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2)


@settings(max_examples=40)
@given(small_rows, st.integers(2, 5))
def test_p2_exhaustive_agrees_with_determinant_when_big_enough(rows, n):
    sch = ColoringScheme(ColoringMatrix.plain(rows), ClusterShape.semi_cross(1), (n, n))
    assert bool(sch.check_p2()) == bool(brute_force_p2(sch))
    if sch.matrix.determinant() != 0:
        assert sch.check_p2()


@pytest.mark.parametrize("rows,ok", [([(1, 2), (1, -1)], True), ([(1, 2), (2, 4)], False)])
def test_p2_survives_total_key_collision(monkeypatch, rows, ok):
    sch = ColoringScheme(ColoringMatrix.plain(rows), ClusterShape.semi_cross(1), (4, 4))
    monkeypatch.setattr(sch, "_color_key", lambda: np.zeros(sch.dims.N, dtype=np.uint64))
    assert bool(sch.check_p2()) is ok
