import itertools

import pytest
from hypothesis import given, strategies as st

from mdecc.bch import BchColumns, SubsetNotFound, build_bch
from mdecc.gf2 import FieldCtx


def subset_sums(cols, t):
    sums = {}
    for k in range(1, t + 1):
        for combo in itertools.combinations(range(len(cols)), k):
            acc = 0
            for c in combo:
                acc ^= cols[c]
            sums.setdefault(acc, []).append(combo)
    return sums


@pytest.mark.parametrize("t,count", [(2, 7), (2, 15), (3, 15), (4, 15), (4, 31)])
def test_small_sums_distinct_and_nonzero(t, count):
    bch = build_bch(t, count)
    sums = subset_sums(bch.cols, t)
    assert 0 not in sums
    assert all(len(v) == 1 for v in sums.values())
    assert bch.check_distance()


@pytest.mark.parametrize("t,count", [(2, 7), (4, 15)])
def test_column_layout(t, count):
    bch = build_bch(t, count)
    f = FieldCtx(bch.degree)
    mask = (1 << bch.degree) - 1
    for c, col in enumerate(bch.cols):
        for k in range(t):
            assert (col >> (k * bch.degree)) & mask == f.alpha_pow((2 * k + 1) * c)
    assert bch.width == t * bch.degree


def test_too_many_columns():
    with pytest.raises(ValueError):
        build_bch(2, 8, degree=3)


def test_dependent_columns_fail_distance_check():
    bad = BchColumns(t_cap=2, degree=2, cols=(1, 2, 3), field_=FieldCtx(2))
    assert not bad.check_distance()
    assert BchColumns(t_cap=1, degree=2, cols=(1, 2, 3), field_=FieldCtx(2)).check_distance()


def test_identify_rejects_heavier_sums():
    bch = build_bch(2, 7)
    s = bch.cols[0] ^ bch.cols[1] ^ bch.cols[2]
    with pytest.raises(SubsetNotFound):
        bch.identify_subset(s)
    with pytest.raises(ValueError):
        bch.identify_subset(s, max_size=3)
    with pytest.raises(SubsetNotFound):
        bch.identify_subset(bch.cols[0] ^ bch.cols[1], max_size=1)


@given(st.sets(st.integers(0, 14), min_size=0, max_size=4))
def test_identify_round_trip(subset):
    bch = build_bch(4, 15)
    s = 0
    for c in subset:
        s ^= bch.cols[c]
    assert bch.identify_subset(s) == frozenset(subset)
