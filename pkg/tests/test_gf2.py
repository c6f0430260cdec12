import itertools

import pytest
from hypothesis import given, strategies as st

from mdecc import gf2
from mdecc.gf2 import FieldCtx, PRIMITIVE_POLYS


def slow_mulmod(a, b, poly, m):
    """Shift-and-add with reduction after every step, on bit lists."""
    acc = [0] * m
    abits = [(a >> i) & 1 for i in range(m)]
    pbits = [(poly >> i) & 1 for i in range(m)]
    for i in reversed(range(m)):
        # acc <- acc * x mod poly
        top = acc[-1]
        acc = [0] + acc[:-1]
        if top:
            acc = [u ^ v for u, v in zip(acc, pbits)]
        if (b >> i) & 1:
            acc = [u ^ v for u, v in zip(acc, abits)]
    return sum(bit << i for i, bit in enumerate(acc))


def multiplicative_order_of_x(poly, m):
    x, k = 2, 1
    while x != 1:
        x <<= 1
        if x >> m:
            x ^= poly
        k += 1
    return k


@pytest.mark.parametrize("m", range(2, 17))
def test_table_polys_are_primitive_by_brute_force(m):
    assert multiplicative_order_of_x(PRIMITIVE_POLYS[m], m) == (1 << m) - 1


@pytest.mark.parametrize("m", range(2, 25))
def test_table_polys_pass_factor_test(m):
    assert gf2.poly_deg(PRIMITIVE_POLYS[m]) == m
    assert gf2.is_primitive(PRIMITIVE_POLYS[m])


def test_is_primitive_rejects_reducible_and_nonprimitive():
    assert not gf2.is_primitive(0b101)      # (x+1)^2
    assert not gf2.is_primitive(0b11111)    # x^4+x^3+x^2+x+1 has order 5
    assert gf2.is_primitive(0b10011)


@pytest.mark.parametrize("m", [3, 5, 8])
def test_mul_matches_bitlist_oracle(m):
    f = FieldCtx(m)
    for a, b in itertools.product(range(f.size), repeat=2):
        assert f.mul(a, b) == slow_mulmod(a, b, f.primitive_poly, m)


@pytest.mark.parametrize("m", [1, 25, 0])
def test_degree_out_of_range(m):
    with pytest.raises(ValueError):
        FieldCtx(m)


def test_tables_only_up_to_threshold():
    assert FieldCtx(gf2.TABLE_MAX_DEGREE).has_tables
    assert not FieldCtx(gf2.TABLE_MAX_DEGREE + 1).has_tables


def test_zero_has_no_log_or_inverse():
    f = FieldCtx(4)
    with pytest.raises(ValueError):
        f.log(0)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_alpha_power_wraps():
    f = FieldCtx(4)
    assert f.alpha_pow(15) == 1
    assert f.alpha_pow(-1) == f.inv(2)
    assert f.alpha_pow(4) == 0b0011  # x^4 = x + 1


@pytest.mark.parametrize("count,m", [(1, 2), (3, 2), (4, 3), (16, 5), (31, 5), (32, 6), (64, 7)])
def test_smallest_degree_for(count, m):
    assert gf2.smallest_degree_for(count) == m


def test_gf4_basis():
    assert gf2.gf4_mul(gf2.GF4_BETA, gf2.GF4_BETA) == gf2.GF4_BETA2 == gf2.GF4_BETA ^ gf2.GF4_ONE
    assert [gf2.gf4_pow(v) for v in range(4)] == [1, 2, 3, 1]
    for a in (1, 2, 3):
        assert gf2.gf4_mul(a, gf2.gf4_mul(a, a)) == 1


def test_poly_helpers():
    assert gf2.poly_mul(0b11, 0b11) == 0b101
    q, r = gf2.poly_divmod(0b10011, 0b11)
    assert gf2.poly_mul(q, 0b11) ^ r == 0b10011 and gf2.poly_deg(r) < 1
    assert gf2.poly_gcd(0b101, 0b11) == 0b11
    assert gf2.poly_str(0b1011) == "x^3 + x + 1"


def test_field_pickles():
    import pickle
    f = FieldCtx(21)
    g = pickle.loads(pickle.dumps(f))
    assert g == f and g.log(f.alpha_pow(12345)) == 12345


big_m = st.integers(min_value=2, max_value=24)


@given(big_m, st.data())
def test_log_inverts_alpha_pow(m, data):
    f = FieldCtx(m)
    k = data.draw(st.integers(0, f.order - 1))
    assert f.log(f.alpha_pow(k)) == k


@given(big_m, st.data())
def test_field_ring_laws(m, data):
    f = FieldCtx(m)
    elem = st.integers(0, f.size - 1)
    a, b, c = data.draw(elem), data.draw(elem), data.draw(elem)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    if a:
        assert f.mul(a, f.inv(a)) == 1
        assert f.pow(a, f.order) == 1


@given(st.integers(0, 2**40), st.integers(0, 2**40), st.integers(2, 2**20))
def test_poly_divmod_identity(a, b, g):
    q, r = gf2.poly_divmod(a, g)
    assert gf2.poly_mul(q, g) ^ r == a
    assert r == 0 or gf2.poly_deg(r) < gf2.poly_deg(g)
    assert gf2.poly_mod(gf2.poly_mul(a, b), g) == gf2.poly_mulmod(a, b, g)
