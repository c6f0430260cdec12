import random

import pytest
from hypothesis import given, strategies as st

from mdecc.fire import BurstUncorrectable, FireCode, build_fire, fire_decode_burst, word_to_int


def remainder(word_bits, g_bits):
    """Long division on coefficient lists (index = power of x)."""
    w = list(word_bits)
    dg = len(g_bits) - 1
    for i in range(len(w) - 1, dg - 1, -1):
        if w[i]:
            for k, gk in enumerate(g_bits):
                w[i - dg + k] ^= gk
    return sum(bit << i for i, bit in enumerate(w[:dg]))


def bits(v, n):
    return [(v >> i) & 1 for i in range(n)]


def bursts(b, n):
    """Every (position, pattern) with both ends set and length <= b."""
    for length in range(1, b + 1):
        for mid in range(1 << max(0, length - 2)):
            pat = 1 if length == 1 else (1 | (1 << (length - 1)) | (mid << 1))
            for j in range(n - length + 1):
                yield j, pat


def test_generator_small_case():
    code = FireCode(2, 3, 21)
    # (x^3 + 1)(x^3 + x + 1)
    assert code.g == 0b1010011
    assert code.n_full == 21 and code.redundancy == 6


@pytest.mark.parametrize(
    "b,e",
    [(0, 3), (3, 2), (2, 2)],  # b < 1; deg p < b; period 3 divides 2b-1 = 3
)
def test_invalid_parameters(b, e):
    with pytest.raises(ValueError):
        FireCode(b, e, 1)


def test_length_beyond_period():
    with pytest.raises(ValueError):
        FireCode(2, 3, 22)


@pytest.mark.parametrize("b,n_min,e", [(2, 7, 3), (2, 22, 5), (3, 10, 3), (3, 36, 5), (5, 21, 5), (1, 3, 2)])
def test_build_picks_smallest_degree(b, n_min, e):
    code = build_fire(b, n_min)
    assert code.p_degree == e and code.n == n_min and code.b == b


@pytest.mark.parametrize("b,e,n", [(2, 3, 21), (3, 4, 15), (2, 4, 11), (5, 5, 21), (3, 5, 155)])
def test_syndrome_matches_long_division(b, e, n):
    code = FireCode(b, e, n)
    g_bits = bits(code.g, code.redundancy + 1)
    rng = random.Random(b * 100 + n)
    for _ in range(50):
        w = rng.getrandbits(n)
        assert code.syndrome(w) == remainder(bits(w, n), g_bits)


@pytest.mark.parametrize("b,e,n", [(2, 3, 21), (3, 4, 15), (3, 4, 11), (3, 5, 155), (4, 5, 93), (5, 5, 13)])
def test_every_burst_trapped(b, e, n):
    code = FireCode(b, e, n)
    seen = {}
    for j, pat in bursts(b, n):
        s = code.syndrome(pat << j)
        assert s not in seen, f"bursts {seen.get(s)} and {(j, pat)} collide"
        seen[s] = (j, pat)
        assert fire_decode_burst(code, s) == (j, pat)
    assert code.decode(0) is None


def test_word_to_int():
    assert word_to_int([1, 0, 1, 1]) == 0b1101
    assert word_to_int(6) == 6
    with pytest.raises(ValueError):
        FireCode(2, 3, 5).syndrome(1 << 5)


@given(st.integers(1, (1 << 21) - 1))
def test_decoded_burst_explains_syndrome(word):
    code = FireCode(2, 3, 21)
    s = code.syndrome(word)
    try:
        found = code.decode(s)
    except BurstUncorrectable:
        return
    if found is None:
        assert s == 0
        return
    j, pat = found
    assert pat & 1 and pat < 1 << code.b and j + pat.bit_length() <= code.n
    assert code.syndrome(pat << j) == s


def test_syndrome_outside_burst_set_raises():
    code = FireCode(3, 5, 45)
    known = {code.syndrome(pat << j) for j, pat in bursts(code.b, code.n)}
    stray = [s for s in range(1, 1 << code.redundancy) if s not in known][:50]
    assert stray
    for s in stray:
        with pytest.raises(BurstUncorrectable):
            code.decode(s)
