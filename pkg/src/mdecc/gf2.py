"""Arithmetic in GF(2^m), GF(4) and the polynomial ring GF(2)[x].

Field elements and polynomials are plain ints with the constant term in
bit 0 (LSB-first coefficient packing).
"""
from __future__ import annotations

import math
from functools import cached_property

# One fixed primitive polynomial per degree, bit-packed (bit k = coeff of x^k).
PRIMITIVE_POLYS: dict[int, int] = {
    2: 0x7,  # x^2 + x + 1
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x83,  # x^7 + x + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
    17: 0x20009,  # x^17 + x^3 + 1
    18: 0x40081,  # x^18 + x^7 + 1
    19: 0x80027,  # x^19 + x^5 + x^2 + x + 1
    20: 0x100009,  # x^20 + x^3 + 1
    21: 0x200005,  # x^21 + x^2 + 1
    22: 0x400003,  # x^22 + x + 1
    23: 0x800021,  # x^23 + x^5 + 1
    24: 0x1000087,  # x^24 + x^7 + x^2 + x + 1
}

MIN_DEGREE = 2
MAX_DEGREE = 24
TABLE_MAX_DEGREE = 20


# ---------- GF(2)[x] ----------

def poly_deg(a: int) -> int:
    """Degree of a; -1 for the zero polynomial."""
    return a.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, g: int) -> int:
    if g == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    dg = poly_deg(g)
    da = poly_deg(a)
    while da >= dg:
        a ^= g << (da - dg)
        da = poly_deg(a)
    return a


def poly_divmod(a: int, g: int) -> tuple[int, int]:
    if g == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    dg = poly_deg(g)
    q = 0
    da = poly_deg(a)
    while da >= dg:
        shift = da - dg
        q |= 1 << shift
        a ^= g << shift
        da = poly_deg(a)
    return q, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, g: int) -> int:
    return poly_mod(poly_mul(a, b), g)


def poly_powmod(a: int, k: int, g: int) -> int:
    result = 1
    a = poly_mod(a, g)
    while k:
        if k & 1:
            result = poly_mulmod(result, a, g)
        a = poly_mulmod(a, a, g)
        k >>= 1
    return poly_mod(result, g)


def poly_str(a: int) -> str:
    if a == 0:
        return "0"
    terms = []
    for k in range(poly_deg(a), -1, -1):
        if a >> k & 1:
            terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
    return " + ".join(terms)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive(poly: int) -> bool:
    """True when x has multiplicative order exactly 2^deg - 1 modulo poly."""
    m = poly_deg(poly)
    if m < 1 or not poly & 1:
        return False
    order = (1 << m) - 1
    if poly_powmod(0b10, order, poly) != 1:
        return False
    return all(poly_powmod(0b10, order // q, poly) != 1 for q in _prime_factors(order))


# ---------- GF(2^m) ----------

class FieldCtx:
    """GF(2^m) with alpha = residue of x modulo a fixed primitive polynomial.

    Immutable after construction. Degrees up to 20 use log/antilog tables;
    larger degrees multiply directly and take logarithms by baby-step
    giant-step.
    """

    def __init__(self, m: int, primitive_poly: int | None = None):
        if not MIN_DEGREE <= m <= MAX_DEGREE:
            raise ValueError(f"unsupported field degree m={m} (need {MIN_DEGREE}..{MAX_DEGREE})")
        poly = PRIMITIVE_POLYS[m] if primitive_poly is None else primitive_poly
        if poly_deg(poly) != m:
            raise ValueError(f"polynomial {poly:#x} does not have degree {m}")
        if primitive_poly is not None and not is_primitive(poly):
            raise ValueError(f"polynomial {poly:#x} is not primitive")
        self.m = m
        self.primitive_poly = poly
        self.order = (1 << m) - 1
        self.size = 1 << m
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if m <= TABLE_MAX_DEGREE:
            self._build_tables()

    def __repr__(self) -> str:
        return f"FieldCtx(m={self.m}, primitive_poly={self.primitive_poly:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.m, self.primitive_poly) == (
            other.m,
            other.primitive_poly,
        )

    def __hash__(self) -> int:
        return hash((self.m, self.primitive_poly))

    def __getstate__(self):
        return {"m": self.m, "primitive_poly": self.primitive_poly}

    def __setstate__(self, state):
        self.__init__(state["m"], state["primitive_poly"])

    def _build_tables(self) -> None:
        exp = [0] * self.order
        log = [-1] * self.size
        x = 1
        for k in range(self.order):
            exp[k] = x
            log[x] = k
            x <<= 1
            if x & self.size:
                x ^= self.primitive_poly
        self._exp = exp
        self._log = log

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def contains(self, a: int) -> bool:
        return 0 <= a < self.size

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % self.order]
        return poly_mulmod(a, b, self.primitive_poly)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * k) % self.order]
        return poly_powmod(a, k % self.order, self.primitive_poly)

    def alpha_pow(self, k: int) -> int:
        """alpha^k for any integer k, reduced mod 2^m - 1."""
        k %= self.order
        if self._exp is not None:
            return self._exp[k]
        return poly_powmod(0b10, k, self.primitive_poly)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.alpha_pow(-self.log(a))

    def log(self, a: int) -> int:
        """Discrete logarithm base alpha, in 0..2^m - 2."""
        if a == 0:
            raise ValueError("log of zero")
        if self._log is not None:
            return self._log[a]
        return self._bsgs_log(a)

    @cached_property
    def _giant(self) -> tuple[int, dict[int, int], int]:
        step = math.isqrt(self.order) + 1
        baby = {}
        x = 1
        for j in range(step):
            baby.setdefault(x, j)
            x = poly_mulmod(x, 0b10, self.primitive_poly)
        factor = poly_powmod(0b10, self.order - step, self.primitive_poly)
        return step, baby, factor

    def _bsgs_log(self, a: int) -> int:
        step, baby, factor = self._giant
        gamma = a
        for i in range(step + 1):
            j = baby.get(gamma)
            if j is not None:
                return (i * step + j) % self.order
            gamma = poly_mulmod(gamma, factor, self.primitive_poly)
        raise ValueError(f"{a:#x} is not a field element")


def field_new(m: int) -> FieldCtx:
    return FieldCtx(m)


def smallest_degree_for(count: int, minimum: int = MIN_DEGREE) -> int:
    """Smallest m >= minimum with 2^m - 1 >= count."""
    m = minimum
    while (1 << m) - 1 < count:
        m += 1
    return m


# ---------- GF(4) over the basis {1, beta}, beta^2 = beta + 1 ----------

GF4_ONE = 0b01
GF4_BETA = 0b10
GF4_BETA2 = 0b11
_GF4_POWERS = (GF4_ONE, GF4_BETA, GF4_BETA2)
_GF4_LOG = {GF4_ONE: 0, GF4_BETA: 1, GF4_BETA2: 2}


def gf4_pow(v: int) -> int:
    """beta^v; exponents reduce mod 3."""
    return _GF4_POWERS[v % 3]


def gf4_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _GF4_POWERS[(_GF4_LOG[a] + _GF4_LOG[b]) % 3]
