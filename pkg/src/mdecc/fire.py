"""Fire codes: cyclic single-burst correctors used as 1-D component codes.

Words and polynomials are ints, bit k holding position k / coefficient of x^k.
A burst is reported as (position, pattern) with bit 0 and the top bit of the
pattern both set.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .gf2 import MAX_DEGREE, PRIMITIVE_POLYS, poly_deg, poly_mod, poly_mul


class BurstUncorrectable(ValueError):
    pass


class ComponentRole(enum.Enum):
    BURST_CORRECTING = "burst-correcting"
    # placeholder only; locator codes are not built
    BURST_LOCATOR = "burst-locator"


@dataclass(frozen=True)
class FireCode:
    b: int
    p_degree: int
    n: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("burst length must be >= 1")
        if self.p_degree < self.b:
            raise ValueError("Fire codes need deg p(x) >= b")
        period = (1 << self.p_degree) - 1
        if (2 * self.b - 1) % period == 0:
            raise ValueError(f"p(x) period {period} divides 2b-1 = {2 * self.b - 1}")
        if not 1 <= self.n <= self.n_full:
            raise ValueError(f"length {self.n} outside 1..{self.n_full}")

    @property
    def p(self) -> int:
        return PRIMITIVE_POLYS[self.p_degree]

    @property
    def g(self) -> int:
        """Generator (x^(2b-1) + 1) p(x)."""
        return poly_mul((1 << (2 * self.b - 1)) | 1, self.p)

    @property
    def n_full(self) -> int:
        return math.lcm(2 * self.b - 1, (1 << self.p_degree) - 1)

    @property
    def redundancy(self) -> int:
        return 2 * self.b - 1 + self.p_degree

    @property
    def redundancy_bound(self) -> int:
        """ceil(log2 n_full) + 2b - 1."""
        return (self.n_full - 1).bit_length() + 2 * self.b - 1

    def syndrome(self, word: int | Sequence[int]) -> int:
        return fire_syndrome(self, word)

    def decode(self, syndrome: int) -> tuple[int, int] | None:
        return fire_decode_burst(self, syndrome)


def _feasible(b: int, e: int) -> bool:
    return e >= b and (2 * b - 1) % ((1 << e) - 1) != 0


def build_fire(b: int, n_min: int) -> FireCode:
    """Smallest-degree Fire code correcting b-bursts, shortened to length n_min."""
    if b < 1 or n_min < 1:
        raise ValueError("need b >= 1 and n_min >= 1")
    for e in range(max(b, 2), MAX_DEGREE + 1):
        if _feasible(b, e) and math.lcm(2 * b - 1, (1 << e) - 1) >= n_min:
            return FireCode(b, e, n_min)
    raise ValueError(f"no Fire code with b={b} reaches length {n_min} within the polynomial table")


def word_to_int(word: int | Sequence[int]) -> int:
    if isinstance(word, int):
        return word
    v = 0
    for k, bit in enumerate(word):
        if int(bit) & 1:
            v |= 1 << k
    return v


def fire_syndrome(code: FireCode, word: int | Sequence[int]) -> int:
    """word(x) mod g(x)."""
    w = word_to_int(word)
    if w >> code.n:
        raise ValueError(f"word longer than code length {code.n}")
    return poly_mod(w, code.g)


def fire_decode_burst(code: FireCode, syndrome: int) -> tuple[int, int] | None:
    """Error trapping: None for a zero syndrome, else (position, burst pattern).

    Multiplies the syndrome by x^-1 mod g one step at a time; at shift j the
    register holds x^-j e(x) mod g, which equals the burst pattern itself once
    j reaches the burst start.
    """
    if syndrome == 0:
        return None
    g = code.g
    limit = 1 << code.b
    t = syndrome
    for j in range(code.n):
        if t & 1 and t < limit:
            if j + poly_deg(t) >= code.n:
                break
            return j, t
        if t & 1:
            t ^= g
        t >>= 1
    raise BurstUncorrectable(f"syndrome {syndrome:#x} traps no burst of length <= {code.b}")
