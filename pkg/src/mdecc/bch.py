"""Shortened binary BCH parity-check columns and subset-sum identification.

Column c of a t-error-correcting set over GF(2^w) is the concatenation
alpha^c | alpha^(3c) | ... | alpha^((2t-1)c), packed LSB-first with the
alpha^c block in the low w bits.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .gf2 import MIN_DEGREE, FieldCtx, smallest_degree_for


class SubsetNotFound(LookupError):
    pass


@dataclass(frozen=True)
class BchColumns:
    t_cap: int
    degree: int
    cols: tuple[int, ...]
    field_: FieldCtx = field(repr=False, compare=False)

    @property
    def width(self) -> int:
        return self.t_cap * self.degree

    @property
    def count(self) -> int:
        return len(self.cols)

    @cached_property
    def _sums(self) -> dict[int, frozenset[int]]:
        table: dict[int, frozenset[int]] = {0: frozenset()}
        for size in range(1, self.t_cap + 1):
            for combo in itertools.combinations(range(self.count), size):
                acc = 0
                for c in combo:
                    acc ^= self.cols[c]
                if acc in table:
                    raise ValueError(
                        f"columns {sorted(table[acc])} and {list(combo)} share the sum {acc:#x}"
                    )
                table[acc] = frozenset(combo)
        return table

    def check_distance(self) -> bool:
        """Exhaustively confirm every sum of up to t_cap distinct columns is unique and nonzero."""
        try:
            self._sums
        except ValueError:
            return False
        return True

    def identify_subset(self, s: int, max_size: int | None = None) -> frozenset[int]:
        """The unique set of column indices whose XOR is s."""
        max_size = self.t_cap if max_size is None else max_size
        if max_size > self.t_cap:
            raise ValueError(f"max_size {max_size} exceeds designed capability {self.t_cap}")
        found = self._sums.get(s)
        if found is None or len(found) > max_size:
            raise SubsetNotFound(f"{s:#x} is not a sum of at most {max_size} columns")
        return found


def build_bch(t_cap: int, count: int, degree: int | None = None) -> BchColumns:
    """First `count` columns of a t_cap-error-correcting BCH parity-check matrix.

    With no degree given, the smallest field with 2^w - 1 >= count is used.
    """
    if t_cap < 1:
        raise ValueError("t_cap must be positive")
    if count < 1:
        raise ValueError("need at least one column")
    w = smallest_degree_for(count, MIN_DEGREE) if degree is None else degree
    f = FieldCtx(w)
    if count > f.order:
        raise ValueError(f"{count} columns exceed the {f.order} available over GF(2^{w})")
    cols = []
    for c in range(count):
        col = 0
        for k in range(t_cap):
            col |= f.alpha_pow((2 * k + 1) * c) << (k * w)
        cols.append(col)
    return BchColumns(t_cap, w, tuple(cols), f)
