"""Parity-check constructions A-E for D-dimensional arrays.

Every code here is a column generator: cell i of the array gets an r-bit
column h_i, and the syndrome of an error pattern is the XOR of its columns.
Syndromes are ints whose bit k is parity-check row k. Segments are laid out
top to bottom of the column starting at bit 0: indicator bit(s), dimension
or BCH segment, then the GF(2^m) segment holding alpha^(linear index).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import lattice
from .bch import BchColumns, SubsetNotFound, build_bch
from .gf2 import FieldCtx, gf4_pow, smallest_degree_for
from .lattice import ClusterShape, Dims, ErrorPattern, Position, as_dims


class UncorrectableError(ValueError):
    """The syndrome matches no pattern of the code's correctable class."""


class AmbiguousDecodeError(UncorrectableError):
    """More than one correctable pattern explains the syndrome."""


def ceil_log2(x: int) -> int:
    """Smallest d with 2^d >= x."""
    if x < 1:
        raise ValueError("ceil_log2 needs a positive argument")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class Segment:
    name: str
    offset: int
    width: int

    def extract(self, s: int) -> int:
        return (s >> self.offset) & ((1 << self.width) - 1)


def layout(*parts: tuple[str, int]) -> tuple[Segment, ...]:
    out = []
    offset = 0
    for name, width in parts:
        out.append(Segment(name, offset, width))
        offset += width
    return tuple(out)


class ArrayCode:
    """Linear code on a D-dimensional array, defined by its parity-check columns."""

    construction: str = "?"
    dims: Dims
    shape: ClusterShape
    segments: tuple[Segment, ...]

    @property
    def r(self) -> int:
        return sum(seg.width for seg in self.segments)

    @property
    def name(self) -> str:
        return f"{self.construction}[{self.dims}]"

    def config(self) -> dict:
        return {"construction": self.construction, "dims": list(self.dims.n)}

    def column(self, p: Sequence[int]) -> int:
        return self.columns[lattice.linear_index(self.dims, p)]

    def _column(self, p: Position) -> int:
        raise NotImplementedError

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Columns of H indexed by linear index."""
        return tuple(self._column(p) for p in self.dims.positions())

    def segment(self, name: str) -> Segment:
        for seg in self.segments:
            if seg.name == name:
                return seg
        raise KeyError(name)

    def split(self, s: int) -> dict[str, int]:
        return {seg.name: seg.extract(s) for seg in self.segments}

    def syndrome(self, pattern: Iterable[Sequence[int]]) -> int:
        """XOR of the columns of the erroneous cells; 0 for no error."""
        s = 0
        for p in pattern:
            s ^= self.column(p)
        return s

    def syndrome_of_array(self, array) -> int:
        flat = np.asarray(array, dtype=np.uint8).reshape(-1)
        if flat.size != self.dims.N:
            raise ValueError(f"array has {flat.size} cells, code expects {self.dims.N}")
        s = 0
        cols = self.columns
        for x in np.flatnonzero(flat & 1):
            s ^= cols[x]
        return s

    def decode(self, s: int) -> ErrorPattern:
        """Error pattern for syndrome s; () means no error."""
        raise NotImplementedError

    def decode_array(self, array) -> tuple[ErrorPattern, np.ndarray]:
        """Decode a received array; returns (pattern, corrected array)."""
        arr = np.array(array, dtype=np.uint8).reshape(self.dims.n)
        pattern = self.decode(self.syndrome_of_array(arr))
        for p in pattern:
            arr[p] ^= 1
        return pattern, arr


def auto_degree(dims: Dims) -> int:
    """Smallest m with 2^m - 1 >= N."""
    return smallest_degree_for(dims.N)


class FoldedCode(ArrayCode):
    """Shared machinery for codes whose last segment is alpha^(linear index)."""

    def __init__(self, dims, m: int | None):
        self.dims = as_dims(dims)
        self.m = auto_degree(self.dims) if m is None else m
        self.gf = FieldCtx(self.m)
        if self.dims.N > self.gf.size:
            raise ValueError(
                f"field GF(2^{self.m}) too small for {self.dims.N} cells (need 2^m - 1 >= N)"
            )

    def _check_wraparound(self) -> None:
        # With N = 2^m the first and last cell share alpha^0; they must differ elsewhere.
        if self.dims.N == self.gf.size and self.columns[0] == self.columns[-1]:
            raise ValueError(
                f"field GF(2^{self.m}) too small: cells 0 and {self.dims.N - 1} get equal columns"
            )

    def config(self) -> dict:
        return {**super().config(), "m": self.m}

    def field_value(self, p: Position) -> int:
        return self.gf.alpha_pow(lattice.linear_index(self.dims, p))

    def _lin_offset(self, o: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(o, self.dims.strides))

    def _exponent_candidates(self, x0: int) -> range:
        return range(x0, self.dims.N, self.gf.order)

    def _single(self, s: int, sigma: int) -> ErrorPattern:
        if sigma == 0:
            raise UncorrectableError("indicator says one error but the field segment is zero")
        for x in self._exponent_candidates(self.gf.log(sigma)):
            if self.columns[x] == s:
                return (lattice.unindex(self.dims, x),)
        raise UncorrectableError(f"no single cell has column {s:#x}")

    def _solve(self, s: int, sigma: int, options: Iterable[Sequence[Position]]) -> ErrorPattern:
        """Pick the anchor for each candidate offset set from the field segment.

        The field segment of cells {a + o} equals alpha^x * sum(alpha^(lin(o) - base)),
        where x is the linear index of the lowest cell; x is recovered with
        one discrete log and each candidate is validated against the full
        syndrome.
        """
        if sigma == 0:
            raise UncorrectableError("field segment is zero for a multi-cell error")
        found: set[ErrorPattern] = set()
        log_sigma = self.gf.log(sigma)
        for offsets in options:
            lins = [self._lin_offset(o) for o in offsets]
            base = min(lins)
            gamma = 0
            for v in lins:
                gamma ^= self.gf.alpha_pow(v - base)
            if gamma == 0:
                continue
            lowest = offsets[lins.index(base)]
            x0 = (log_sigma - self.gf.log(gamma)) % self.gf.order
            for x in self._exponent_candidates(x0):
                anchor = lattice.sub(lattice.unindex(self.dims, x), lowest)
                cells = [lattice.add(anchor, o) for o in offsets]
                if not all(self.dims.contains(c) for c in cells):
                    continue
                if self.syndrome(cells) == s:
                    found.add(lattice.canonical(cells))
        if not found:
            raise UncorrectableError(f"syndrome {s:#x} matches no correctable pattern")
        if len(found) > 1:
            raise AmbiguousDecodeError(f"syndrome {s:#x} matches {sorted(found)}")
        return found.pop()


# ---------- Construction A: 2-bursts ----------

class ConstructionA(FoldedCode):
    """Corrects any error confined to two adjacent cells.

    Column: [1 ; A i^T mod 2 ; alpha^(linear index)], where column j of the
    d x D matrix A is the binary representation of j (0-based), d = ceil(log2 D).
    """

    construction = "A"

    def __init__(self, dims, m: int | None = None):
        super().__init__(dims, m)
        self.d = ceil_log2(self.dims.D)
        self.shape = ClusterShape.two_burst()
        self.segments = layout(("indicator", 1), ("dimension", self.d), ("field", self.m))
        self._check_wraparound()

    def dim_matrix(self) -> np.ndarray:
        """A as a d x D 0/1 matrix; row 0 holds the least significant bit."""
        return np.array(
            [[(j >> row) & 1 for j in range(self.dims.D)] for row in range(self.d)],
            dtype=np.uint8,
        ).reshape(self.d, self.dims.D)

    def _column(self, p: Position) -> int:
        dim_seg = 0
        for j, c in enumerate(p):
            if c & 1:
                dim_seg ^= j
        return 1 | dim_seg << 1 | self.field_value(p) << (1 + self.d)

    def decode(self, s: int) -> ErrorPattern:
        if s == 0:
            return ()
        parts = self.split(s)
        if parts["indicator"]:
            return self._single(s, parts["field"])
        j = parts["dimension"]
        if j >= self.dims.D:
            raise UncorrectableError(f"dimension segment {j} names no dimension")
        zero = (0,) * self.dims.D
        return self._solve(s, parts["field"], [(zero, lattice.unit(self.dims.D, j))])


# ---------- Construction B: 3-bursts on a line ----------

def dim_matrix_b(D: int) -> np.ndarray:
    """ceil(log2(D+1)) x D matrix whose column k holds D - k in binary, MSB in row 0."""
    L = ceil_log2(D + 1)
    return np.array(
        [[((D - k) >> (L - 1 - row)) & 1 for k in range(D)] for row in range(L)], dtype=np.uint8
    ).reshape(L, D)


class ConstructionB(FoldedCode):
    """Corrects any error confined to three consecutive cells on a line.

    Column: [1 ; (sum i_j) mod 2 ; beta^(B i^T) ; alpha^(linear index)], with
    B i^T computed over the integers and one GF(4) element (2 bits) per row of B.
    """

    construction = "B"

    def __init__(self, dims, m: int | None = None):
        super().__init__(dims, m)
        D = self.dims.D
        self.L = ceil_log2(D + 1)
        self.B = dim_matrix_b(D)
        self.shape = ClusterShape.three_burst_line()
        self.segments = layout(
            ("indicator", 1), ("parity", 1), ("gf4", 2 * self.L), ("field", self.m)
        )
        self._col_masks = [tuple(bool(v) for v in self.B[:, j]) for j in range(D)]
        self._check_wraparound()

    def gf4_values(self, p: Position) -> list[int]:
        exps = self.B.astype(np.int64) @ np.asarray(p, dtype=np.int64)
        return [gf4_pow(int(v)) for v in exps]

    def _column(self, p: Position) -> int:
        g4 = 0
        for k, v in enumerate(self.gf4_values(p)):
            g4 |= v << (2 * k)
        return 1 | (sum(p) & 1) << 1 | g4 << 2 | self.field_value(p) << (2 + 2 * self.L)

    def _dimension_for(self, mask: tuple[bool, ...]) -> int:
        for j, col in enumerate(self._col_masks):
            if col == mask:
                return j
        raise UncorrectableError(f"GF(4) zero pattern {mask} matches no dimension")

    def decode(self, s: int) -> ErrorPattern:
        if s == 0:
            return ()
        parts = self.split(s)
        entries = [(parts["gf4"] >> (2 * k)) & 3 for k in range(self.L)]
        zero = (0,) * self.dims.D
        if parts["indicator"]:
            zeros = tuple(e == 0 for e in entries)
            if not any(zeros):
                return self._single(s, parts["field"])
            # weight 3: 1 + beta^v + beta^2v vanishes exactly where B has a 1
            j = self._dimension_for(zeros)
            e1, e2 = lattice.unit(self.dims.D, j), lattice.unit(self.dims.D, j, 2)
            return self._solve(s, parts["field"], [(zero, e1, e2)])
        j = self._dimension_for(tuple(e != 0 for e in entries))
        step = 1 if parts["parity"] else 2
        return self._solve(s, parts["field"], [(zero, lattice.unit(self.dims.D, j, step))])


# ---------- Construction C: weight <= 2 in a semi-cross with unit arms ----------

class ConstructionC(FoldedCode):
    """Corrects up to two errors inside a semi-cross with arms of length one.

    Column: [1 ; H i^T mod 2 ; alpha^(linear index)], where H holds D columns
    of a double-error-correcting BCH code. When 2^d - 1 < D for d = ceil(log2 D)
    the BCH field is enlarged to the smallest sufficient degree and
    `nominal_r` records the unenlarged figure.
    """

    construction = "C"

    def __init__(self, dims, m: int | None = None):
        super().__init__(dims, m)
        D = self.dims.D
        self.d = ceil_log2(D)
        self.bch: BchColumns = build_bch(2, D)
        self.shape = ClusterShape.weight_in_semi_cross(1, 2)
        self.segments = layout(("indicator", 1), ("bch", self.bch.width), ("field", self.m))
        self._check_wraparound()

    @property
    def nominal_r(self) -> int:
        return self.m + 2 * self.d + 1

    @property
    def bch_enlarged(self) -> bool:
        return self.bch.degree != self.d

    def _column(self, p: Position) -> int:
        mid = 0
        for j, c in enumerate(p):
            if c & 1:
                mid ^= self.bch.cols[j]
        return 1 | mid << 1 | self.field_value(p) << (1 + self.bch.width)

    def decode(self, s: int) -> ErrorPattern:
        if s == 0:
            return ()
        parts = self.split(s)
        if parts["indicator"]:
            return self._single(s, parts["field"])
        try:
            dims_hit = sorted(self.bch.identify_subset(parts["bch"], 2))
        except SubsetNotFound as exc:
            raise UncorrectableError(str(exc)) from None
        D = self.dims.D
        if len(dims_hit) == 1:
            options = [((0,) * D, lattice.unit(D, dims_hit[0]))]
        elif len(dims_hit) == 2:
            options = [(lattice.unit(D, dims_hit[0]), lattice.unit(D, dims_hit[1]))]
        else:
            raise UncorrectableError("two errors must differ in one or two dimensions")
        return self._solve(s, parts["field"], options)


# ---------- Constructions D and E: residue-indexed 4-error-correcting BCH ----------

def smallest_t(columns_needed: int) -> int:
    """Smallest t with 2^t - 1 >= columns_needed (at least 2)."""
    return smallest_degree_for(columns_needed)


class _ResidueCode(FoldedCode):
    """Middle segment: XOR over dimensions l of BCH column l*period + (i_l mod period)."""

    period: int

    def _init_bch(self, period: int) -> None:
        self.period = period
        count = period * self.dims.D
        self.t = smallest_t(count)
        self.bch = build_bch(4, count, degree=self.t)

    def bch_segment(self, p: Position) -> int:
        acc = 0
        for ell, c in enumerate(p):
            acc ^= self.bch.cols[ell * self.period + c % self.period]
        return acc

    def _residue_groups(self, mid: int) -> dict[int, list[int]]:
        try:
            hit = self.bch.identify_subset(mid, 4)
        except SubsetNotFound as exc:
            raise UncorrectableError(str(exc)) from None
        groups: dict[int, list[int]] = {}
        for idx in sorted(hit):
            groups.setdefault(idx // self.period, []).append(idx % self.period)
        if not groups or any(len(v) != 2 for v in groups.values()) or len(groups) > 2:
            raise UncorrectableError(f"BCH segment names residues {groups}, not a two-cell error")
        return groups

    def _steps(self, residues: list[int], limit: int) -> list[int]:
        """Coordinate gaps in 1..limit consistent with a residue pair."""
        u, v = residues
        return sorted({g for g in ((v - u) % self.period, (u - v) % self.period) if 1 <= g <= limit})


class ConstructionD(_ResidueCode):
    """Corrects up to two errors inside a semi-cross with arms of length R.

    t is the smallest integer with 2^t - 1 >= 2RD; dimension l uses the 2R
    consecutive BCH columns starting at l*2R, indexed by i_l mod 2R.
    """

    construction = "D"

    def __init__(self, dims, m: int | None = None, R: int = 1):
        super().__init__(dims, m)
        if R < 1:
            raise ValueError("arm length R must be >= 1")
        self.R = R
        self._init_bch(2 * R)
        self.shape = ClusterShape.weight_in_semi_cross(R, 2)
        self.segments = layout(("indicator", 1), ("bch", 4 * self.t), ("field", self.m))
        self._check_wraparound()

    def config(self) -> dict:
        return {**super().config(), "R": self.R}

    @property
    def claimed_excess(self) -> int:
        """Excess redundancy as stated for this construction: 4*ceil(log2(D*R)) + 5."""
        return 4 * ceil_log2(self.dims.D * self.R) + 5

    @property
    def construction_excess(self) -> int:
        return 4 * self.t + 1

    def _column(self, p: Position) -> int:
        return 1 | self.bch_segment(p) << 1 | self.field_value(p) << (1 + 4 * self.t)

    def decode(self, s: int) -> ErrorPattern:
        if s == 0:
            return ()
        parts = self.split(s)
        if parts["indicator"]:
            return self._single(s, parts["field"])
        groups = self._residue_groups(parts["bch"])
        D = self.dims.D
        if len(groups) == 1:
            (j, res), = groups.items()
            options = [((0,) * D, lattice.unit(D, j, g)) for g in self._steps(res, self.R)]
        else:
            (j, rj), (k, rk) = groups.items()
            options = [
                (lattice.unit(D, j, a), lattice.unit(D, k, b))
                for a in self._steps(rj, self.R)
                for b in self._steps(rk, self.R)
            ]
        return self._solve(s, parts["field"], options)


class ConstructionE(_ResidueCode):
    """Corrects up to two errors inside a cross with arms of length one.

    Like construction D with residues mod 4, plus one bit floor(sum i_j / 2) mod 2
    that separates same-sign from opposite-sign arm pairs.
    """

    construction = "E"

    def __init__(self, dims, m: int | None = None):
        super().__init__(dims, m)
        self._init_bch(4)
        self.shape = ClusterShape.weight_in_cross(1, 2)
        self.segments = layout(
            ("indicator", 1), ("bch", 4 * self.t), ("half", 1), ("field", self.m)
        )
        self._check_wraparound()

    def _column(self, p: Position) -> int:
        half = (sum(p) // 2) & 1
        return (
            1
            | self.bch_segment(p) << 1
            | half << (1 + 4 * self.t)
            | self.field_value(p) << (2 + 4 * self.t)
        )

    def decode(self, s: int) -> ErrorPattern:
        if s == 0:
            return ()
        parts = self.split(s)
        if parts["indicator"]:
            return self._single(s, parts["field"])
        groups = self._residue_groups(parts["bch"])
        D = self.dims.D
        if len(groups) == 1:
            (j, res), = groups.items()
            options = [((0,) * D, lattice.unit(D, j, g)) for g in self._steps(res, 2)]
        else:
            (j, rj), (k, rk) = groups.items()
            if self._steps(rj, 1) != [1] or self._steps(rk, 1) != [1]:
                raise UncorrectableError("arm cells of a unit cross differ by one step")
            # the half bit and the field segment settle which of the four sign pairs occurred
            options = [
                (lattice.unit(D, j, sj), lattice.unit(D, k, sk))
                for sj in (-1, 1)
                for sk in (-1, 1)
            ]
        return self._solve(s, parts["field"], options)


# ---------- reference decoder ----------

class TableDecoder:
    """Syndrome -> pattern lookup built by enumerating the correctable class.

    Records every syndrome collision instead of raising, so it doubles as
    the injectivity check.
    """

    def __init__(self, code: ArrayCode, patterns: Iterable[ErrorPattern] | None = None):
        self.code = code
        table: dict[int, ErrorPattern] = {0: ()}
        collisions: list[tuple[ErrorPattern, ErrorPattern]] = []
        if patterns is None:
            patterns = lattice.enumerate_patterns(code.dims, code.shape)
        for pat in patterns:
            s = code.syndrome(pat)
            prev = table.get(s)
            if prev is not None and prev != pat:
                collisions.append((prev, pat))
                continue
            table[s] = pat
        self.table = table
        self.collisions = collisions

    @property
    def injective(self) -> bool:
        return not self.collisions

    def decode(self, s: int) -> ErrorPattern:
        try:
            return self.table[s]
        except KeyError:
            raise UncorrectableError(f"syndrome {s:#x} not in the correctable table") from None


CONSTRUCTIONS = {
    "A": ConstructionA,
    "B": ConstructionB,
    "C": ConstructionC,
    "D": ConstructionD,
    "E": ConstructionE,
}


def build_construction(tag: str, dims, m: int | None = None, R: int | None = None) -> FoldedCode:
    try:
        cls = CONSTRUCTIONS[tag.upper()]
    except KeyError:
        raise ValueError(f"unknown construction {tag!r}") from None
    if cls is ConstructionD:
        return cls(dims, m, R=1 if R is None else R)
    if R not in (None, 1):
        raise ValueError(f"construction {tag} has no arm-length parameter")
    return cls(dims, m)


def build_A(dims, m=None):
    return ConstructionA(dims, m)


def build_B(dims, m=None):
    return ConstructionB(dims, m)


def build_C(dims, m=None):
    return ConstructionC(dims, m)


def build_D(dims, m=None, R=1):
    return ConstructionD(dims, m, R)


def build_E(dims, m=None):
    return ConstructionE(dims, m)


def syndrome_of(code: ArrayCode, pattern: Iterable[Sequence[int]]) -> int:
    return code.syndrome(pattern)


def lower_bound_bits(events: int) -> int:
    """ceil(log2(events)): fewest check bits that can tell `events` outcomes apart."""
    return ceil_log2(events) if events > 1 else 0
