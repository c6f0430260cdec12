"""Geometry of D-dimensional noncyclic arrays and the cluster shapes they suffer.

Positions are tuples of 0-based coordinates. Dimensions are 0-based in the
Python API; file formats and the CLI present them 1-based.

An error pattern is a sorted tuple of positions. The empty tuple means no
error.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Position = tuple[int, ...]
ErrorPattern = tuple[Position, ...]


@dataclass(frozen=True)
class Dims:
    n: tuple[int, ...]

    def __init__(self, n: Iterable[int]):
        n = tuple(int(v) for v in n)
        if not n:
            raise ValueError("need at least one dimension")
        if any(v < 2 for v in n):
            raise ValueError(f"every edge length must be >= 2, got {n}")
        object.__setattr__(self, "n", n)

    @property
    def D(self) -> int:
        return len(self.n)

    @property
    def N(self) -> int:
        return math.prod(self.n)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for v in reversed(self.n):
            out.append(acc)
            acc *= v
        return tuple(reversed(out))

    def contains(self, p: Sequence[int]) -> bool:
        return len(p) == self.D and all(0 <= c < v for c, v in zip(p, self.n))

    def positions(self) -> Iterator[Position]:
        return itertools.product(*(range(v) for v in self.n))

    def __str__(self) -> str:
        return ",".join(map(str, self.n))


def as_dims(dims) -> Dims:
    return dims if isinstance(dims, Dims) else Dims(dims)


def linear_index(dims: Dims, p: Sequence[int]) -> int:
    """Row-major index: sum of i_j times the product of the later edge lengths."""
    if not dims.contains(p):
        raise IndexError(f"position {tuple(p)} outside array {dims.n}")
    return sum(c * s for c, s in zip(p, dims.strides))


def unindex(dims: Dims, x: int) -> Position:
    if not 0 <= x < dims.N:
        raise IndexError(f"linear index {x} outside 0..{dims.N - 1}")
    out = []
    for s in dims.strides:
        q, x = divmod(x, s)
        out.append(q)
    return tuple(out)


def dim_step(dims: Dims, j: int) -> int:
    """Linear-index increment for one step along dimension j (0-based)."""
    if not 0 <= j < dims.D:
        raise IndexError(f"dimension {j} outside 0..{dims.D - 1}")
    return dims.strides[j]


def unit(D: int, j: int, length: int = 1) -> Position:
    v = [0] * D
    v[j] = length
    return tuple(v)


def add(p: Sequence[int], q: Sequence[int]) -> Position:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Sequence[int], q: Sequence[int]) -> Position:
    return tuple(a - b for a, b in zip(p, q))


def canonical(cells: Iterable[Position]) -> ErrorPattern:
    return tuple(sorted(set(cells)))


# ---------- shapes ----------

class ShapeKind(enum.Enum):
    TWO_BURST = "two-burst"
    THREE_BURST_LINE = "three-burst-line"
    SEMI_CROSS = "semi-cross"
    CROSS = "cross"
    WEIGHT_SEMI_CROSS = "weight-semi-cross"
    WEIGHT_CROSS = "weight-cross"
    WEIGHT_SQUARE = "weight-square"


_WEIGHTED = {ShapeKind.WEIGHT_SEMI_CROSS, ShapeKind.WEIGHT_CROSS, ShapeKind.WEIGHT_SQUARE}


@dataclass(frozen=True)
class ClusterShape:
    kind: ShapeKind
    R: int = 1
    weight: int | None = None

    def __post_init__(self):
        if self.R < 1:
            raise ValueError("arm length R must be >= 1")
        if self.kind in _WEIGHTED and self.weight is None:
            object.__setattr__(self, "weight", 2)
        if self.kind is ShapeKind.WEIGHT_SQUARE and self.R < 2:
            raise ValueError("a square cluster needs edge length R >= 2")

    @classmethod
    def two_burst(cls) -> ClusterShape:
        return cls(ShapeKind.TWO_BURST)

    @classmethod
    def three_burst_line(cls) -> ClusterShape:
        return cls(ShapeKind.THREE_BURST_LINE)

    @classmethod
    def semi_cross(cls, R: int = 1) -> ClusterShape:
        return cls(ShapeKind.SEMI_CROSS, R)

    @classmethod
    def cross(cls, R: int = 1) -> ClusterShape:
        return cls(ShapeKind.CROSS, R)

    @classmethod
    def weight_in_semi_cross(cls, R: int = 1, weight: int = 2) -> ClusterShape:
        return cls(ShapeKind.WEIGHT_SEMI_CROSS, R, weight)

    @classmethod
    def weight_in_cross(cls, R: int = 1, weight: int = 2) -> ClusterShape:
        return cls(ShapeKind.WEIGHT_CROSS, R, weight)

    @classmethod
    def weight_in_square(cls, R: int = 2, weight: int = 2) -> ClusterShape:
        return cls(ShapeKind.WEIGHT_SQUARE, R, weight)

    @property
    def max_weight(self) -> int | None:
        return self.weight if self.kind in _WEIGHTED else None

    def describe(self) -> str:
        params = []
        if self.kind not in (ShapeKind.TWO_BURST, ShapeKind.THREE_BURST_LINE):
            params.append(f"R={self.R}")
        if self.max_weight is not None:
            params.append(f"w={self.weight}")
        return f"{self.kind.value}({','.join(params)})" if params else self.kind.value


def shape_offsets(shape: ClusterShape, D: int) -> tuple[Position, ...]:
    """Offsets of one cluster instance relative to its anchor (the center for crosses).

    Line bursts have one offset set per dimension; use :func:`offset_sets`
    for those.
    """
    zero = (0,) * D
    out = [zero]
    kind = shape.kind
    if kind in (ShapeKind.SEMI_CROSS, ShapeKind.WEIGHT_SEMI_CROSS):
        out += [unit(D, j, ell) for j in range(D) for ell in range(1, shape.R + 1)]
    elif kind in (ShapeKind.CROSS, ShapeKind.WEIGHT_CROSS):
        out += [unit(D, j, s * ell) for j in range(D) for ell in range(1, shape.R + 1) for s in (-1, 1)]
    else:
        raise ValueError(f"{kind.value} has no single offset set; use offset_sets")
    return tuple(sorted(out))


def offset_sets(shape: ClusterShape, D: int) -> list[tuple[Position, ...]]:
    """All offset sets whose translates form the cluster instances of a shape."""
    kind = shape.kind
    if kind is ShapeKind.TWO_BURST:
        return [((0,) * D, unit(D, j)) for j in range(D)]
    if kind is ShapeKind.THREE_BURST_LINE:
        return [((0,) * D, unit(D, j), unit(D, j, 2)) for j in range(D)]
    if kind is ShapeKind.WEIGHT_SQUARE:
        sets = []
        for j, k in itertools.combinations(range(D), 2):
            cells = []
            for a in range(shape.R):
                for b in range(shape.R):
                    v = [0] * D
                    v[j], v[k] = a, b
                    cells.append(tuple(v))
            sets.append(tuple(sorted(cells)))
        return sets
    return [shape_offsets(shape, D)]


def cluster_size(shape: ClusterShape, D: int) -> int:
    """Cells in one instance (B in the coloring method)."""
    return len(offset_sets(shape, D)[0])


def anchors(dims: Dims, offsets: Sequence[Position]) -> Iterator[Position]:
    """Anchors for which every translated offset lies inside the array."""
    lo = [-min(o[j] for o in offsets) for j in range(dims.D)]
    hi = [dims.n[j] - 1 - max(o[j] for o in offsets) for j in range(dims.D)]
    if any(a > b for a, b in zip(lo, hi)):
        return iter(())
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def instances(dims: Dims, shape: ClusterShape) -> Iterator[tuple[Position, ...]]:
    """Every cluster instance that fits entirely inside the array (noncyclic)."""
    for offs in offset_sets(shape, dims.D):
        for a in anchors(dims, offs):
            yield tuple(add(a, o) for o in offs)


def enumerate_patterns(dims, shape: ClusterShape) -> Iterator[ErrorPattern]:
    """Yield each nonempty error pattern of the class exactly once.

    The class is every nonempty subset (of size at most the weight limit,
    if any) of a fully in-bounds cluster instance, plus every single-cell
    error.
    """
    dims = as_dims(dims)
    seen: set[ErrorPattern] = set()
    for p in dims.positions():
        pat = (p,)
        seen.add(pat)
        yield pat
    wmax = shape.max_weight
    for inst in instances(dims, shape):
        top = len(inst) if wmax is None else min(wmax, len(inst))
        for size in range(2, top + 1):
            for sub_ in itertools.combinations(inst, size):
                pat = canonical(sub_)
                if pat not in seen:
                    seen.add(pat)
                    yield pat


def in_class(dims: Dims, shape: ClusterShape, pattern: Sequence[Position]) -> bool:
    """Membership test without enumerating the whole class."""
    pattern = canonical(pattern)
    if not pattern or not all(dims.contains(p) for p in pattern):
        return False
    if len(pattern) == 1:
        return True
    wmax = shape.max_weight
    if wmax is not None and len(pattern) > wmax:
        return False
    cells = set(pattern)
    first = pattern[0]
    for offs in offset_sets(shape, dims.D):
        for o in offs:
            anchor = sub(first, o)
            inst = {add(anchor, q) for q in offs}
            if cells <= inst and all(dims.contains(c) for c in inst):
                return True
    return False


def class_contained(dims, inner: ClusterShape, outer: ClusterShape) -> ErrorPattern | None:
    """Return a pattern of `inner` that is not in `outer`, or None if contained."""
    dims = as_dims(dims)
    for pat in enumerate_patterns(dims, inner):
        if not in_class(dims, outer, pat):
            return pat
    return None
