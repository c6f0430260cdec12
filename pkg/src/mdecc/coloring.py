"""Colorings of a D-dimensional array for the coloring method.

A coloring matrix row s assigns cell i the color sum_k a_sk * i_k, optionally
reduced mod M_s. Each coloring feeds one 1-D component code whose bit j is the
XOR of all cells of color j.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import lattice
from .lattice import ClusterShape, Dims, Position, as_dims

# Arrays up to this many cells keep every color array in memory.
_CACHE_CELLS = 1 << 20


class TheoremRestrictionWarning(UserWarning):
    """A scheme is built outside the parameter range it is known to work for."""


@dataclass(frozen=True)
class ColoringMatrix:
    rows: tuple[tuple[int, ...], ...]
    moduli: tuple[int | None, ...]

    def __post_init__(self):
        D = len(self.rows)
        if D == 0 or any(len(r) != D for r in self.rows):
            raise ValueError("coloring matrix must be square and nonempty")
        if len(self.moduli) != D:
            raise ValueError("need one modulus entry per row")

    @classmethod
    def plain(cls, rows: Sequence[Sequence[int]]) -> ColoringMatrix:
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        return cls(rows, (None,) * len(rows))

    @property
    def D(self) -> int:
        return len(self.rows)

    @property
    def is_plain(self) -> bool:
        return all(m is None for m in self.moduli)

    def determinant(self) -> int:
        """Exact determinant by fraction-valued elimination."""
        a = [[Fraction(v) for v in row] for row in self.rows]
        n = len(a)
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                return 0
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            det *= a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] / a[col][col]
                if f:
                    for c in range(col, n):
                        a[r][c] -= f * a[col][c]
        return int(det)

    def with_moduli(self, moduli: Sequence[int | None]) -> ColoringMatrix:
        return ColoringMatrix(self.rows, tuple(moduli))


def _even_d_guard(D: int, strict: bool) -> None:
    if D % 2:
        msg = f"the semi-cross coloring is only known to work for even D (got D={D})"
        if strict:
            raise ValueError(msg)
        warnings.warn(msg, TheoremRestrictionWarning, stacklevel=3)


def semicross_matrix(D: int, strict: bool = False) -> ColoringMatrix:
    """Row 1 = (1..D); row s >= 2 has k for k < s and k - D - 1 for k >= s."""
    if D < 2:
        raise ValueError("semi-cross coloring needs D >= 2")
    _even_d_guard(D, strict)
    rows = [tuple(range(1, D + 1))]
    for s in range(2, D + 1):
        rows.append(tuple(k if k < s else k - D - 1 for k in range(1, D + 1)))
    return ColoringMatrix.plain(rows)


def semicross_matrix_modular(D: int, n: int, strict: bool = False) -> ColoringMatrix:
    """Same entries as :func:`semicross_matrix`; rows 2..D taken mod n(D+1)."""
    base = semicross_matrix(D, strict)
    return base.with_moduli((None,) + (n * (D + 1),) * (D - 1))


def cross_matrix(D: int, n: int, modular: bool = True) -> ColoringMatrix:
    """a_sk = s*k mod (2s(D-s+1)+1), symmetric representative; rows s >= 2 mod 2s(D-s+1)n."""
    if D < 1:
        raise ValueError("D must be positive")
    rows = []
    moduli: list[int | None] = []
    for s in range(1, D + 1):
        q = 2 * s * (D - s + 1) + 1
        row = []
        for k in range(1, D + 1):
            v = (s * k) % q
            row.append(v - q if v > q // 2 else v)
        rows.append(tuple(row))
        moduli.append(2 * s * (D - s + 1) * n if modular and s >= 2 else None)
    return ColoringMatrix(tuple(rows), tuple(moduli))


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    counterexample: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


class ColoringScheme:
    """A coloring matrix bound to an array and a cluster shape.

    Per coloring s it records the raw color range [lo_s, hi_s], the component
    length eta_s = hi_s - lo_s + 1, the measured span of a cluster's colors
    and the slack delta_s = span_s - B.
    """

    def __init__(self, matrix: ColoringMatrix, shape: ClusterShape, dims):
        self.matrix = matrix
        self.shape = shape
        self.dims: Dims = as_dims(dims)
        if self.dims.D != matrix.D:
            raise ValueError(f"{matrix.D}x{matrix.D} coloring for a {self.dims.D}-dimensional array")
        self.offsets = lattice.shape_offsets(shape, self.dims.D)
        self.B = len(self.offsets)
        self._cache: dict[int, np.ndarray] = {}
        self._p2: CheckResult | None = None
        lo, hi = [], []
        for s in range(matrix.D):
            c = self.raw_colors(s)
            lo.append(int(c.min()))
            hi.append(int(c.max()))
        self.lo = tuple(lo)
        self.hi = tuple(hi)

    @property
    def D(self) -> int:
        return self.matrix.D

    @property
    def eta(self) -> tuple[int, ...]:
        return tuple(h - l + 1 for l, h in zip(self.lo, self.hi))

    def raw_colors(self, s: int) -> np.ndarray:
        """Unshifted colors of every cell for coloring s (0-based), shape dims.n."""
        if s in self._cache:
            return self._cache[s]
        # outer sum grown one axis at a time: a single pass over the full array
        c = np.zeros((), dtype=np.int64)
        for a, n in zip(self.matrix.rows[s], self.dims.n):
            c = np.add.outer(c, a * np.arange(n, dtype=np.int64))
        m = self.matrix.moduli[s]
        if m is not None:
            c %= m
        if self.dims.N <= _CACHE_CELLS:
            self._cache[s] = c
        return c

    def colors(self, s: int) -> np.ndarray:
        """0-based colors of every cell for coloring s."""
        return self.raw_colors(s) - self.lo[s]

    def color_of(self, s: int, p: Sequence[int]) -> int:
        if not self.dims.contains(p):
            raise IndexError(f"position {tuple(p)} outside array")
        v = sum(a * c for a, c in zip(self.matrix.rows[s], p))
        m = self.matrix.moduli[s]
        if m is not None:
            v %= m
        return v - self.lo[s]

    def _cluster_stack(self, s: int) -> np.ndarray:
        """Colors of every fully in-bounds cluster, shape (B, *anchor box)."""
        c = self.raw_colors(s)
        D = self.D
        lo = [-min(o[j] for o in self.offsets) for j in range(D)]
        hi = [self.dims.n[j] - 1 - max(o[j] for o in self.offsets) for j in range(D)]
        if any(a > b for a, b in zip(lo, hi)):
            return np.empty((self.B, 0), dtype=c.dtype)
        views = [
            c[tuple(slice(lo[j] + o[j], hi[j] + o[j] + 1) for j in range(D))] for o in self.offsets
        ]
        return np.stack(views)

    def _anchor_origin(self) -> list[int]:
        return [-min(o[j] for o in self.offsets) for j in range(self.D)]

    @cached_property
    def spans(self) -> tuple[int, ...]:
        out = []
        for s in range(self.D):
            st = self._cluster_stack(s)
            out.append(int((st.max(axis=0) - st.min(axis=0)).max()) + 1 if st.size else self.B)
        return tuple(out)

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(sp - self.B for sp in self.spans)

    def project(self, s: int, array) -> np.ndarray:
        """Component word for coloring s: entry j is the XOR of cells with color j."""
        arr = np.asarray(array, dtype=np.uint8).reshape(self.dims.n)
        hits = self.colors(s)[arr.astype(bool)]
        return (np.bincount(hits, minlength=self.eta[s]) & 1).astype(np.uint8)

    # ----- property checks -----

    def check_p1(self, deltas: Sequence[int] | None = None) -> CheckResult:
        """Distinct colors inside every cluster, spread at most B + delta_s - 1."""
        deltas = self.deltas if deltas is None else tuple(deltas)
        origin = self._anchor_origin()
        for s in range(self.D):
            st = self._cluster_stack(s)
            if not st.size:
                continue
            srt = np.sort(st, axis=0)
            dup = (np.diff(srt, axis=0) == 0).any(axis=0)
            wide = (srt[-1] - srt[0]) > self.B + deltas[s] - 1
            bad = dup | wide
            if bad.any():
                idx = tuple(int(v) for v in np.argwhere(bad)[0])
                anchor = tuple(i + o for i, o in zip(idx, origin))
                why = "repeated color" if dup[idx] else "spread too wide"
                return CheckResult(False, (s, anchor), f"coloring {s + 1}: {why} at cluster {anchor}")
        return CheckResult(True)

    def _color_key(self) -> np.ndarray:
        # any function of the full color tuple works; collisions get an exact recheck
        rng = np.random.default_rng(0x5EED)
        key = np.zeros(self.dims.N, dtype=np.uint64)
        for s in range(self.D):
            w = np.uint64(rng.integers(1, 2**63, dtype=np.uint64) | np.uint64(1))
            key += self.raw_colors(s).reshape(-1).astype(np.uint64) * w
        return key

    def check_p2(self) -> CheckResult:
        """No two cells share the full tuple of D colors (exhaustive)."""
        if self._p2 is None:
            self._p2 = self._scan_p2()
        return self._p2

    def _scan_p2(self) -> CheckResult:
        key = self._color_key()
        order = np.argsort(key, kind="stable")
        sk = key[order]
        same = np.flatnonzero(sk[1:] == sk[:-1])
        # exact recheck inside every run of equal keys
        seen: dict[tuple[int, ...], Position] = {}
        for i in same:
            if i == 0 or sk[i] != sk[i - 1]:
                seen.clear()
            for x in (int(order[i]), int(order[i + 1])):
                p = lattice.unindex(self.dims, x)
                colors = tuple(self.color_of(s, p) for s in range(self.D))
                other = seen.setdefault(colors, p)
                if other != p:
                    return CheckResult(False, (other, p), f"cells {other} and {p} share every color")
        detail = ""
        if self.matrix.is_plain:
            detail = f"det={self.matrix.determinant()}"
        return CheckResult(True, None, detail)

    def p2_determinant_agrees(self) -> bool:
        """For plain schemes: exhaustive p.2 verdict equals (det != 0)."""
        if not self.matrix.is_plain:
            raise ValueError("determinant test only applies to plain colorings")
        return bool(self.check_p2()) == (self.matrix.determinant() != 0)

    def check_p3(self, deltas: Sequence[int] | None = None) -> CheckResult:
        """Cells sharing coloring-1 color have coloring-s colors congruent mod B + delta_s."""
        deltas = self.deltas if deltas is None else tuple(deltas)
        c1 = self.raw_colors(0).reshape(-1)
        order = np.argsort(c1, kind="stable")
        c1s = c1[order]
        starts = np.concatenate(([0], np.flatnonzero(np.diff(c1s)) + 1))
        for s in range(1, self.D):
            q = self.B + deltas[s]
            cs = (self.raw_colors(s).reshape(-1) % q)[order]
            lo = np.minimum.reduceat(cs, starts)
            hi = np.maximum.reduceat(cs, starts)
            bad = np.flatnonzero(lo != hi)
            if bad.size:
                g = int(bad[0])
                end = starts[g + 1] if g + 1 < len(starts) else len(order)
                members = order[starts[g]:end]
                vals = self.raw_colors(s).reshape(-1)
                first = int(members[0])
                other = int(next(x for x in members if (vals[x] - vals[first]) % q))
                pa, pb = lattice.unindex(self.dims, first), lattice.unindex(self.dims, other)
                return CheckResult(False, (s, pa, pb), f"coloring {s + 1}: {pa} and {pb} not congruent mod {q}")
        return CheckResult(True)


def semicross_scheme(D: int, n: int, modular: bool = False, strict: bool = False) -> ColoringScheme:
    matrix = semicross_matrix_modular(D, n, strict) if modular else semicross_matrix(D, strict)
    return ColoringScheme(matrix, ClusterShape.semi_cross(1), (n,) * D)


def cross_scheme(D: int, n: int, modular: bool = True) -> ColoringScheme:
    return ColoringScheme(cross_matrix(D, n, modular), ClusterShape.cross(1), (n,) * D)


def brute_force_p2(scheme: ColoringScheme) -> CheckResult:
    """Dictionary-based p.2 check, independent of the hashing path."""
    seen: dict[tuple[int, ...], Position] = {}
    for p in scheme.dims.positions():
        key = tuple(scheme.color_of(s, p) for s in range(scheme.D))
        if key in seen:
            return CheckResult(False, (seen[key], p))
        seen[key] = p
    return CheckResult(True)


def brute_force_p1(scheme: ColoringScheme) -> CheckResult:
    """Per-cluster loop over instances, independent of the array-slicing path."""
    for offs in lattice.offset_sets(scheme.shape, scheme.D):
        for a in lattice.anchors(scheme.dims, offs):
            for s in range(scheme.D):
                cols = [scheme.color_of(s, lattice.add(a, o)) for o in offs]
                if len(set(cols)) != len(cols) or max(cols) - min(cols) > scheme.spans[s] - 1:
                    return CheckResult(False, (s, a))
    return CheckResult(True)

