"""Coloring-method codes, systematic encoding and redundancy accounting."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import lattice
from .coloring import ColoringScheme, cross_scheme, semicross_scheme
from .constructions import (
    ArrayCode,
    ConstructionA,
    ConstructionB,
    ConstructionC,
    ConstructionD,
    ConstructionE,
    FoldedCode,
    UncorrectableError,
    AmbiguousDecodeError,
    ceil_log2,
    layout,
)
from .fire import BurstUncorrectable, ComponentRole, FireCode, build_fire, fire_syndrome, word_to_int
from .gf2 import poly_mod
from .lattice import ErrorPattern, Position


@dataclass(frozen=True)
class ComponentCodeSpec:
    code: FireCode
    coloring: int
    target_b: int
    role: ComponentRole = ComponentRole.BURST_CORRECTING

    def __post_init__(self):
        if self.code.b < self.target_b:
            raise ValueError(f"component corrects {self.code.b}-bursts, needs {self.target_b}")


class ColoringCode(ArrayCode):
    """D-dimensional code checked by D Fire component codes, one per coloring.

    A cell of color j under coloring s contributes x^j mod g_s to component
    segment s, so the syndrome of an array is the concatenation of its
    component syndromes.
    """

    def __init__(self, scheme: ColoringScheme, kind: str = "semicross"):
        p1 = scheme.check_p1()
        if not p1:
            raise ValueError(f"coloring fails p.1: {p1.detail}")
        p2 = scheme.check_p2()
        if not p2:
            raise ValueError(f"coloring fails p.2: {p2.detail}")
        self.scheme = scheme
        self.kind = kind
        self.construction = f"coloring-{kind}"
        self.dims = scheme.dims
        self.shape = scheme.shape
        comps = []
        for s in range(scheme.D):
            b = scheme.B + scheme.deltas[s]
            comps.append(ComponentCodeSpec(build_fire(b, scheme.eta[s]), s, b))
        self.components = tuple(comps)
        self.segments = layout(*((f"component{s + 1}", c.code.redundancy) for s, c in enumerate(comps)))

    def config(self) -> dict:
        return {
            **super().config(),
            "modular": not self.scheme.matrix.is_plain,
        }

    @cached_property
    def _color_arrays(self) -> list[np.ndarray]:
        return [self.scheme.colors(s).reshape(-1) for s in range(self.scheme.D)]

    @cached_property
    def _power_tables(self) -> list[list[int]]:
        # x^c mod g_s for every color c of coloring s
        out = []
        for comp, eta in zip(self.components, self.scheme.eta):
            g = comp.code.g
            out.append([poly_mod(1 << c, g) for c in range(eta)])
        return out

    @cached_property
    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.dims.N
        for seg, table, colors in zip(self.segments, self._power_tables, self._color_arrays):
            for x, c in enumerate(colors.tolist()):
                cols[x] |= table[c] << seg.offset
        return tuple(cols)

    def _column(self, p: Position) -> int:
        return self.columns[lattice.linear_index(self.dims, p)]

    def component_syndromes(self, s: int) -> list[int]:
        return [seg.extract(s) for seg in self.segments]

    def decode(self, s: int) -> ErrorPattern:
        if s == 0:
            return ()
        return self._locate(self.component_syndromes(s))

    def _locate(self, comp_syndromes: Sequence[int]) -> ErrorPattern:
        bursts = []
        for comp, cs in zip(self.components, comp_syndromes):
            try:
                hit = comp.code.decode(cs)
            except BurstUncorrectable as exc:
                raise UncorrectableError(f"component {comp.coloring + 1}: {exc}") from None
            if hit is None:
                raise UncorrectableError(f"component {comp.coloring + 1} sees no error while others do")
            bursts.append(hit[1] << hit[0])
        return self._match(bursts)

    def _candidates(self, bursts: Sequence[int]) -> list[Position]:
        mask = np.ones(self.dims.N, dtype=bool)
        for vec, colors in zip(bursts, self._color_arrays):
            erroneous = [j for j in range(vec.bit_length()) if vec >> j & 1]
            mask &= np.isin(colors, erroneous)
        return [lattice.unindex(self.dims, int(x)) for x in np.flatnonzero(mask)]

    def _projection(self, cells: Sequence[Position]) -> list[int]:
        out = []
        for s in range(self.scheme.D):
            v = 0
            for c in cells:
                v ^= 1 << self.scheme.color_of(s, c)
            out.append(v)
        return out

    def _match(self, bursts: Sequence[int]) -> ErrorPattern:
        """Find the cluster subset whose projections equal the decoded bursts.

        Colors inside one cluster are distinct, so the subset size equals the
        weight of every burst vector.
        """
        weight = bin(bursts[0]).count("1")
        if any(bin(v).count("1") != weight for v in bursts):
            raise UncorrectableError("component bursts disagree on the error weight")
        cand = self._candidates(bursts)
        cand_set = set(cand)
        target = list(bursts)
        found: set[ErrorPattern] = set()
        if weight == 1:
            for c in cand:
                if self._projection([c]) == target:
                    found.add((c,))
        else:
            seen_anchor: set[Position] = set()
            offsets = self.scheme.offsets
            for c in cand:
                for o in offsets:
                    anchor = lattice.sub(c, o)
                    if anchor in seen_anchor:
                        continue
                    seen_anchor.add(anchor)
                    inst = [lattice.add(anchor, q) for q in offsets]
                    if not all(self.dims.contains(q) for q in inst):
                        continue
                    pool = [q for q in inst if q in cand_set]
                    for sub in itertools.combinations(pool, weight):
                        if self._projection(sub) == target:
                            found.add(lattice.canonical(sub))
        if not found:
            raise UncorrectableError("no cluster subset reproduces the component bursts")
        if len(found) > 1:
            raise AmbiguousDecodeError(f"component bursts fit {sorted(found)}")
        return found.pop()

    @property
    def component_redundancy(self) -> int:
        return sum(c.code.redundancy for c in self.components)


def assemble_coloring_code(scheme: ColoringScheme, kind: str | None = None) -> ColoringCode:
    if kind is None:
        kind = "cross" if scheme.shape.kind is lattice.ShapeKind.CROSS else "semicross"
    return ColoringCode(scheme, kind)


def build_coloring_code(kind: str, dims, modular: bool = False, strict: bool = False) -> ColoringCode:
    dims = lattice.as_dims(dims)
    n = dims.n[0]
    if any(v != n for v in dims.n):
        raise ValueError(f"coloring codes need a cube, got {dims.n}")
    if kind == "semicross":
        scheme = semicross_scheme(dims.D, n, modular=modular, strict=strict)
    elif kind == "cross":
        scheme = cross_scheme(dims.D, n, modular=modular)
    else:
        raise ValueError(f"unknown coloring kind {kind!r}")
    return ColoringCode(scheme, kind)


def coloring_decode(code: ColoringCode, received) -> ErrorPattern:
    """Decode by projecting the received array onto every component code."""
    arr = np.asarray(received, dtype=np.uint8).reshape(code.dims.n)
    syns = [
        fire_syndrome(comp.code, word_to_int(code.scheme.project(comp.coloring, arr)))
        for comp in code.components
    ]
    if not any(syns):
        return ()
    return code._locate(syns)


# ---------- encoding ----------

class Encoder:
    """Systematic encoder from the check columns of any array code.

    Parity positions are chosen greedily in linear-index order, keeping each
    cell whose column is independent of those already kept.
    """

    def __init__(self, code: ArrayCode):
        self.code = code
        basis: dict[int, tuple[int, int]] = {}
        parity: list[int] = []
        for x, col in enumerate(code.columns):
            v, mask = self._reduce(basis, col)
            if v:
                basis[v.bit_length() - 1] = (v, mask | 1 << len(parity))
                parity.append(x)
        self._basis = basis
        self.parity_positions = tuple(parity)
        parity_set = set(parity)
        self.info_positions = tuple(x for x in range(code.dims.N) if x not in parity_set)

    @staticmethod
    def _reduce(basis: dict[int, tuple[int, int]], v: int) -> tuple[int, int]:
        mask = 0
        while v:
            top = v.bit_length() - 1
            entry = basis.get(top)
            if entry is None:
                break
            v ^= entry[0]
            mask ^= entry[1]
        return v, mask

    @property
    def rank(self) -> int:
        return len(self.parity_positions)

    @property
    def k(self) -> int:
        return self.code.dims.N - self.rank

    def encode(self, info_bits: Sequence[int]) -> np.ndarray:
        bits = np.asarray(info_bits, dtype=np.uint8).reshape(-1)
        if bits.size != self.k:
            raise ValueError(f"expected {self.k} information bits, got {bits.size}")
        flat = np.zeros(self.code.dims.N, dtype=np.uint8)
        cols = self.code.columns
        s = 0
        for x, bit in zip(self.info_positions, bits.tolist()):
            if bit & 1:
                flat[x] = 1
                s ^= cols[x]
        rest, mask = self._reduce(self._basis, s)
        if rest:
            raise RuntimeError("information syndrome outside the parity span")
        for i, x in enumerate(self.parity_positions):
            if mask >> i & 1:
                flat[x] = 1
        return flat.reshape(self.code.dims.n)


def encode(encoder: Encoder, info_bits: Sequence[int]) -> np.ndarray:
    return encoder.encode(info_bits)


# ---------- redundancy accounting ----------

def _bound(name: str, value: int, observed: int, holds: bool, detail: str = "") -> dict:
    """`value` is the bound, `observed` the quantity compared against it."""
    return {"name": name, "value": value, "observed": observed, "holds": bool(holds), "detail": detail}


def redundancy_report(code: ArrayCode, class_size: int | None = None, rank: int | None = None) -> dict:
    """Redundancy against the counting lower bound and the construction's claimed bound.

    `class_size` (nonempty correctable patterns) adds the exact counting bound
    ceil(log2(class_size + 1)); `rank` is the GF(2) rank of the check columns.
    """
    dims = code.dims
    D, N = dims.D, dims.N
    r = code.r
    log_n = ceil_log2(N)
    rep: dict = {
        "code": code.name,
        "construction": code.construction,
        "dims": list(dims.n),
        "D": D,
        "N": N,
        "r": r,
        "log_n": log_n,
        "excess": r - log_n,
        "flags": [],
    }
    if rank is not None:
        rep["rank"] = rank
    if class_size is not None:
        rep["class_size"] = class_size
        rep["events"] = class_size + 1
        rep["counting_lower_bound"] = ceil_log2(class_size + 1)
    if isinstance(code, FoldedCode):
        rep["m"] = code.m
        rep["structural_excess"] = r - code.m
    bounds = []
    if isinstance(code, ConstructionA):
        lb = ceil_log2((D + 2) * N)
        rep["lower_bound"] = lb
        bounds.append(_bound("within-two-of-lower-bound", lb + 2, r, r - lb <= 2, f"r - {lb} = {r - lb}"))
    elif isinstance(code, ConstructionB):
        lb = ceil_log2((3 * D + 2) * N)
        rep["lower_bound"] = lb
        exact = 2 * ceil_log2(D + 1) + 2
        cap = 2 * ceil_log2(3 * D + 2)
        se = r - code.m
        bounds.append(_bound("excess-equals-2L+2", exact, se, se == exact, f"r - m = {se}"))
        bounds.append(_bound("excess-at-most-twice-lower", cap, se, se <= cap, f"r - m = {se}"))
    elif isinstance(code, ConstructionC):
        per_cell = 2 + D + D * (D - 1) // 2
        lb = ceil_log2(per_cell * N)
        rep["lower_bound"] = lb
        rep["nominal_r"] = code.nominal_r
        if code.bch_enlarged:
            rep["flags"].append(
                f"bch-field-enlarged: 2^{code.d}-1 < D={D}, BCH segment uses 2*{code.bch.degree} bits "
                f"(r={r}, nominal r={code.nominal_r})"
            )
        bounds.append(_bound("within-two-of-lower-bound", lb + 2, r, r - lb <= 2, f"r - {lb} = {r - lb}"))
        bounds.append(
            _bound("nominal-within-two", lb + 2, code.nominal_r, code.nominal_r - lb <= 2, f"nominal r - {lb} = {code.nominal_r - lb}")
        )
    elif isinstance(code, ConstructionD):
        rep["t"] = code.t
        rep["construction_excess"] = code.construction_excess
        rep["claimed_excess"] = code.claimed_excess
        rep["excess_discrepancy"] = code.construction_excess != code.claimed_excess
        if rep["excess_discrepancy"]:
            rep["flags"].append(
                f"excess-discrepancy: m+4t+1 gives {code.construction_excess}, "
                f"4*ceil(log2(DR))+5 gives {code.claimed_excess}"
            )
        bounds.append(_bound("formula-m+4t+1", code.m + 4 * code.t + 1, r, r == code.m + 4 * code.t + 1))
    elif isinstance(code, ConstructionE):
        rep["t"] = code.t
        bounds.append(_bound("formula-m+4t+2", code.m + 4 * code.t + 2, r, r == code.m + 4 * code.t + 2))
    elif isinstance(code, ColoringCode):
        rep["component_redundancy"] = [c.code.redundancy for c in code.components]
        rep["component_b"] = [c.code.b for c in code.components]
        rep["component_length"] = [c.code.n for c in code.components]
        if code.kind == "semicross":
            cap = log_n + 2 * D * D + D * ceil_log2(D + 1) + D
            name = "semicross-fire-bound"
        else:
            cap = log_n + 2 * D * D + 2 * D * ceil_log2(D)
            name = "cross-fire-bound"
        bounds.append(_bound(name, cap, r, r <= cap, f"sum of component redundancies {r}"))
        if rank is not None:
            bounds.append(_bound(f"{name}-rank", cap, rank, rank <= cap, f"GF(2) rank {rank}"))
    rep["bounds"] = bounds
    return rep
