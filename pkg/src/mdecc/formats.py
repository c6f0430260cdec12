"""On-disk formats: code descriptors (JSON), parity-check exports, array files.

Array file::

    dims 4,4
    0100
    0000
    ...

Bits are row-major; whitespace and line breaks between bits are ignored.

Parity-check export: '#' header lines, then one line per linear index,
``<index> <hex>``, where hex digit k holds column bits 4k..4k+3 (LSB-first
nibble order).
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .constructions import ArrayCode, FoldedCode, build_construction
from .lattice import Dims
from .pipeline import ColoringCode, build_coloring_code

DESCRIPTOR_FORMAT = "mdecc-code/1"
COLORING_KINDS = {"coloring-semicross": "semicross", "coloring-cross": "cross"}


def build_from_config(config: dict) -> ArrayCode:
    tag = config["construction"]
    dims = Dims(config["dims"])
    if tag in COLORING_KINDS:
        return build_coloring_code(
            COLORING_KINDS[tag],
            dims,
            modular=bool(config.get("modular", False)),
            strict=bool(config.get("strict", False)),
        )
    return build_construction(tag, dims, config.get("m"), config.get("R"))


def describe(code: ArrayCode) -> dict:
    desc = {
        "format": DESCRIPTOR_FORMAT,
        "config": code.config(),
        "name": code.name,
        "shape": code.shape.describe(),
        "r": code.r,
        "segments": [{"name": s.name, "offset": s.offset, "width": s.width} for s in code.segments],
    }
    if isinstance(code, FoldedCode):
        desc["primitive_poly"] = f"{code.gf.primitive_poly:#x}"
    if isinstance(code, ColoringCode):
        desc["components"] = [
            {"coloring": c.coloring + 1, "b": c.code.b, "p_degree": c.code.p_degree, "n": c.code.n,
             "generator": f"{c.code.g:#x}", "redundancy": c.code.redundancy}
            for c in code.components
        ]
        desc["coloring_matrix"] = [list(r) for r in code.scheme.matrix.rows]
        desc["moduli"] = list(code.scheme.matrix.moduli)
    return desc


def write_descriptor(code: ArrayCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(describe(code), indent=2) + "\n")


def load_code(source: str | Path | dict) -> ArrayCode:
    desc = source if isinstance(source, dict) else json.loads(Path(source).read_text())
    if desc.get("format") != DESCRIPTOR_FORMAT:
        raise ValueError(f"not a {DESCRIPTOR_FORMAT} descriptor")
    return build_from_config(desc["config"])


# ---------- parity-check export ----------

def column_hex(col: int, r: int) -> str:
    digits = (r + 3) // 4
    return "".join(f"{(col >> (4 * k)) & 0xF:x}" for k in range(digits))


def hex_column(text: str) -> int:
    return sum(int(ch, 16) << (4 * k) for k, ch in enumerate(text))


def export_h(code: ArrayCode, out: TextIO) -> None:
    out.write(f"# construction {code.construction}\n")
    out.write(f"# dims {code.dims}\n")
    if isinstance(code, FoldedCode):
        out.write(f"# m {code.m}\n")
        out.write(f"# primitive_poly {code.gf.primitive_poly:#x}\n")
    if isinstance(code, ColoringCode):
        gens = ",".join(f"{c.code.g:#x}" for c in code.components)
        out.write(f"# generators {gens}\n")
    out.write(f"# r {code.r}\n")
    segs = ",".join(f"{s.name}:{s.offset}+{s.width}" for s in code.segments)
    out.write(f"# segments {segs}\n")
    for x, col in enumerate(code.columns):
        out.write(f"{x} {column_hex(col, code.r)}\n")


def import_h(lines: Iterable[str]) -> tuple[dict[str, str], list[int]]:
    header: dict[str, str] = {}
    cols: list[int] = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(" ")
            header[key] = value
            continue
        idx, hexcol = line.split()
        if int(idx) != len(cols):
            raise ValueError(f"expected column {len(cols)}, found {idx}")
        cols.append(hex_column(hexcol))
    return header, cols


# ---------- arrays ----------

def write_array(array: np.ndarray, out: TextIO) -> None:
    arr = np.asarray(array, dtype=np.uint8)
    out.write(f"dims {','.join(map(str, arr.shape))}\n")
    width = arr.shape[-1]
    flat = arr.reshape(-1)
    for start in range(0, flat.size, width):
        out.write("".join(str(int(b)) for b in flat[start:start + width]) + "\n")


def read_array(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("dims "):
        raise ValueError("array file must start with 'dims n1,...,nD'")
    dims = Dims(int(v) for v in lines[0][5:].split(","))
    bits = [ch for ch in "".join(lines[1:]) if not ch.isspace()]
    if any(ch not in "01" for ch in bits):
        raise ValueError("array body may only contain 0 and 1")
    if len(bits) != dims.N:
        raise ValueError(f"array body has {len(bits)} bits, dims need {dims.N}")
    return np.array([int(ch) for ch in bits], dtype=np.uint8).reshape(dims.n)
