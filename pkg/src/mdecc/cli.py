"""mdecc command line: build, export-h, verify, redundancy-table, inject, decode.

Exit codes: 0 ok, 1 usage or build error, 2 uncorrectable input, 3 verification failures.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import formats, lattice
from .coloring import TheoremRestrictionWarning
from .constructions import CONSTRUCTIONS, UncorrectableError
from .lattice import Dims
from .pipeline import Encoder, redundancy_report
from .verify import default_jobs, sample_patterns, verify_code

EXIT_OK, EXIT_USAGE, EXIT_UNCORRECTABLE, EXIT_VERIFY = 0, 1, 2, 3
CONSTRUCTION_TAGS = sorted(CONSTRUCTIONS) + sorted(formats.COLORING_KINDS)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; expected n1,n2,...") from None


def parse_range(text: str) -> list[int]:
    """'2-4' or '3,5' or '4'."""
    out: list[int] = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    return out


def parse_pattern(text: str) -> lattice.ErrorPattern:
    """'0,1;0,2' -> ((0, 1), (0, 2))."""
    cells = [tuple(int(v) for v in c.split(",")) for c in text.split(";") if c.strip()]
    return lattice.canonical(cells)


def seed_arg(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _add_config_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--construction", choices=CONSTRUCTION_TAGS, required=required)
    p.add_argument("--dims", type=parse_dims, required=required)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--m", type=int, help="field degree for constructions A-E")
    g.add_argument("--auto-m", action="store_true", help="smallest m with 2^m - 1 >= N (default)")
    p.add_argument("--R", type=int, default=None, help="semi-cross radius (construction D)")
    p.add_argument("--modular", action="store_true", help="modular coloring rows")
    p.add_argument("--strict", action="store_true", help="reject parameters outside the proven range")


def _config_from_args(args) -> dict:
    cfg = {"construction": args.construction, "dims": list(args.dims)}
    if args.construction in formats.COLORING_KINDS:
        cfg["modular"] = args.modular
        cfg["strict"] = args.strict
    else:
        cfg["m"] = args.m
        if args.construction == "D":
            cfg["R"] = args.R if args.R is not None else 1
    return cfg


def _build(cfg: dict):
    try:
        Dims(cfg["dims"])
        with warnings.catch_warnings():
            warnings.simplefilter("always", TheoremRestrictionWarning)
            return formats.build_from_config(cfg)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc


def _code_from_args(args):
    if getattr(args, "code", None):
        try:
            return formats.load_code(args.code)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load {args.code}: {exc}") from exc
    if args.construction is None or args.dims is None:
        raise UsageError("give --code FILE or --construction and --dims")
    return _build(_config_from_args(args))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_array(path: str) -> np.ndarray:
    try:
        return formats.read_array(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read array {path}: {exc}") from exc


def _array_text(arr: np.ndarray) -> str:
    buf = io.StringIO()
    formats.write_array(arr, buf)
    return buf.getvalue()


# ---------- subcommands ----------

def cmd_build(args) -> int:
    code = _build(_config_from_args(args))
    _emit(json.dumps(formats.describe(code), indent=2) + "\n", args.out)
    if args.export_h:
        with open(args.export_h, "w") as fh:
            formats.export_h(code, fh)
    return EXIT_OK


def cmd_export_h(args) -> int:
    code = _code_from_args(args)
    buf = io.StringIO()
    formats.export_h(code, buf)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    code = _code_from_args(args)
    patterns = None if args.exhaustive else sample_patterns(code, args.samples, args.seed)
    report = verify_code(code, patterns, jobs=args.jobs, seed=args.seed)
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


TABLE_COLUMNS = (
    "construction", "dims", "m", "R", "r", "log_n", "excess", "structural_excess",
    "lower_bound", "bound", "bound_value", "holds", "slack", "flags",
)


def table_rows(constructions, D_values, n_values, R: int = 1, rank: bool = False):
    for tag in constructions:
        for D in D_values:
            for n in n_values:
                cfg = {"construction": tag, "dims": [n] * D}
                if tag == "D":
                    cfg["R"] = R
                try:
                    with warnings.catch_warnings():
                        warnings.simplefilter("ignore", TheoremRestrictionWarning)
                        code = formats.build_from_config(cfg)
                except ValueError as exc:
                    print(f"skip {tag} D={D} n={n}: {exc}", file=sys.stderr)
                    continue
                size = sum(1 for _ in lattice.enumerate_patterns(code.dims, code.shape))
                rep = redundancy_report(code, class_size=size, rank=Encoder(code).rank if rank else None)
                lower = rep.get("lower_bound", rep["counting_lower_bound"])
                base = {
                    "construction": tag,
                    "dims": ",".join(map(str, code.dims.n)),
                    "m": rep.get("m", ""),
                    "R": cfg.get("R", ""),
                    "r": rep["r"],
                    "log_n": rep["log_n"],
                    "excess": rep["excess"],
                    "structural_excess": rep.get("structural_excess", ""),
                    "lower_bound": lower,
                    "flags": "; ".join(rep["flags"]),
                }
                for b in rep["bounds"] or [None]:
                    row = dict(base)
                    if b is None:
                        row.update(bound="", bound_value="", holds="", slack="")
                    else:
                        row.update(bound=b["name"], bound_value=b["value"], holds=str(b["holds"]).lower(),
                                   slack=b["value"] - b["observed"])
                    yield row


def cmd_redundancy_table(args) -> int:
    tags = args.constructions.split(",")
    bad = [t for t in tags if t not in CONSTRUCTION_TAGS]
    if bad:
        raise UsageError(f"unknown construction(s): {', '.join(bad)}")
    try:
        D_values, n_values = parse_range(args.D), parse_range(args.n)
    except ValueError as exc:
        raise UsageError(f"bad range: {exc}") from exc
    lines = ["\t".join(TABLE_COLUMNS)]
    for row in table_rows(tags, D_values, n_values, R=args.R, rank=args.rank):
        lines.append("\t".join(str(row[c]) for c in TABLE_COLUMNS))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_inject(args) -> int:
    code = _code_from_args(args)
    if args.array:
        arr = _read_array(args.array)
        if arr.shape != code.dims.n:
            raise UsageError(f"array dims {arr.shape} do not match code dims {code.dims.n}")
    else:
        arr = np.zeros(code.dims.n, dtype=np.uint8)
    if args.pattern:
        try:
            pattern = parse_pattern(args.pattern)
        except ValueError as exc:
            raise UsageError(f"bad pattern {args.pattern!r}") from exc
        if not all(code.dims.contains(p) for p in pattern):
            raise UsageError("pattern leaves the array")
    else:
        pattern = sample_patterns(code, 1, args.seed)[0]
    arr = arr.copy()
    for p in pattern:
        arr[p] ^= 1
    _emit(_array_text(arr), args.out)
    print(json.dumps({"pattern": [list(p) for p in pattern]}), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = _code_from_args(args)
    arr = _read_array(args.array)
    if arr.shape != code.dims.n:
        raise UsageError(f"array dims {arr.shape} do not match code dims {code.dims.n}")
    try:
        pattern, fixed = code.decode_array(arr)
    except UncorrectableError as exc:
        print(json.dumps({"status": "uncorrectable", "detail": str(exc)}))
        return EXIT_UNCORRECTABLE
    status = "corrected" if pattern else "no-error"
    print(json.dumps({"status": status, "pattern": [list(p) for p in pattern]}))
    if args.out:
        Path(args.out).write_text(_array_text(fixed))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mdecc", description="Multidimensional cluster-error-correcting array codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="write a JSON code descriptor")
    _add_config_args(p)
    p.add_argument("--out", help="descriptor path (default stdout)")
    p.add_argument("--export-h", dest="export_h", help="also write the parity-check export here")
    p.set_defaults(func=cmd_build)

    def with_code(p):
        p.add_argument("--code", help="descriptor written by 'mdecc build'")
        _add_config_args(p, required=False)

    p = sub.add_parser("export-h", help="write the parity-check columns")
    with_code(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_h)

    p = sub.add_parser("verify", help="decode every correctable pattern")
    with_code(p)
    p.add_argument("--exhaustive", action="store_true", help="whole class (default: --samples random patterns)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=seed_arg, default=0)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--out", help="report path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("redundancy-table", help="TSV of redundancy against bounds")
    p.add_argument("--constructions", default="A,B,C,D,E")
    p.add_argument("--D", default="2-3", help="dimension range, e.g. 2-4 or 2,4")
    p.add_argument("--n", default="4", help="side length range")
    p.add_argument("--R", type=int, default=1)
    p.add_argument("--rank", action="store_true", help="also compare the GF(2) rank")
    p.add_argument("--out")
    p.set_defaults(func=cmd_redundancy_table)

    p = sub.add_parser("inject", help="flip a correctable pattern in an array")
    with_code(p)
    p.add_argument("--array", help="input array file (default all-zero)")
    p.add_argument("--pattern", help="cells like '0,1;0,2'")
    p.add_argument("--seed", type=seed_arg, default=0, help="sample a pattern when --pattern is absent")
    p.add_argument("--out", help="output array path (default stdout)")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("decode", help="correct an array file")
    with_code(p)
    p.add_argument("array")
    p.add_argument("--out", help="write the corrected array here")
    p.set_defaults(func=cmd_decode)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mdecc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
