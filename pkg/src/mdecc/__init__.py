"""Multidimensional cluster-error-correcting array codes over GF(2)."""
from .constructions import (
    AmbiguousDecodeError,
    ArrayCode,
    ConstructionA,
    ConstructionB,
    ConstructionC,
    ConstructionD,
    ConstructionE,
    TableDecoder,
    UncorrectableError,
    build_construction,
)
from .fire import FireCode, build_fire
from .gf2 import FieldCtx, field_new
from .lattice import ClusterShape, Dims, ShapeKind, enumerate_patterns
from .pipeline import ColoringCode, Encoder, build_coloring_code, coloring_decode, redundancy_report
from .verify import VerifyReport, verify_code

__all__ = [
    "AmbiguousDecodeError", "ArrayCode", "ClusterShape", "ColoringCode", "ConstructionA",
    "ConstructionB", "ConstructionC", "ConstructionD", "ConstructionE", "Dims", "Encoder",
    "FieldCtx", "FireCode", "ShapeKind", "TableDecoder", "UncorrectableError", "VerifyReport",
    "build_coloring_code", "build_construction", "build_fire", "coloring_decode",
    "enumerate_patterns", "field_new", "redundancy_report", "verify_code",
]
__version__ = "0.1.0"
