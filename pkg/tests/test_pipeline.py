import numpy as np
import pytest

from mdecc import lattice
from mdecc.constructions import ConstructionA, ConstructionB, ConstructionD, TableDecoder, UncorrectableError
from mdecc.gf2 import poly_mod
from mdecc.pipeline import (
    Encoder,
    assemble_coloring_code,
    build_coloring_code,
    coloring_decode,
    encode,
    redundancy_report,
)
from mdecc.coloring import ColoringMatrix, ColoringScheme, semicross_scheme
from mdecc.lattice import ClusterShape


@pytest.fixture(scope="module", params=[("semicross", 2, 4), ("cross", 2, 3), ("semicross", 4, 2)], ids=str)
def ccode(request):
    kind, D, n = request.param
    return build_coloring_code(kind, (n,) * D)


def test_components_sized_from_measured_spans(ccode):
    sch = ccode.scheme
    for s, comp in enumerate(ccode.components):
        assert comp.code.b == sch.B + sch.deltas[s]
        assert comp.code.n == sch.eta[s]
    assert ccode.r == sum(c.code.redundancy for c in ccode.components)


def test_columns_are_shifted_monomials(ccode):
    for p in ccode.dims.positions():
        col = ccode.column(p)
        for s, comp in enumerate(ccode.components):
            seg = ccode.segments[s].extract(col)
            assert seg == poly_mod(1 << ccode.scheme.color_of(s, p), comp.code.g)


def test_every_pattern_decodes_from_received_array(ccode):
    enc = Encoder(ccode)
    rng = np.random.default_rng(2)
    cw = enc.encode(rng.integers(0, 2, enc.k))
    for pat in lattice.enumerate_patterns(ccode.dims, ccode.shape):
        rx = cw.copy()
        for c in pat:
            rx[c] ^= 1
        assert coloring_decode(ccode, rx) == pat
        assert ccode.decode(ccode.syndrome(pat)) == pat


def test_decoder_agrees_with_table(ccode):
    table = TableDecoder(ccode)
    assert table.injective
    for s, pat in table.table.items():
        assert ccode.decode(s) == pat


def test_clean_array_and_single_cell(ccode):
    zero = np.zeros(ccode.dims.n, dtype=np.uint8)
    assert coloring_decode(ccode, zero) == ()
    corner = (ccode.dims.n[0] - 1,) * ccode.dims.D
    zero[corner] = 1
    assert coloring_decode(ccode, zero) == (corner,)


def test_assemble_rejects_failing_scheme():
    sch = ColoringScheme(ColoringMatrix.plain([(1, 2), (2, 4)]), ClusterShape.semi_cross(1), (4, 4))
    with pytest.raises(ValueError):
        assemble_coloring_code(sch)


def test_coloring_codes_need_cubes():
    with pytest.raises(ValueError):
        build_coloring_code("semicross", (3, 4))
    with pytest.raises(ValueError):
        build_coloring_code("hexagon", (3, 3))


def test_uncorrectable_two_clusters():
    code = build_coloring_code("semicross", (5, 5))
    rx = np.zeros((5, 5), dtype=np.uint8)
    rx[0, 0] = rx[0, 1] = rx[3, 3] = rx[4, 3] = 1
    with pytest.raises(UncorrectableError):
        coloring_decode(code, rx)


@pytest.mark.parametrize(
    "code",
    [ConstructionA((4, 4)), ConstructionB((3, 5)), ConstructionD((5, 5), R=1), build_coloring_code("cross", (3, 3))],
    ids=["A", "B", "D", "cross"],
)
def test_encoder(code):
    enc = Encoder(code)
    assert enc.rank + enc.k == code.dims.N
    assert enc.rank <= code.r
    assert not encode(enc, np.zeros(enc.k, dtype=np.uint8)).any()
    rng = np.random.default_rng(9)
    for _ in range(20):
        info = rng.integers(0, 2, enc.k)
        word = enc.encode(info)
        assert code.syndrome_of_array(word) == 0
        assert np.array_equal(word, enc.encode(info))
        flat = word.reshape(-1)
        assert np.array_equal(flat[list(enc.info_positions)], info)
    with pytest.raises(ValueError):
        enc.encode(np.zeros(enc.k + 1))


def test_parity_columns_independent():
    code = ConstructionB((4, 4))
    enc = Encoder(code)
    cols = [code.columns[x] for x in enc.parity_positions]
    basis = []
    for c in cols:
        for b in basis:
            c = min(c, c ^ b)
        assert c
        basis.append(c)


def test_report_construction_a():
    code = ConstructionA((4, 4, 4), 6)
    rep = redundancy_report(code, class_size=208)
    assert rep["r"] == 9 and rep["lower_bound"] == 9 and rep["log_n"] == 6
    assert rep["excess"] == 3 and rep["structural_excess"] == 3
    assert rep["counting_lower_bound"] == 8
    assert all(b["holds"] for b in rep["bounds"])


def test_report_flags_d_discrepancy():
    rep = redundancy_report(ConstructionD((8, 8), R=2))
    assert rep["construction_excess"] == 17 and rep["claimed_excess"] == 13
    assert rep["excess_discrepancy"] and any("17" in f and "13" in f for f in rep["flags"])


def test_report_coloring_bounds_listed():
    code = build_coloring_code("semicross", (3, 3, 3, 3))
    rep = redundancy_report(code, rank=Encoder(code).rank)
    names = [b["name"] for b in rep["bounds"]]
    assert names == ["semicross-fire-bound", "semicross-fire-bound-rank"]
    assert rep["bounds"][0]["value"] == 7 + 32 + 12 + 4
