import json

import pytest

from mdecc.constructions import ConstructionA, ConstructionE
from mdecc.pipeline import build_coloring_code
from mdecc.verify import default_jobs, sample_patterns, verify_code


class SabotagedA(ConstructionA):
    """Drops the last cell of every two-cell answer."""

    def decode(self, s):
        got = super().decode(s)
        return got[:1]


def test_clean_pass():
    rep = verify_code(ConstructionA((4, 4, 4), 6))
    assert rep.passed and rep.tested == rep.class_size == 208
    assert rep.injective and not rep.failures and rep.ambiguity_events == 0
    d = rep.to_dict()
    assert d["redundancy"]["class_size"] == 208 and "excess" in d["redundancy"]
    json.dumps(d)


def test_sabotaged_decoder_reported():
    rep = verify_code(SabotagedA((4, 4)))
    assert not rep.passed
    assert len(rep.failures) == 24  # every adjacent pair
    f = rep.failures[0]
    assert len(f["pattern"]) == 2 and len(f["got"]) == 1 and f["got"][0] == f["pattern"][0]


def test_parallel_matches_serial():
    code = ConstructionE((5, 5))
    a = verify_code(code, jobs=1)
    b = verify_code(code, jobs=2)
    assert a.passed and b.passed and a.tested == b.tested


def test_coloring_code_through_arrays():
    rep = verify_code(build_coloring_code("cross", (3, 3)))
    assert rep.passed and rep.tested == rep.class_size


def test_sampling_is_seeded():
    code = ConstructionA((4, 4))
    assert sample_patterns(code, 10, 1) == sample_patterns(code, 10, 1)
    assert sample_patterns(code, 10, 1) != sample_patterns(code, 10, 2)


def test_jobs_env(monkeypatch):
    monkeypatch.setenv("MDECC_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("MDECC_JOBS", "x")
    assert default_jobs() == 1
