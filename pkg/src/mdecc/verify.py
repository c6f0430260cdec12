"""Exhaustive verification: inject every correctable pattern and decode it."""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import lattice
from .constructions import AmbiguousDecodeError, ArrayCode, UncorrectableError
from .lattice import ErrorPattern
from .pipeline import ColoringCode, Encoder, coloring_decode, redundancy_report


@dataclass
class VerifyReport:
    code: dict
    name: str
    class_size: int
    tested: int
    injective: bool
    collisions: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    ambiguity_events: int = 0
    redundancy: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.injective

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _pattern_json(p: ErrorPattern) -> list[list[int]]:
    return [list(c) for c in p]


def _check_chunk(code: ArrayCode, patterns: Sequence[ErrorPattern], through_array: bool, seed: int):
    failures = []
    ambiguous = 0
    codeword = None
    if through_array:
        enc = Encoder(code)
        rng = np.random.default_rng(seed)
        codeword = enc.encode(rng.integers(0, 2, enc.k))
    for pat in patterns:
        try:
            if through_array:
                received = codeword.copy()
                for c in pat:
                    received[c] ^= 1
                got = coloring_decode(code, received) if isinstance(code, ColoringCode) else code.decode_array(received)[0]
            else:
                got = code.decode(code.syndrome(pat))
        except AmbiguousDecodeError as exc:
            ambiguous += 1
            failures.append({"pattern": _pattern_json(pat), "error": f"ambiguous: {exc}"})
            continue
        except UncorrectableError as exc:
            failures.append({"pattern": _pattern_json(pat), "error": f"uncorrectable: {exc}"})
            continue
        if got != pat:
            failures.append({"pattern": _pattern_json(pat), "got": _pattern_json(got)})
    return failures, ambiguous


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("MDECC_JOBS", "1")))
    except ValueError:
        return 1


def verify_code(
    code: ArrayCode,
    patterns: Sequence[ErrorPattern] | None = None,
    jobs: int = 1,
    through_array: bool | None = None,
    seed: int = 0,
    with_rank: bool = True,
) -> VerifyReport:
    """Syndrome injectivity plus decode round trip over the correctable class.

    With `patterns` omitted the whole class from enumerate_patterns is used.
    Coloring codes are exercised through received arrays (a random codeword
    plus the pattern) unless `through_array` says otherwise.
    """
    start = time.perf_counter()
    full = list(lattice.enumerate_patterns(code.dims, code.shape))
    tested = full if patterns is None else list(patterns)
    if through_array is None:
        through_array = isinstance(code, ColoringCode)

    seen: dict[int, ErrorPattern] = {0: ()}
    collisions = []
    for pat in full:
        s = code.syndrome(pat)
        prev = seen.setdefault(s, pat)
        if prev != pat:
            collisions.append({"a": _pattern_json(prev), "b": _pattern_json(pat)})

    failures: list = []
    ambiguous = 0
    if jobs > 1 and len(tested) > jobs:
        size = -(-len(tested) // jobs)
        chunks = [tested[i:i + size] for i in range(0, len(tested), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_check_chunk, code, ch, through_array, seed) for ch in chunks]
            for fut in futures:
                f, a = fut.result()
                failures += f
                ambiguous += a
    else:
        failures, ambiguous = _check_chunk(code, tested, through_array, seed)

    rank = Encoder(code).rank if with_rank else None
    return VerifyReport(
        code=code.config(),
        name=code.name,
        class_size=len(full),
        tested=len(tested),
        injective=not collisions,
        collisions=collisions[:20],
        failures=failures,
        ambiguity_events=ambiguous,
        redundancy=redundancy_report(code, class_size=len(full), rank=rank),
        seconds=time.perf_counter() - start,
    )


def sample_patterns(code: ArrayCode, count: int, seed: int) -> list[ErrorPattern]:
    """Uniform sample (with replacement) from the correctable class."""
    full = list(lattice.enumerate_patterns(code.dims, code.shape))
    rng = random.Random(seed)
    return [rng.choice(full) for _ in range(count)]
