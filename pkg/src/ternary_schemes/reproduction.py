"""The reference classification runs for n = 3, 4, 5 and their expected answers.

Expected answers are either the scheme whose single nontrivial relation is
every all-distinct triple, or one of the relation listings shipped in
``data/``.  A run passes when its class keys equal the expected keys.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Collection

from .classify import ClassificationJob, ClassificationResult, classify, orbit_key
from .document import parse
from .groups import parse_group_spec
from .relations import ASTCandidate, CanonicalKey, nontrivial_domain

FULL = "full-domain"


@dataclass(frozen=True)
class ReferenceRun:
    name: str
    n: int
    group: str
    orders: int | None
    expected: tuple[str, ...]

    def job(self) -> ClassificationJob:
        g, action = parse_group_spec(self.n, self.group)
        return ClassificationJob(self.n, g, action, self.orders)


REFERENCE_RUNS = (
    ReferenceRun("n3-trivial-all", 3, "trivial", None, (FULL,)),
    ReferenceRun("n4-coord-s3-all", 4, "coord-s3", None, (FULL,)),
    ReferenceRun("n5-coord-s3-all", 5, "coord-s3", None, (FULL,)),
    ReferenceRun("n4-cyclic-all", 4, "cyclic:(1,2,3,4)", None, (FULL,)),
    ReferenceRun("n4-trivial-m5", 4, "trivial", 5, ("listing_n4_m5.txt",)),
    ReferenceRun("n5-cyclic-all", 5, "cyclic:(1,2,3,4,5)", None, (FULL, "listing_n5_m6.txt")),
)


def full_domain_scheme(n: int) -> ASTCandidate:
    return ASTCandidate(n, [nontrivial_domain(n)])


def load_listing(name: str) -> ASTCandidate:
    text = resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")
    return parse(text).candidate


def expected_scheme(run: ReferenceRun, name: str) -> ASTCandidate:
    return full_domain_scheme(run.n) if name == FULL else load_listing(name)


@dataclass
class RunOutcome:
    run: ReferenceRun
    passed: bool
    result: ClassificationResult
    expected_keys: list[CanonicalKey]
    seconds: float
    diff: list[str] = field(default_factory=list)


def check_run(run: ReferenceRun, *, legacy: bool = False, threads: int | None = None,
              disabled: Collection[str] = ()) -> RunOutcome:
    t0 = time.perf_counter()
    result = classify(run.job(), legacy=legacy, threads=threads, disabled=disabled)
    seconds = time.perf_counter() - t0
    expected = sorted((orbit_key(expected_scheme(run, e))[0] for e in run.expected),
                      key=lambda k: (len(k), k))
    got = result.class_keys()
    diff = []
    if len(got) != len(expected):
        diff.append(f"expected {len(expected)} classes, found {len(got)}")
    for key in got:
        if key not in expected:
            diff.append(f"unexpected class with {len(key)} nontrivial relations")
    for key in expected:
        if key not in got:
            diff.append(f"missing class with {len(key)} nontrivial relations")
    return RunOutcome(run, not diff, result, expected, seconds, diff)


def run_suite(**kwargs) -> list[RunOutcome]:
    return [check_run(run, **kwargs) for run in REFERENCE_RUNS]
