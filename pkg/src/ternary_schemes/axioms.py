"""The three AST axioms and the constants they define.

Each ``check_*`` function returns the constants on success and raises
:class:`AxiomViolation` (carrying a witness) on failure.  ``validate_ast``
runs them cheapest first and collects the outcome into an :class:`ASTReport`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

import numpy as np

from .groups import COORD_PERMS, Permutation, n_cycles
from .relations import (
    ASTCandidate,
    coord_index_map,
    index_triple,
    relabel_index_map,
)

VALENCY = "valency"
CLOSURE = "closure"
REGULARITY = "regularity"
CHECK_ORDER = (VALENCY, CLOSURE, REGULARITY)
CONDITION_NUMBER = {VALENCY: 1, REGULARITY: 2, CLOSURE: 3}


class AxiomViolation(Exception):
    """An axiom failed; ``cell`` and ``witnesses`` locate the failure."""

    def __init__(self, check: str, cell: tuple[int, ...], witnesses: tuple, counts: tuple = ()):
        self.check = check
        self.cell = cell
        self.witnesses = witnesses
        self.counts = counts
        super().__init__(self._message())

    @property
    def condition(self) -> int:
        return CONDITION_NUMBER[self.check]

    def _message(self) -> str:
        if self.check == VALENCY:
            (i,), (a, b) = self.cell, self.witnesses
            return (f"valency: relation {i} completes pair {a} {self.counts[0]} times "
                    f"but pair {b} {self.counts[1]} times")
        if self.check == CLOSURE:
            i, s = self.cell
            return f"closure: image of relation {i} under coordinate permutation {COORD_PERMS[s]} is not a relation"
        i, j, k, l = self.cell
        a, b = self.witnesses
        return (f"regularity: p[{i},{j},{k}]^{l} is {self.counts[0]} at {a} "
                f"but {self.counts[1]} at {b}")


def _pairs(n: int) -> np.ndarray:
    """Flat ``x*n + y`` indices of ordered pairs with x != y, lexicographic."""
    x, y = np.divmod(np.arange(n * n), n)
    return np.flatnonzero(x != y)


def _pair(n: int, p: int) -> tuple[int, int]:
    x, y = divmod(int(p), n)
    return (x + 1, y + 1)


def valency_counts(x: ASTCandidate, slot: int = 3) -> np.ndarray:
    """``counts[p, i]``: members of R_i completing distinct pair ``p`` in ``slot``.

    ``slot=3`` is the axiom's count ``|{z : (x, y, z) in R_i}|``; slots 1 and
    2 count the free first or second coordinate instead.
    """
    n, m1 = x.n, x.order + 1
    lab = x.labels.reshape(n, n, n)
    lab = np.moveaxis(lab, slot - 1, 2)
    pair_of = np.repeat(np.arange(n * n), n)
    counts = np.zeros((n * n, m1), dtype=np.int64)
    np.add.at(counts, (pair_of, lab.reshape(-1)), 1)
    return counts[_pairs(n)]


def check_valency(x: ASTCandidate) -> np.ndarray:
    """Return the valencies ``n_i`` or raise on a non-constant count."""
    counts = valency_counts(x)
    bad = counts != counts[0]
    if bad.any():
        p, i = np.argwhere(bad.T)[0][::-1]
        pairs = _pairs(x.n)
        raise AxiomViolation(VALENCY, (int(i),), (_pair(x.n, pairs[0]), _pair(x.n, pairs[p])),
                             (int(counts[0, i]), int(counts[p, i])))
    return counts[0].copy()


def slot_valencies(x: ASTCandidate) -> dict[int, np.ndarray | None]:
    """Per-slot valency vectors (``None`` where the count is not constant)."""
    out = {}
    for slot in (1, 2, 3):
        c = valency_counts(x, slot)
        out[slot] = c[0].copy() if (c == c[0]).all() else None
    return out


def intersection_counts(x: ASTCandidate) -> np.ndarray:
    """``counts[t, i, j, k]`` for every cube triple ``t = (a, b, c)``.

    Counts the ``w`` with ``(w,b,c) in R_i``, ``(a,w,c) in R_j`` and
    ``(a,b,w) in R_k``.
    """
    n, m1 = x.n, x.order + 1
    lab = x.labels.reshape(n, n, n)
    # Axes are (a, b, c, w) throughout.
    first = np.transpose(lab, (1, 2, 0))[None, :, :, :]
    second = np.transpose(lab, (0, 2, 1))[:, None, :, :]
    third = lab[:, :, None, :]
    code = (first * m1 + second) * m1 + third
    code = np.broadcast_to(code, (n, n, n, n)).reshape(n ** 3, n)
    base = np.repeat(np.arange(n ** 3), n) * m1 ** 3
    flat = np.bincount(base + code.reshape(-1), minlength=n ** 3 * m1 ** 3)
    return flat.reshape(n ** 3, m1, m1, m1)


def check_regularity(x: ASTCandidate) -> np.ndarray:
    """Return the tensor ``p[i, j, k, l]`` or raise on a non-constant cell."""
    m1 = x.order + 1
    counts = intersection_counts(x)
    lab = x.labels
    tensor = np.zeros((m1, m1, m1, m1), dtype=np.int64)
    first_bad = None
    for l in range(m1):
        members = np.flatnonzero(lab == l)
        block = counts[members]
        tensor[..., l] = block[0]
        bad = block != block[0]
        if bad.any():
            cells = np.argwhere(bad.any(axis=0))
            i, j, k = (int(v) for v in cells[0])
            row = int(np.flatnonzero(bad[:, i, j, k])[0])
            cand = ((i, j, k, l), members[0], members[row])
            if first_bad is None or cand[0] < first_bad[0]:
                first_bad = cand
    if first_bad is not None:
        (i, j, k, l), a, b = first_bad
        raise AxiomViolation(REGULARITY, (i, j, k, l),
                             (index_triple(x.n, a), index_triple(x.n, b)),
                             (int(counts[a, i, j, k]), int(counts[b, i, j, k])))
    return tensor


def check_coordinate_closure(x: ASTCandidate) -> np.ndarray:
    """Return ``table[s, i] = j`` with ``R_i`` under ``COORD_PERMS[s]`` equal to ``R_j``."""
    n, m1 = x.n, x.order + 1
    lab = x.labels
    sizes = np.bincount(lab, minlength=m1)
    table = np.empty((len(COORD_PERMS), m1), dtype=np.int64)
    for s, c in enumerate(COORD_PERMS):
        f = coord_index_map(c, n)
        image_lab = lab[f]
        for i in range(m1):
            hit = image_lab[lab == i]
            j = hit[0]
            if (hit != j).any() or sizes[j] != sizes[i]:
                raise AxiomViolation(CLOSURE, (i, s), (c,))
            table[s, i] = j
    return table


def is_symmetric(x: ASTCandidate, table: np.ndarray) -> bool:
    """True iff every coordinate permutation fixes every nontrivial relation."""
    idx = np.arange(4, x.order + 1)
    return bool((table[:, 4:] == idx).all())


def is_invariant(x: ASTCandidate, p: Permutation) -> bool:
    """True iff relabeling by ``p`` fixes every nontrivial relation."""
    lab = x.labels
    return bool(np.array_equal(lab[relabel_index_map(p)], lab))


def is_circulant(x: ASTCandidate) -> bool:
    """True iff some n-cycle (hence a transitive cyclic group) fixes every relation."""
    return any(is_invariant(x, c) for c in n_cycles(x.n))


@dataclass
class ASTReport:
    passed: bool
    failure: AxiomViolation | None = None
    valencies: np.ndarray | None = None
    tensor: np.ndarray | None = None
    coord_table: np.ndarray | None = None

    @property
    def failed_check(self) -> str | None:
        return None if self.failure is None else self.failure.check


def validate_ast(x: ASTCandidate, disabled: Collection[str] = ()) -> ASTReport:
    """Check valency, then coordinate closure, then regularity; stop at the first failure.

    ``disabled`` names checks to skip; it exists for ablation tests only.
    """
    report = ASTReport(passed=False)
    try:
        if VALENCY not in disabled:
            report.valencies = check_valency(x)
        if CLOSURE not in disabled:
            report.coord_table = check_coordinate_closure(x)
        if REGULARITY not in disabled:
            report.tensor = check_regularity(x)
    except AxiomViolation as exc:
        report.failure = exc
        return report
    report.passed = True
    return report


def is_ast(x: ASTCandidate) -> bool:
    return validate_ast(x).passed

