"""Enumerate ASTs whose nontrivial relations are invariant under a group.

Pipeline for one order m (k = m - 3 nontrivial relations):

1. orbits of G on the all-distinct triples, and all partitions of the orbit
   list into k blocks (streamed as restricted growth strings);
2. each partition becomes a candidate (block = union of its orbits);
3. candidates are filtered by the axioms;
4. survivors are grouped by relabeling orbit (isomorphism class);
5. one representative per class is kept.

The default order filters before grouping.  ``legacy=True`` groups every
candidate first and validates one member per class; both give the same
classes because the axioms are relabeling invariant.
"""

from __future__ import annotations

import logging
import os
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Collection, Iterable, Iterator, Sequence

import numpy as np

from ._kernels import rows_min_image, rows_minimal_under
from .axioms import ASTReport, CLOSURE, VALENCY, validate_ast
from .groups import (
    ACTIONS,
    COORD,
    COORD_PERMS,
    RELABEL,
    GroupError,
    PermGroup,
    Permutation,
    orbits,
    symmetric_group,
)
from .partitions import iter_rgs_chunks, stirling2
from .relations import (
    ASTCandidate,
    CanonicalKey,
    Triple,
    canonical_form,
    coord_index_map,
    cube_coords,
    domain_indices,
    index_triple,
    relabel_index_map,
    trivial_labels,
)

log = logging.getLogger(__name__)

DEFAULT_CHUNK = 1 << 16


@dataclass(frozen=True)
class ClassificationJob:
    """``orders=None`` means every order with 1 <= m - 3 <= number of orbits."""

    n: int
    group: PermGroup
    action: str = RELABEL
    orders: int | None = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 vertices")
        if self.action not in ACTIONS:
            raise GroupError(f"unknown action {self.action!r}")
        want = 3 if self.action == COORD else self.n
        if self.group.n != want:
            raise GroupError(f"{self.action} action needs a group of degree {want}, got {self.group.n}")
        if self.orders is not None and self.orders < 4:
            raise ValueError("order m must be at least 4")


@dataclass
class StageStats:
    order: int
    enumerated: int = 0
    valency: int = 0
    closure: int = 0
    asts: int = 0
    orbits: int | None = None
    classes: int = 0


@dataclass
class IsoClass:
    representative: ASTCandidate
    size: int
    key: CanonicalKey
    members: int

    @property
    def order(self) -> int:
        return self.representative.order


@dataclass
class ClassificationResult:
    job: ClassificationJob
    classes: list[IsoClass]
    stats: list[StageStats]
    n_orbits: int
    legacy: bool = False
    wall_time: float = 0.0

    @property
    def enumerated(self) -> int:
        return sum(s.enumerated for s in self.stats)

    def class_keys(self) -> list[CanonicalKey]:
        return [c.key for c in self.classes]


class OrbitStructure:
    """G-orbits on the all-distinct triples and the index maps the batch filters use.

    Domain positions ``d`` index the all-distinct triples in lexicographic order.
    """

    def __init__(self, n: int, group: PermGroup, action: str = RELABEL):
        self.n = n
        self.group = group
        self.action = action
        dom = domain_indices(n)
        self.domain: list[Triple] = [index_triple(n, i) for i in dom]
        self.orbits = orbits(group, self.domain, action)
        pos = {t: d for d, t in enumerate(self.domain)}
        self.orbit_of = np.empty(len(dom), dtype=np.int64)
        for o, orb in enumerate(self.orbits):
            for t in orb:
                self.orbit_of[pos[t]] = o

        self._cube_to_dom = np.full(n ** 3, -1, dtype=np.int64)
        self._cube_to_dom[dom] = np.arange(len(dom))

        # pair_counts[o, p]: triples of orbit o whose first two coordinates form pair p.
        c = cube_coords(n)[dom]
        pair = c[:, 0] * n + c[:, 1]
        _, pair = np.unique(pair, return_inverse=True)
        self.pair_counts = np.zeros((len(self.orbits), pair.max() + 1), dtype=np.float32)
        np.add.at(self.pair_counts, (self.orbit_of, pair), 1)

        self.coord_maps = [self.domain_map(coord_index_map(cp, n)) for cp in COORD_PERMS[1:]]
        self._relabel = None
        self._normalizer = None

    @property
    def n_orbits(self) -> int:
        return len(self.orbits)

    def domain_map(self, cube_map: np.ndarray) -> np.ndarray:
        return self._cube_to_dom[cube_map[domain_indices(self.n)]]

    @property
    def relabel_maps(self) -> list[tuple[Permutation, np.ndarray]]:
        """``(sigma, f)`` for every sigma in S_n; ``f[d]`` is the position of sigma(triple d)."""
        if self._relabel is None:
            self._relabel = [(s, self.domain_map(relabel_index_map(s)))
                             for s in symmetric_group(self.n)]
        return self._relabel

    def _split_relabelings(self):
        """Relabelings that permute the G-orbits, and merge constraints from the rest."""
        keep, constraints = [], set()
        for s, f in self.relabel_maps:
            target = self.orbit_of[f]
            edges = set()
            perm = np.full(self.n_orbits, -1, dtype=np.int64)
            for o in range(self.n_orbits):
                hit = np.unique(target[self.orbit_of == o])
                if hit.size == 1:
                    perm[o] = hit[0]
            if (perm >= 0).all() and np.unique(perm).size == self.n_orbits:
                keep.append(np.argsort(perm))
                continue
            # Relabeled candidate is G-invariant iff labels agree across orbits sharing a target.
            for tgt in np.unique(target):
                src = np.unique(self.orbit_of[target == tgt])
                edges.update((int(src[0]), int(b)) for b in src[1:])
            constraints.add(_spanning_edges(edges, self.n_orbits))
        return np.array(keep, dtype=np.int64), sorted(constraints)

    @property
    def normalizer(self):
        if self._normalizer is None:
            self._normalizer = self._split_relabelings()
        return self._normalizer

    def labels_to_domain(self, rows: np.ndarray) -> np.ndarray:
        return rows[:, self.orbit_of]

    def candidate(self, row: np.ndarray) -> ASTCandidate:
        return ASTCandidate.from_labels(self.n, np.asarray(row)[self.orbit_of])

    def is_invariant(self, x: ASTCandidate) -> bool:
        """True iff every nontrivial relation of ``x`` is a union of G-orbits."""
        lab = x.labels[domain_indices(self.n)]
        first = np.zeros(self.n_orbits, dtype=np.int64)
        first[self.orbit_of[::-1]] = lab[::-1]
        return bool((lab == first[self.orbit_of]).all())

    # Batch filters over orbit-label rows ``A`` (shape rows x orbits, k labels).

    def valency_mask(self, A: np.ndarray, k: int) -> np.ndarray:
        ok = np.ones(len(A), dtype=bool)
        for b in range(k):
            cnt = (A == b).astype(np.float32) @ self.pair_counts
            ok &= (cnt == cnt[:, :1]).all(axis=1)
        return ok

    def closure_mask(self, A: np.ndarray, k: int) -> np.ndarray:
        ok = np.ones(len(A), dtype=bool)
        if len(A) == 0:
            return ok
        T = self.labels_to_domain(A).astype(np.int64)
        rows = np.arange(len(A))[:, None]
        for f in self.coord_maps:
            # R^sigma is a relation iff label(t) -> label(t^sigma) is a well defined bijection.
            pres = np.zeros((len(A), k * k), dtype=bool)
            pres[rows, T * k + T[:, f]] = True
            ok &= pres.sum(axis=1) == k
        return ok


def _spanning_edges(edges: Iterable[tuple[int, int]], size: int) -> tuple[tuple[int, int], ...]:
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    out = []
    for a, b in sorted(edges):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            out.append((a, b))
    # Canonical form of the induced equivalence, so equal constraints dedupe.
    return tuple(sorted((find(a), a) for a in range(size) if find(a) != a))


def build_candidate(partition: Sequence[Iterable[Triple]], n: int) -> ASTCandidate:
    """Union each block of orbits into one nontrivial relation.

    ``partition`` is a sequence of blocks, each an iterable of orbits.
    """
    blocks = []
    for block in partition:
        rel = [t for orbit in block for t in orbit]
        if not rel:
            raise ValueError("empty block in orbit partition")
        blocks.append(rel)
    return ASTCandidate.from_blocks(n, blocks)


def _canonical_from_labels(n: int, lab: np.ndarray) -> CanonicalKey:
    dom = domain_indices(n)
    sub = lab[dom]
    _, first = np.unique(sub, return_index=True)
    out = []
    for f in np.sort(first):
        out.append(tuple(index_triple(n, i) for i in dom[sub == sub[f]]))
    return tuple(out)


def _normalize_labels(lab: np.ndarray) -> np.ndarray:
    """Renumber nontrivial labels 4, 5, ... in order of first occurrence."""
    out = lab.copy()
    nt = lab >= 4
    _, first, inv = np.unique(lab[nt], return_index=True, return_inverse=True)
    out[nt] = 4 + np.argsort(np.argsort(first))[inv.reshape(-1)]
    return out


def relabeled_labels(x: ASTCandidate) -> Iterator[tuple[Permutation, np.ndarray]]:
    """Normalised cube labels of every relabeling of ``x``."""
    lab = x.labels
    for s in symmetric_group(x.n):
        img = np.empty_like(lab)
        img[relabel_index_map(s)] = lab
        yield s, _normalize_labels(img)


def orbit_key(x: ASTCandidate) -> tuple[CanonicalKey, int]:
    """Least canonical form over all relabelings of ``x``, and the orbit size."""
    seen = {}
    for _, img in relabeled_labels(x):
        b = img.tobytes()
        if b not in seen:
            seen[b] = img
    key = min(_canonical_from_labels(x.n, img) for img in seen.values())
    return key, len(seen)


def isomorphism_classes(candidates: Iterable[ASTCandidate], n: int) -> list[IsoClass]:
    """Group candidates by relabeling orbit; the representative is the member with least canonical form."""
    groups: dict[CanonicalKey, dict] = {}
    for x in candidates:
        if x.n != n:
            raise ValueError("all candidates must share the same vertex count")
        key, size = orbit_key(x)
        g = groups.setdefault(key, {"size": size, "members": {}})
        g["members"][x] = None
    out = []
    for key in sorted(groups, key=lambda k: (len(k), k)):
        g = groups[key]
        members = list(g["members"])
        rep = min(members, key=canonical_form)
        out.append(IsoClass(rep, g["size"], key, len(members)))
    return out


def invariant_images(x: ASTCandidate, structure: OrbitStructure) -> list[ASTCandidate]:
    """All distinct relabelings of ``x`` whose relations are unions of G-orbits."""
    out, seen = [], set()
    for _, img in relabeled_labels(x):
        b = img.tobytes()
        if b in seen:
            continue
        seen.add(b)
        y = ASTCandidate.from_labels(x.n, img[domain_indices(x.n)])
        if structure.is_invariant(y):
            out.append(y)
    return out


def _bounded_map(fn: Callable, items: Iterable, threads: int) -> Iterator:
    """Ordered map with at most ``2 * threads`` tasks in flight."""
    if threads <= 1:
        yield from map(fn, items)
        return
    with ThreadPoolExecutor(threads) as pool:
        pending: deque = deque()
        for item in items:
            pending.append(pool.submit(fn, item))
            if len(pending) >= 2 * threads:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def _orders(job: ClassificationJob, n_orbits: int) -> list[int]:
    if job.orders is None:
        return [k + 3 for k in range(1, n_orbits + 1)]
    if not 1 <= job.orders - 3 <= n_orbits:
        raise ValueError(f"order {job.orders} needs {job.orders - 3} blocks but only {n_orbits} orbits exist")
    return [job.orders]


def _finish(survivors: Iterable[ASTCandidate], disabled: Collection[str]) -> list[ASTCandidate]:
    return [x for x in survivors if validate_ast(x, disabled).passed]


def classify(job: ClassificationJob, *, legacy: bool = False, threads: int | None = None,
             disabled: Collection[str] = (), chunk: int = DEFAULT_CHUNK) -> ClassificationResult:
    """Run the whole pipeline for ``job``.

    ``disabled`` switches off individual axiom checks (ablation testing only).
    """
    t0 = time.perf_counter()
    threads = threads or os.cpu_count() or 1
    st = OrbitStructure(job.n, job.group, job.action)
    stats = []
    found: list[ASTCandidate] = []
    for m in _orders(job, st.n_orbits):
        k = m - 3
        s = StageStats(order=m)
        chunks = iter_rgs_chunks(st.n_orbits, k, chunk)
        if legacy:
            asts = _legacy_order(st, k, chunks, s, threads, disabled)
        else:
            asts = _default_order(st, k, chunks, s, threads, disabled)
        s.asts = len(asts)
        found.extend(asts)
        stats.append(s)
        expected = stirling2(st.n_orbits, k)
        if s.enumerated != expected:
            raise RuntimeError(f"enumerated {s.enumerated} partitions, expected {expected}")
    classes = isomorphism_classes(found, job.n)
    for s in stats:
        s.classes = sum(c.order == s.order for c in classes)
    if not classes:
        log.info("no AST of the requested orders is invariant under %s", job.group.describe())
    return ClassificationResult(job, classes, stats, st.n_orbits, legacy, time.perf_counter() - t0)


def _batch_filters(st: OrbitStructure, A: np.ndarray, k: int, disabled) -> tuple[int, int, np.ndarray]:
    if VALENCY not in disabled:
        A = A[st.valency_mask(A, k)]
    n_val = len(A)
    if CLOSURE not in disabled:
        A = A[st.closure_mask(A, k)]
    return n_val, len(A), A


def _default_order(st, k, chunks, s: StageStats, threads, disabled) -> list[ASTCandidate]:
    def work(A):
        return (len(A),) + _batch_filters(st, A, k, disabled)

    survivors = []
    for n_all, n_val, n_clo, rows in _bounded_map(work, chunks, threads):
        s.enumerated += n_all
        s.valency += n_val
        s.closure += n_clo
        survivors.extend(rows)
    return _finish((st.candidate(r) for r in survivors), disabled)


def _legacy_order(st, k, chunks, s: StageStats, threads, disabled) -> list[ASTCandidate]:
    keep, constraints = st.normalizer
    all_gathers = np.array([np.argsort(f) for _, f in st.relabel_maps], dtype=np.int64)

    def work(A):
        special = np.zeros(len(A), dtype=bool)
        for edges in constraints:
            a = np.array([e[0] for e in edges])
            b = np.array([e[1] for e in edges])
            special |= (A[:, a] == A[:, b]).all(axis=1)
        plain = A[~special]
        reps = plain[rows_minimal_under(plain, keep, k)]
        sp = A[special]
        sp_keys = rows_min_image(st.labels_to_domain(sp), all_gathers, k) if len(sp) else sp
        return len(A), len(reps), _batch_filters(st, reps, k, disabled), sp, sp_keys

    survivors = []
    special_reps: dict[bytes, np.ndarray] = {}
    orbit_count = 0
    for n_all, n_reps, (n_val, n_clo, rows), sp, sp_keys in _bounded_map(work, chunks, threads):
        s.enumerated += n_all
        orbit_count += n_reps
        s.valency += n_val
        s.closure += n_clo
        survivors.extend(rows)
        for row, key in zip(sp, sp_keys):
            special_reps.setdefault(key.tobytes(), row)
    if special_reps:
        A = np.array(list(special_reps.values()), dtype=np.int8)
        orbit_count += len(A)
        n_val, n_clo, rows = _batch_filters(st, A, k, disabled)
        s.valency += n_val
        s.closure += n_clo
        survivors.extend(rows)
    s.orbits = orbit_count
    reps = _finish((st.candidate(r) for r in survivors), disabled)
    members = []
    for x in reps:
        members.extend(invariant_images(x, st))
    return members


class ConstructionError(ValueError):
    """The orbits of a group do not assemble into an AST."""

    def __init__(self, message: str, report: ASTReport | None = None):
        super().__init__(message)
        self.report = report


def ast_from_group_orbits(g: PermGroup, n: int) -> ASTCandidate:
    """Assemble the relabeling orbits of ``g`` on the cube into an AST.

    R0..R3 must each be a single orbit, which holds iff ``g`` is
    two-transitive; the remaining orbits become the nontrivial relations.
    """
    if n < 4:
        raise ValueError("need at least 4 vertices")
    if g.n != n:
        raise GroupError(f"group has degree {g.n}, expected {n}")
    cube = [index_triple(n, i) for i in range(n ** 3)]
    triv = trivial_labels(n)
    nontrivial = []
    per_trivial = [0, 0, 0, 0]
    for orb in orbits(g, cube, RELABEL):
        lab = triv[[(t[0] - 1) * n * n + (t[1] - 1) * n + t[2] - 1 for t in orb]]
        if lab[0] < 0:
            nontrivial.append(orb)
        else:
            per_trivial[lab[0]] += 1
    bad = [i for i, c in enumerate(per_trivial) if c != 1]
    if bad:
        i = bad[0]
        raise ConstructionError(f"R{i} splits into {per_trivial[i]} orbits; the group is not two-transitive")
    x = ASTCandidate.from_blocks(n, nontrivial)
    report = validate_ast(x)
    if not report.passed:
        raise ConstructionError(f"orbit partition is not an AST: {report.failure}", report)
    return x
