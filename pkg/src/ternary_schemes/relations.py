"""Ternary relations on {1..n}^3 and candidate partitions of the cube.

Triples are 1-based tuples at the API boundary.  Internally a triple
``(x, y, z)`` is stored at the dense index ``(x-1)*n*n + (y-1)*n + (z-1)``,
so lexicographic order of triples is index order.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .groups import Permutation, Triple

CanonicalKey = tuple[tuple[Triple, ...], ...]


class PartitionError(ValueError):
    """Raised when relations do not form a valid candidate partition."""


def triple_index(n: int, t: Triple) -> int:
    x, y, z = t
    if not (1 <= x <= n and 1 <= y <= n and 1 <= z <= n):
        raise PartitionError(f"triple {t} has an entry outside 1..{n}")
    return (x - 1) * n * n + (y - 1) * n + (z - 1)


def index_triple(n: int, i: int) -> Triple:
    x, r = divmod(int(i), n * n)
    y, z = divmod(r, n)
    return (x + 1, y + 1, z + 1)


@lru_cache(maxsize=None)
def cube_coords(n: int) -> np.ndarray:
    """``(n**3, 3)`` array of 0-based coordinates in index order."""
    g = np.indices((n, n, n)).reshape(3, -1).T
    out = np.ascontiguousarray(g, dtype=np.int64)
    out.setflags(write=False)
    return out


class TernaryRelation:
    """A subset of {1..n}^3 held as a dense boolean membership vector."""

    __slots__ = ("n", "members", "__weakref__")

    def __init__(self, n: int, members: np.ndarray):
        members = np.asarray(members, dtype=bool)
        if members.shape != (n ** 3,):
            raise PartitionError(f"membership vector must have length {n ** 3}")
        members = members.copy()
        members.setflags(write=False)
        self.n = n
        self.members = members

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Triple]) -> TernaryRelation:
        m = np.zeros(n ** 3, dtype=bool)
        for t in triples:
            m[triple_index(n, tuple(t))] = True
        return cls(n, m)

    def __len__(self) -> int:
        return int(self.members.sum())

    def __contains__(self, t: Triple) -> bool:
        return bool(self.members[triple_index(self.n, t)])

    def __iter__(self):
        return (index_triple(self.n, i) for i in np.flatnonzero(self.members))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TernaryRelation):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.members, other.members))

    def __hash__(self) -> int:
        return hash((self.n, self.members.tobytes()))

    def __or__(self, other: TernaryRelation) -> TernaryRelation:
        return TernaryRelation(self.n, self.members | other.members)

    def __repr__(self) -> str:
        return f"TernaryRelation(n={self.n}, size={len(self)})"

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def triples(self) -> tuple[Triple, ...]:
        return tuple(self)

    def least(self) -> Triple:
        idx = self.indices()
        if idx.size == 0:
            raise PartitionError("empty relation has no least triple")
        return index_triple(self.n, idx[0])


def relabel_index_map(p: Permutation) -> np.ndarray:
    """Array ``f`` with ``f[i]`` = index of the relabeled triple at index ``i``."""
    n = p.n
    img = np.asarray(p.image, dtype=np.int64) - 1
    c = cube_coords(n)
    return img[c[:, 0]] * n * n + img[c[:, 1]] * n + img[c[:, 2]]


def coord_index_map(c: Permutation, n: int) -> np.ndarray:
    """Index map of the coordinate permutation ``c`` on the cube of side ``n``."""
    coords = cube_coords(n)[:, [c(1) - 1, c(2) - 1, c(3) - 1]]
    return coords[:, 0] * n * n + coords[:, 1] * n + coords[:, 2]


def relabel_relation(p: Permutation, r: TernaryRelation) -> TernaryRelation:
    if p.n != r.n:
        raise PartitionError("permutation degree does not match relation")
    out = np.zeros_like(r.members)
    out[relabel_index_map(p)[r.members]] = True
    return TernaryRelation(r.n, out)


@lru_cache(maxsize=None)
def trivial_labels(n: int) -> np.ndarray:
    """Cube labels 0..3 for the trivial relations, -1 on all-distinct triples."""
    if n < 3:
        raise PartitionError("need at least 3 vertices")
    c = cube_coords(n)
    x, y, z = c[:, 0], c[:, 1], c[:, 2]
    lab = np.full(n ** 3, -1, dtype=np.int64)
    lab[(x == y) & (y == z)] = 0
    lab[(x != y) & (y == z)] = 1
    lab[(x != y) & (x == z)] = 2
    lab[(x == y) & (x != z)] = 3
    lab.setflags(write=False)
    return lab


def trivial_relations(n: int) -> list[TernaryRelation]:
    """``[R0, R1, R2, R3]``: diagonal, ``(y,x,x)``, ``(x,y,x)``, ``(x,x,y)``."""
    lab = trivial_labels(n)
    return [TernaryRelation(n, lab == i) for i in range(4)]


def nontrivial_domain(n: int) -> TernaryRelation:
    """All triples with pairwise distinct coordinates."""
    return TernaryRelation(n, trivial_labels(n) == -1)


@lru_cache(maxsize=None)
def domain_indices(n: int) -> np.ndarray:
    out = np.flatnonzero(trivial_labels(n) == -1)
    out.setflags(write=False)
    return out


class ASTCandidate:
    """A partition of the cube: R0..R3 followed by nontrivial blocks.

    Nontrivial blocks are stored sorted by their least triple, so two
    candidates compare equal iff they are equal as unordered partitions.
    """

    def __init__(self, n: int, nontrivial: Sequence[TernaryRelation]):
        if n < 3:
            raise PartitionError("need at least 3 vertices")
        blocks = list(nontrivial)
        if not blocks:
            raise PartitionError("a candidate needs at least one nontrivial relation")
        cover = np.zeros(n ** 3, dtype=np.int64)
        for b in blocks:
            if b.n != n:
                raise PartitionError("relation degree does not match candidate")
            if not b.members.any():
                raise PartitionError("empty nontrivial relation")
            cover += b.members
        dom = trivial_labels(n) == -1
        if (cover[~dom] > 0).any():
            raise PartitionError("nontrivial relation contains a triple with a repeated coordinate")
        if (cover[dom] > 1).any():
            raise PartitionError("nontrivial relations overlap")
        if (cover[dom] == 0).any():
            missing = index_triple(n, np.flatnonzero(dom & (cover == 0))[0])
            raise PartitionError(f"relations do not cover the cube; {missing} is missing")
        blocks.sort(key=lambda b: int(b.indices()[0]))
        self.n = n
        self.relations = tuple(trivial_relations(n)) + tuple(blocks)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[Triple]]) -> ASTCandidate:
        return cls(n, [TernaryRelation.from_triples(n, b) for b in blocks])

    @classmethod
    def from_relations(cls, n: int, relations: Sequence[TernaryRelation]) -> ASTCandidate:
        """Build from a full relation list whose first four must be R0..R3."""
        triv = trivial_relations(n)
        if len(relations) < 5:
            raise PartitionError("expected the four trivial relations and at least one more")
        for i in range(4):
            if relations[i] != triv[i]:
                raise PartitionError(f"relation {i} is not the trivial relation R{i}")
        return cls(n, relations[4:])

    @classmethod
    def from_labels(cls, n: int, labels: np.ndarray) -> ASTCandidate:
        """Build from labels over the all-distinct triples (lexicographic order)."""
        labels = np.asarray(labels)
        dom = domain_indices(n)
        blocks = []
        for b in np.unique(labels):
            m = np.zeros(n ** 3, dtype=bool)
            m[dom[labels == b]] = True
            blocks.append(TernaryRelation(n, m))
        return cls(n, blocks)

    @property
    def order(self) -> int:
        return len(self.relations) - 1

    @property
    def nontrivial(self) -> tuple[TernaryRelation, ...]:
        return self.relations[4:]

    @cached_property
    def labels(self) -> np.ndarray:
        """Relation index of every cube triple, as an ``(n**3,)`` array."""
        lab = np.empty(self.n ** 3, dtype=np.int64)
        for i, r in enumerate(self.relations):
            lab[r.members] = i
        lab.setflags(write=False)
        return lab

    def __eq__(self, other) -> bool:
        if not isinstance(other, ASTCandidate):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.labels, other.labels))

    def __hash__(self) -> int:
        return hash((self.n, self.labels.tobytes()))

    def __repr__(self) -> str:
        sizes = [len(r) for r in self.nontrivial]
        return f"ASTCandidate(n={self.n}, order={self.order}, nontrivial_sizes={sizes})"

    def to_triples(self) -> list[tuple[Triple, ...]]:
        return [r.triples() for r in self.relations]


def canonical_form(x: ASTCandidate) -> CanonicalKey:
    """Nontrivial blocks as sorted triple tuples, blocks ordered by least triple."""
    return tuple(r.triples() for r in x.nontrivial)


def act_on_partition(p: Permutation, x: ASTCandidate) -> ASTCandidate:
    """Relabel every relation of ``x`` by ``p``; trivial relations map to themselves."""
    if p.n != x.n:
        raise PartitionError("permutation degree does not match candidate")
    return ASTCandidate(x.n, [relabel_relation(p, r) for r in x.nontrivial])
