"""Small permutation groups on {1..n} and their actions on triples.

Groups here are tiny (order at most a few thousand), so every group is stored
with its full element list.  Two actions on triples are kept apart on purpose:

* ``"relabel"``: a permutation of vertices applied to each coordinate,
  ``(x, y, z) -> (p(x), p(y), p(z))``.
* ``"coord"``: a permutation of the three coordinate *positions*,
  ``(x1, x2, x3) -> (x_c(1), x_c(2), x_c(3))``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

Triple = tuple[int, int, int]

RELABEL = "relabel"
COORD = "coord"
ACTIONS = (RELABEL, COORD)


class GroupError(ValueError):
    """Raised for invalid permutations, generator lists or group specs."""


class DomainError(ValueError):
    """Raised when a group action maps a domain point outside the domain."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}; ``image[v - 1]`` is the image of vertex ``v``."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise GroupError(f"not a permutation of 1..{len(image)}: {image}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from disjoint cycles, e.g. ``from_cycles(4, [(1, 2, 3, 4)])``."""
        image = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(v) for v in cyc]
            for v in cyc:
                if not 1 <= v <= n:
                    raise GroupError(f"cycle entry {v} outside 1..{n}")
                if v in seen:
                    raise GroupError(f"vertex {v} repeated in cycle notation")
                seen.add(v)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                image[a - 1] = b
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # (p * q)(v) = p(q(v)): q acts first.
        if other.n != self.n:
            raise GroupError("cannot compose permutations of different degree")
        return Permutation(tuple(self.image[w - 1] for w in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for v, w in enumerate(self.image, start=1):
            inv[w - 1] = v
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.image == tuple(range(1, self.n + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element."""
        out, seen = [], set()
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            cyc = [v]
            seen.add(v)
            w = self(v)
            while w != v:
                cyc.append(w)
                seen.add(w)
                w = self(w)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group with its elements enumerated (identity first)."""

    n: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._element_set

    @property
    def _element_set(self) -> frozenset[Permutation]:
        cached = self.__dict__.get("_elset")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_elset", cached)
        return cached

    def describe(self) -> str:
        if not self.generators:
            return "trivial"
        return ";".join(str(g) for g in self.generators)


def group_from_generators(n: int, gens: Iterable[Permutation | Sequence[int]],
                          max_order: int | None = None) -> PermGroup:
    """Close ``gens`` under composition and return the generated group.

    Generators may be given as :class:`Permutation` or as image sequences.
    ``max_order`` defaults to ``n!``; enumeration stops with
    :class:`GroupError` as soon as it is exceeded.
    """
    if n < 1:
        raise GroupError("degree must be positive")
    cap = math.factorial(n) if max_order is None else max_order
    gens = tuple(g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in gens)
    for g in gens:
        if g.n != n:
            raise GroupError(f"generator {g} has degree {g.n}, expected {n}")
    ident = Permutation.identity(n)
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = g * h
            if k not in seen:
                seen.add(k)
                elements.append(k)
                if len(elements) > cap:
                    raise GroupError(f"group order exceeds cap {cap}")
                queue.append(k)
    return PermGroup(n, gens, tuple(elements))


def trivial_group(n: int) -> PermGroup:
    return group_from_generators(n, [])


def symmetric_group(n: int) -> PermGroup:
    """All n! permutations, in lexicographic order of their images."""
    elements = tuple(Permutation(p) for p in permutations(range(1, n + 1)))
    gens: tuple[Permutation, ...] = ()
    if n >= 2:
        gens = (Permutation.from_cycles(n, [(1, 2)]),
                Permutation.from_cycles(n, [tuple(range(1, n + 1))]))
    return PermGroup(n, gens, elements)


def cyclic_group(n: int, cycle: Sequence[int] | None = None) -> PermGroup:
    """Group generated by one cycle (default ``(1, 2, ..., n)``)."""
    cycle = tuple(range(1, n + 1)) if cycle is None else tuple(cycle)
    return group_from_generators(n, [Permutation.from_cycles(n, [cycle])])


def coordinate_group() -> PermGroup:
    """S3 on the three coordinate positions, for use with the ``coord`` action."""
    return symmetric_group(3)


COORD_PERMS: tuple[Permutation, ...] = coordinate_group().elements


def relabel_triple(p: Permutation, t: Triple) -> Triple:
    return (p(t[0]), p(t[1]), p(t[2]))


def coord_permute(c: Permutation, t: Triple) -> Triple:
    """Return ``(t[c(1)], t[c(2)], t[c(3)])``."""
    return (t[c(1) - 1], t[c(2) - 1], t[c(3) - 1])


def act_on_triple(p: Permutation, t: Triple, action: str = RELABEL) -> Triple:
    if action == RELABEL:
        return relabel_triple(p, t)
    if action == COORD:
        return coord_permute(p, t)
    raise GroupError(f"unknown action {action!r}")


def orbits(g: PermGroup, domain: Iterable[Triple], action: str = RELABEL) -> list[tuple[Triple, ...]]:
    """Orbit partition of ``domain`` under ``g``.

    Orbits are grown breadth-first from the least unvisited point; each orbit
    is sorted and the list is ordered by least element.
    """
    if action not in ACTIONS:
        raise GroupError(f"unknown action {action!r}")
    if action == COORD and g.n != 3:
        raise GroupError("the coordinate action needs a group on 3 positions")
    points = sorted(set(tuple(t) for t in domain))
    inside = set(points)
    visited: set[Triple] = set()
    out = []
    for start in points:
        if start in visited:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            t = queue.popleft()
            for p in g.generators:
                u = act_on_triple(p, t, action)
                if u not in inside:
                    raise DomainError(f"{p} maps {t} to {u}, outside the domain")
                if u not in orbit:
                    orbit.add(u)
                    queue.append(u)
        visited |= orbit
        out.append(tuple(sorted(orbit)))
    return out


def stabilizer(g: PermGroup, t: Triple, action: str = RELABEL) -> list[Permutation]:
    return [p for p in g if act_on_triple(p, t, action) == t]


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(n: int, text: str) -> Permutation:
    """Parse cycle notation such as ``"(1,2)(3,4,5)"``; ``"()"`` is the identity."""
    text = text.strip()
    if not text:
        raise GroupError("empty permutation")
    if _CYCLE_RE.sub("", text).strip():
        raise GroupError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        try:
            cycles.append([int(v) for v in body.split(",")])
        except ValueError:
            raise GroupError(f"malformed cycle {body!r}") from None
    return Permutation.from_cycles(n, cycles)


def parse_group_spec(n: int, spec: str) -> tuple[PermGroup, str]:
    """Parse a ``--group`` value into ``(group, action)``.

    Grammar: ``trivial``, ``coord-s3``, ``cyclic:(c1,...,ck)`` and
    ``perm:<cycles>;<cycles>;...`` (one generator per ``;`` field).
    """
    spec = spec.strip()
    if spec == "trivial":
        return trivial_group(n), RELABEL
    if spec == "coord-s3":
        return coordinate_group(), COORD
    if spec.startswith("cyclic:"):
        perm = parse_cycles(n, spec[len("cyclic:"):])
        if len(perm.cycles()) > 1:
            raise GroupError("cyclic: expects a single cycle")
        return group_from_generators(n, [perm]), RELABEL
    if spec.startswith("perm:"):
        body = spec[len("perm:"):].strip().strip('"').strip("'")
        gens = [parse_cycles(n, part) for part in body.split(";") if part.strip()]
        return group_from_generators(n, gens), RELABEL
    raise GroupError(f"unrecognised group spec {spec!r}")


def n_cycles(n: int) -> list[Permutation]:
    """All (n-1)! permutations consisting of a single n-cycle."""
    return [Permutation.from_cycles(n, [(1,) + rest]) for rest in permutations(range(2, n + 1))]
