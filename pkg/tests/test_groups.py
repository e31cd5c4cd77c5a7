import math
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from ternary_schemes.groups import (
    COORD,
    COORD_PERMS,
    DomainError,
    GroupError,
    Permutation,
    coord_permute,
    coordinate_group,
    cyclic_group,
    group_from_generators,
    orbits,
    parse_cycles,
    parse_group_spec,
    relabel_triple,
    stabilizer,
    symmetric_group,
    trivial_group,
)
from ternary_schemes.relations import nontrivial_domain


def all_distinct(n):
    return list(nontrivial_domain(n))


def brute_orbits(g, domain, act):
    """Apply every element to every point; independent of the BFS in orbits()."""
    seen, out = set(), []
    for t in sorted(domain):
        if t in seen:
            continue
        orb = frozenset(act(p, t) for p in g.elements)
        seen |= orb
        out.append(orb)
    return sorted(out, key=min)


def test_group_orders():
    assert group_from_generators(3, []).order == 1
    assert group_from_generators(4, [Permutation.from_cycles(4, [(1, 2, 3, 4)])]).order == 4
    assert group_from_generators(5, [Permutation.from_cycles(5, [(1, 2, 3, 4, 5)])]).order == 5
    assert symmetric_group(5).order == 120


def test_group_rejects_bad_generators():
    with pytest.raises(GroupError):
        Permutation((1, 1, 2))
    with pytest.raises(GroupError):
        group_from_generators(4, [(1, 2, 2, 4)])
    with pytest.raises(GroupError):
        group_from_generators(4, [Permutation.from_cycles(3, [(1, 2)])])
    with pytest.raises(GroupError):
        group_from_generators(5, [Permutation.from_cycles(5, [(1, 2)]),
                                  Permutation.from_cycles(5, [(1, 2, 3, 4, 5)])], max_order=60)


@pytest.mark.parametrize("g", [cyclic_group(5), symmetric_group(4),
                               group_from_generators(5, [Permutation.from_cycles(5, [(1, 2, 3, 4, 5)]),
                                                         Permutation.from_cycles(5, [(1, 2, 4, 3)])])])
def test_group_closure(g):
    els = set(g.elements)
    assert Permutation.identity(g.n) in els
    assert all(p * q in els for p in els for q in els)
    assert all(p.inverse() in els for p in els)
    assert all(gen in els for gen in g.generators)
    assert math.factorial(g.n) % g.order == 0


def test_relabel_triple():
    c4 = Permutation.from_cycles(4, [(1, 2, 3, 4)])
    assert relabel_triple(Permutation.identity(3), (1, 2, 3)) == (1, 2, 3)
    assert relabel_triple(c4, (1, 2, 3)) == (2, 3, 4)
    assert relabel_triple(Permutation.from_cycles(3, [(1, 2, 3)]), (1, 1, 2)) == (2, 2, 3)


def test_coord_permute():
    ident, swap12 = Permutation.identity(3), Permutation.from_cycles(3, [(1, 2)])
    assert coord_permute(ident, (1, 2, 3)) == (1, 2, 3)
    assert coord_permute(swap12, (1, 2, 3)) == (2, 1, 3)
    cyc = Permutation.from_cycles(3, [(1, 2, 3)])
    assert coord_permute(cyc, (1, 1, 2)) == (1, 2, 1)
    assert len(set(COORD_PERMS)) == 6


def test_orbit_examples():
    orbs = orbits(trivial_group(3), all_distinct(3))
    assert len(orbs) == 6 and all(len(o) == 1 for o in orbs)

    orbs = orbits(coordinate_group(), all_distinct(4), COORD)
    assert [len(o) for o in orbs] == [6] * 4

    orbs = orbits(cyclic_group(5), all_distinct(5))
    assert [len(o) for o in orbs] == [5] * 12


def test_orbits_are_sorted_and_deterministic():
    orbs = orbits(cyclic_group(5), all_distinct(5))
    assert all(list(o) == sorted(o) for o in orbs)
    assert [o[0] for o in orbs] == sorted(o[0] for o in orbs)
    assert orbs == orbits(cyclic_group(5), list(reversed(all_distinct(5))))


def test_orbits_domain_error():
    with pytest.raises(DomainError):
        orbits(cyclic_group(4), [(1, 2, 3), (2, 3, 4)])


@pytest.mark.parametrize("n,g,action", [
    (4, cyclic_group(4), "relabel"),
    (5, cyclic_group(5), "relabel"),
    (4, symmetric_group(4), "relabel"),
    (5, coordinate_group(), COORD),
    (5, group_from_generators(5, [Permutation.from_cycles(5, [(1, 2, 3, 4, 5)]),
                                  Permutation.from_cycles(5, [(1, 2, 4, 3)])]), "relabel"),
])
def test_orbits_match_brute_force(n, g, action):
    act = coord_permute if action == COORD else relabel_triple
    dom = all_distinct(n)
    got = [frozenset(o) for o in orbits(g, dom, action)]
    assert got == brute_orbits(g, dom, act)
    assert sum(len(o) for o in got) == len(dom)


def test_subgroup_orbits_refine():
    dom = all_distinct(5)
    big = {t: i for i, o in enumerate(orbits(symmetric_group(5), dom)) for t in o}
    for o in orbits(cyclic_group(5), dom):
        assert len({big[t] for t in o}) == 1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_orbit_stabilizer(n):
    g = symmetric_group(n)
    sub = cyclic_group(n)
    for grp in (g, sub):
        for orb in orbits(grp, all_distinct(n)):
            for t in orb:
                assert len(orb) * len(stabilizer(grp, t)) == grp.order


perm5 = st.permutations(range(1, 6)).map(lambda p: Permutation(tuple(p)))


@settings(max_examples=60, deadline=None)
@given(perm5, perm5)
def test_composition_convention(p, q):
    for v in range(1, 6):
        assert (p * q)(v) == p(q(v))
    assert (p * p.inverse()).is_identity()


def test_parse_cycles_and_specs():
    assert parse_cycles(5, "(1,2)(3,4,5)") == Permutation((2, 1, 4, 5, 3))
    assert parse_cycles(3, "()").is_identity()
    with pytest.raises(GroupError):
        parse_cycles(4, "(1,2")
    with pytest.raises(GroupError):
        parse_cycles(4, "(1,1)")
    g, a = parse_group_spec(5, "cyclic:(1,2,3,4,5)")
    assert g.order == 5 and a == "relabel"
    g, a = parse_group_spec(4, "coord-s3")
    assert g.order == 6 and a == COORD
    g, _ = parse_group_spec(5, 'perm:"(1,2,3,4,5);(1,2,4,3)"')
    assert g.order == 20
    g, _ = parse_group_spec(4, "perm:(1,2);(1,2,3,4)")
    assert g.order == 24
    for bad in ("sym", "cyclic:(1,2)(3,4)", "perm:(1,9)"):
        with pytest.raises(GroupError):
            parse_group_spec(4, bad)


def test_str_roundtrip():
    for p in symmetric_group(4):
        assert parse_cycles(4, str(p)) == p
    assert [tuple(p.image) for p in symmetric_group(3)] == list(permutations((1, 2, 3)))
