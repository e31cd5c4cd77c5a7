import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ternary_schemes.groups import Permutation, symmetric_group
from ternary_schemes.relations import (
    ASTCandidate,
    PartitionError,
    TernaryRelation,
    act_on_partition,
    canonical_form,
    index_triple,
    nontrivial_domain,
    relabel_relation,
    triple_index,
    trivial_relations,
)


@pytest.mark.parametrize("n,sizes,rest", [(3, (3, 6, 6, 6), 6), (4, (4, 12, 12, 12), 24),
                                          (5, (5, 20, 20, 20), 60)])
def test_trivial_relation_sizes(n, sizes, rest):
    assert tuple(len(r) for r in trivial_relations(n)) == sizes
    assert len(nontrivial_domain(n)) == rest
    assert sum(sizes) + rest == n ** 3


def test_trivial_relation_shapes():
    r0, r1, r2, r3 = trivial_relations(3)
    assert (2, 2, 2) in r0
    assert (2, 1, 1) in r1 and (1, 2, 1) not in r1
    assert (1, 2, 1) in r2
    assert (1, 1, 2) in r3
    with pytest.raises(PartitionError):
        trivial_relations(2)
    with pytest.raises(PartitionError):
        nontrivial_domain(2)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_index_roundtrip(n):
    for i in range(n ** 3):
        assert triple_index(n, index_triple(n, i)) == i
    idx = [triple_index(n, t) for t in nontrivial_domain(n)]
    assert idx == sorted(idx)


def test_relabel_relation():
    n = 4
    dom = nontrivial_domain(n)
    r1 = trivial_relations(n)[1]
    for p in symmetric_group(n):
        assert relabel_relation(p, dom) == dom
        assert relabel_relation(p, r1) == r1
    ident = Permutation.identity(n)
    some = TernaryRelation.from_triples(n, [(1, 2, 3), (2, 4, 1)])
    assert relabel_relation(ident, some) == some


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(1, 5)), st.sets(st.integers(0, 63)), st.sets(st.integers(0, 63)))
def test_relabel_commutes_with_union(perm, a, b):
    p = Permutation(tuple(perm))
    ra = TernaryRelation.from_triples(4, [index_triple(4, i) for i in a])
    rb = TernaryRelation.from_triples(4, [index_triple(4, i) for i in b])
    assert relabel_relation(p, ra | rb) == relabel_relation(p, ra) | relabel_relation(p, rb)
    assert len(relabel_relation(p, ra)) == len(ra)


def test_candidate_invariants(order5_n4):
    x = order5_n4
    assert x.order == 5
    assert list(x.relations[:4]) == trivial_relations(4)
    assert sum(len(r) for r in x.relations) == 64
    with pytest.raises(PartitionError):
        ASTCandidate.from_blocks(4, [[(1, 2, 3)]])
    with pytest.raises(PartitionError):
        ASTCandidate.from_blocks(3, [list(nontrivial_domain(3)), [(1, 2, 3)]])
    with pytest.raises(PartitionError):
        ASTCandidate.from_blocks(3, [list(nontrivial_domain(3)) + [(1, 1, 2)]])
    with pytest.raises(PartitionError):
        ASTCandidate(3, [nontrivial_domain(3), TernaryRelation(3, np.zeros(27, bool))])


def test_canonical_form_ignores_block_order():
    dom = list(nontrivial_domain(4))
    blocks = [dom[:6], dom[6:15], dom[15:]]
    a = ASTCandidate.from_blocks(4, blocks)
    b = ASTCandidate.from_blocks(4, blocks[::-1])
    assert canonical_form(a) == canonical_form(b)
    assert [blk[0] for blk in canonical_form(a)] == sorted(blk[0] for blk in canonical_form(a))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=24, max_size=24), st.randoms(use_true_random=False))
def test_canonical_form_iff_same_partition(labels, rnd):
    labels = np.array(labels)
    x = ASTCandidate.from_labels(4, labels)
    # Renaming labels does not change the partition.
    names = list(range(10))
    rnd.shuffle(names)
    y = ASTCandidate.from_labels(4, np.array([names[v] for v in labels]))
    assert canonical_form(x) == canonical_form(y)
    # Moving one triple into its own block changes it.
    pos = rnd.randrange(24)
    moved = labels.copy()
    moved[pos] = 99
    z = ASTCandidate.from_labels(4, moved)
    same = (labels == labels[pos]).sum() == 1
    assert (canonical_form(x) == canonical_form(z)) == same


def test_act_on_partition_examples(unique_n3):
    dom = list(nontrivial_domain(3))
    x = ASTCandidate.from_blocks(3, [[(1, 2, 3)], [t for t in dom if t != (1, 2, 3)]])
    assert act_on_partition(Permutation.identity(3), x) == x
    for p in symmetric_group(3):
        assert act_on_partition(p, unique_n3) == unique_n3
    swapped = act_on_partition(Permutation.from_cycles(3, [(1, 2)]), x)
    assert canonical_form(swapped) == (
        ((1, 2, 3), (1, 3, 2), (2, 3, 1), (3, 1, 2), (3, 2, 1)),
        ((2, 1, 3),),
    )


def test_act_on_partition_action_law():
    rng = random.Random(7)
    dom = list(nontrivial_domain(4))
    g = list(symmetric_group(4))
    for _ in range(20):
        labels = np.array([rng.randrange(3) for _ in dom])
        x = ASTCandidate.from_labels(4, labels)
        p, q = rng.choice(g), rng.choice(g)
        assert act_on_partition(p * q, x) == act_on_partition(p, act_on_partition(q, x))
        y = act_on_partition(p, x)
        assert list(y.relations[:4]) == trivial_relations(4)
