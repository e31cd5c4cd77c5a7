import numpy as np
import pytest

from ternary_schemes.axioms import CLOSURE, REGULARITY, VALENCY, check_coordinate_closure, validate_ast
from ternary_schemes.classify import (
    ClassificationJob,
    ConstructionError,
    OrbitStructure,
    ast_from_group_orbits,
    build_candidate,
    classify,
    isomorphism_classes,
    orbit_key,
)
from ternary_schemes.groups import (
    COORD,
    Permutation,
    coordinate_group,
    cyclic_group,
    group_from_generators,
    orbits,
    symmetric_group,
    trivial_group,
)
from ternary_schemes.partitions import bell, iter_rgs, iter_rgs_chunks
from ternary_schemes.relations import (
    ASTCandidate,
    act_on_partition,
    canonical_form,
    nontrivial_domain,
)
from ternary_schemes.reproduction import full_domain_scheme


def agl15():
    return group_from_generators(5, [Permutation.from_cycles(5, [(1, 2, 3, 4, 5)]),
                                     Permutation.from_cycles(5, [(1, 2, 4, 3)])])


def frobenius21():
    return group_from_generators(7, [Permutation.from_cycles(7, [(1, 2, 3, 4, 5, 6, 7)]),
                                     Permutation.from_cycles(7, [(2, 3, 5), (4, 7, 6)])])


def shape(result):
    return [(c.order, c.size) for c in result.classes]


def test_build_candidate():
    orbs = orbits(cyclic_group(4), list(nontrivial_domain(4)))
    x = build_candidate([orbs], 4)
    assert x == full_domain_scheme(4)
    y = build_candidate([orbs[:1], orbs[1:]], 4)
    assert y.order == 5 and len(y.relations[4]) == 4
    with pytest.raises(ValueError):
        build_candidate([orbs, []], 4)


def test_isomorphism_classes_merge_relabelings(order5_n4):
    imgs = [act_on_partition(p, order5_n4) for p in symmetric_group(4)]
    classes = isomorphism_classes(imgs, 4)
    assert len(classes) == 1
    c = classes[0]
    assert c.members == c.size == len(set(imgs))
    assert canonical_form(c.representative) == min(canonical_form(x) for x in imgs)
    both = isomorphism_classes([full_domain_scheme(4), order5_n4], 4)
    assert [c.order for c in both] == [4, 5]
    with pytest.raises(ValueError):
        isomorphism_classes([full_domain_scheme(3), order5_n4], 4)


def test_orbit_key_size(order5_n4, order6_n5):
    assert orbit_key(full_domain_scheme(5))[1] == 1
    key, size = orbit_key(order6_n5)
    # AGL(1,5) of order 20 stabilises the listed partition up to its label names.
    assert size == 120 // 20
    assert orbit_key(act_on_partition(Permutation.from_cycles(5, [(1, 2)]), order6_n5))[0] == key


def test_classify_n3_trivial(unique_n3):
    r = classify(ClassificationJob(3, trivial_group(3)))
    assert r.enumerated == bell(6) == 203
    assert len(r.classes) == 1
    assert r.classes[0].representative == unique_n3


def test_classify_n3_agrees_with_exhaustive_oracle():
    # Check every one of the 203 partitions with the axiom checker alone.
    found = []
    for k in range(1, 7):
        for rgs in iter_rgs(6, k):
            x = ASTCandidate.from_labels(3, np.array(rgs))
            if validate_ast(x).passed:
                found.append(canonical_form(x))
    r = classify(ClassificationJob(3, trivial_group(3)))
    members = sorted(found)
    assert members == [canonical_form(full_domain_scheme(3))]
    assert sum(c.members for c in r.classes) == len(members)


def test_classify_order_out_of_range():
    with pytest.raises(ValueError):
        classify(ClassificationJob(4, cyclic_group(4), orders=12))
    with pytest.raises(ValueError):
        ClassificationJob(4, cyclic_group(4), orders=3)


def test_classify_cyclic_n5(order6_n5):
    r = classify(ClassificationJob(5, cyclic_group(5)))
    assert shape(r) == [(4, 1), (6, 6)]
    assert r.n_orbits == 12
    six = r.classes[1]
    assert orbit_key(six.representative)[0] == orbit_key(order6_n5)[0]
    assert six.members == 1
    assert len(six.representative.relations) == 7


def test_classify_coord_action():
    r = classify(ClassificationJob(4, coordinate_group(), COORD))
    assert shape(r) == [(4, 1)]
    assert r.n_orbits == 4


def test_batch_filters_match_per_candidate_checks():
    st = OrbitStructure(5, cyclic_group(5))
    for k in (2, 3):
        A = next(iter_rgs_chunks(st.n_orbits, k, 4000))
        val = st.valency_mask(A, k)
        clo = st.closure_mask(A, k)
        for row, v, c in zip(A, val, clo):
            rep = validate_ast(st.candidate(row), disabled=(REGULARITY, CLOSURE))
            assert rep.passed == v
            rep = validate_ast(st.candidate(row), disabled=(REGULARITY, VALENCY))
            assert rep.passed == c


@pytest.mark.parametrize("n,g,orders", [
    (4, cyclic_group(4), None),
    (5, cyclic_group(5), None),
    (4, trivial_group(4), 5),
    (5, agl15(), None),
])
def test_legacy_matches_default(n, g, orders):
    job = ClassificationJob(n, g, orders=orders)
    a, b = classify(job), classify(job, legacy=True)
    assert a.class_keys() == b.class_keys()
    assert [c.members for c in a.classes] == [c.members for c in b.classes]
    assert [c.representative for c in a.classes] == [c.representative for c in b.classes]
    assert all(s.orbits is not None for s in b.stats)


def test_thread_count_does_not_change_results():
    job = ClassificationJob(5, cyclic_group(5))
    base = classify(job, threads=1, chunk=512)
    for t in (2, 4):
        r = classify(job, threads=t, chunk=512)
        assert r.class_keys() == base.class_keys()
        assert [(s.valency, s.closure, s.asts) for s in r.stats] == \
            [(s.valency, s.closure, s.asts) for s in base.stats]


def test_subgroup_finds_superset_of_classes():
    big = classify(ClassificationJob(5, agl15())).class_keys()
    small = classify(ClassificationJob(5, cyclic_group(5))).class_keys()
    assert set(big) <= set(small)


def test_regularity_needed_for_frobenius_group():
    job = ClassificationJob(7, frobenius21())
    full = classify(job)
    ablated = classify(job, disabled=(REGULARITY,))
    got = [(s.order, s.valency, s.closure, s.asts) for s in full.stats if 5 <= s.order <= 8]
    assert got == [(5, 125, 3, 2), (6, 650, 4, 0), (7, 600, 1, 0), (8, 120, 2, 1)]
    assert len(full.classes) == 3
    assert len(ablated.classes) > len(full.classes)
    for c in full.classes:
        assert validate_ast(c.representative).passed


def test_ast_from_two_transitive_groups(order6_n5):
    assert ast_from_group_orbits(symmetric_group(4), 4) == full_domain_scheme(4)
    x = ast_from_group_orbits(agl15(), 5)
    assert x.order == 6
    assert orbit_key(x)[0] == orbit_key(order6_n5)[0]


def test_ast_from_group_orbits_errors():
    with pytest.raises(ConstructionError, match="not two-transitive") as exc:
        ast_from_group_orbits(cyclic_group(4), 4)
    assert exc.value.report is None
    with pytest.raises(ConstructionError, match="not two-transitive"):
        ast_from_group_orbits(frobenius21(), 7)
    with pytest.raises(ValueError):
        ast_from_group_orbits(symmetric_group(3), 3)


def test_reversal_on_listing(order6_n5):
    # The cyclic listing has a relation fixed by reversal, so the scheme is not symmetric.
    from ternary_schemes.axioms import is_symmetric
    assert not is_symmetric(order6_n5, check_coordinate_closure(order6_n5))
