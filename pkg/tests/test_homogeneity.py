from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homtoric.cox import GroupSizes, SubgroupSpec, punctured_fan, quotient_fan
from homtoric.exact_lattice import SublatticeBasis, row_span
from homtoric.fan import fan_equal, make_fan
from homtoric.homogeneity import (
    EXTRA_CONE,
    GROUP_TOO_SMALL,
    MISSING_CONE,
    NONFACES_DONT_PARTITION,
    OVERLATTICE_CONDITION_FAILED,
    RAYS_DONT_SPAN,
    RELATION_CONDITION_FAILED,
    HomogeneityCertificate,
    Rejection,
    acting_group_options,
    check_overlattice,
    check_relations,
    classify,
    minimal_nonfaces,
    recheck_rejection,
    recognize_partition,
    verify_certificate,
)
from homtoric.roundtrip import permute_rays

P2 = make_fan(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]])
MU2 = make_fan(2, [(1, 0), (1, 2)], [[0], [1]])
P1_A1 = make_fan(2, [(1, 0), (-1, 0), (0, 1)], [[0, 2], [1, 2]])


def one_group(rays):
    return make_fan(2, rays, [[0], [1]])


def group_sets(p):
    return [set(g) for g in p.groups]


def test_minimal_nonfaces_examples():
    assert minimal_nonfaces(punctured_fan(GroupSizes((2, 2)))) == [(0, 1), (2, 3)]
    assert minimal_nonfaces(P2) == [(0, 1, 2)]
    assert minimal_nonfaces(make_fan(1, [(1,)], [[0]])) == []


def test_minimal_nonfaces_cap():
    with pytest.raises(ValueError):
        minimal_nonfaces(P2, max_rays=2)


def test_recognize_partition_examples():
    p = recognize_partition(punctured_fan(GroupSizes((2, 3))))
    assert group_sets(p) == [{0, 1}, {2, 3, 4}]
    assert group_sets(recognize_partition(P2)) == [{0, 1, 2}]
    rej = recognize_partition(P1_A1)
    assert rej.reason == NONFACES_DONT_PARTITION and not rej
    assert rej.witness["ray"] == 2 and recheck_rejection(P1_A1, rej)


def test_rays_dont_span():
    f = make_fan(2, [(1, 0), (-1, 0)], [[0], [1]])
    rej = classify(f)
    assert rej.reason == RAYS_DONT_SPAN and recheck_rejection(f, rej)


def test_group_too_small():
    # every ray spans a cone, but ray 2 alone is not a cone of this fan
    f = make_fan(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [0], [1]])
    rej = classify(f)
    assert rej.reason in (GROUP_TOO_SMALL, NONFACES_DONT_PARTITION)
    assert recheck_rejection(f, rej)


def test_missing_cone():
    # two groups {0,1},{2,3} but one 2-cone of the product is absent
    rays = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    f = make_fan(2, rays, [[0, 2], [0, 3], [1, 2], [1]])
    rej = classify(f)
    assert isinstance(rej, Rejection)
    assert recheck_rejection(f, rej)


def test_check_relations_examples():
    assert check_relations(P2, recognize_partition(P2))
    rays = [(1, 0), (-1, 0), (0, 1), (1, -1)]
    f = make_fan(2, rays, [[0, 2], [0, 3], [1, 2], [1, 3]])
    p = recognize_partition(f)
    assert group_sets(p) == [{0, 1}, {2, 3}]
    assert not check_relations(f, p)
    rej = classify(f)
    assert rej.reason == RELATION_CONDITION_FAILED and recheck_rejection(f, rej)
    c2 = punctured_fan(GroupSizes((2,)))
    assert check_relations(c2, recognize_partition(c2))


@pytest.mark.parametrize("rays, ok", [
    ([(1, 0), (3, 4)], True),
    ([(1, 0), (1, 4)], False),
    ([(1, 0), (0, 1)], True),
    ([(1, 0), (1, 2)], True),
])
def test_check_overlattice_examples(rays, ok):
    f = one_group(rays)
    assert check_overlattice(f, recognize_partition(f)) is ok


def test_classify_examples():
    c22 = classify(punctured_fan(GroupSizes((2, 2))))
    assert c22.sizes.sizes == (2, 2) and c22.subgroup.relations == SublatticeBasis.full(2)
    cp2 = classify(P2)
    assert cp2.sizes.sizes == (3,) and cp2.subgroup.relations.rank == 0
    cmu = classify(MU2)
    assert cmu.sizes.sizes == (2,) and cmu.subgroup.relations == row_span([(2,)])
    # oracle: rebuild the quotient and compare fans
    assert fan_equal(quotient_fan(cmu.sizes, cmu.subgroup).fan, MU2)


def test_classify_mu4():
    c = classify(one_group([(1, 0), (3, 4)]))
    assert c.subgroup.relations == row_span([(4,)])


def test_classify_overlattice_rejection():
    f = one_group([(1, 0), (1, 4)])
    rej = classify(f)
    assert rej.reason == OVERLATTICE_CONDITION_FAILED and recheck_rejection(f, rej)
    w = rej.witness
    assert w["modulus"] > 1


def test_verify_certificate_negatives():
    cert = classify(MU2)
    assert verify_certificate(MU2, cert)
    wrong = HomogeneityCertificate(cert.sizes, SubgroupSpec(row_span([(4,)])),
                                   cert.ray_assignment, cert.identification)
    assert not verify_certificate(MU2, wrong)
    assert not verify_certificate(make_fan(2, [(1, 0)], [[0]]), cert)


@pytest.mark.parametrize("sizes, expected", [
    ((2, 3), [("SL(2)", "Sp(2)"), ("SL(3)",)]),
    ((4,), [("SL(4)", "Sp(4)")]),
    ((3, 5), [("SL(3)",), ("SL(5)",)]),
])
def test_acting_group_options(sizes, expected):
    assert acting_group_options(GroupSizes(sizes)) == expected


def test_recheck_rejects_forged_witness():
    forged = Rejection(RELATION_CONDITION_FAILED, "forged", {"relation": [1, 1, 1], "groups": [[0, 1, 2]]})
    assert not recheck_rejection(P2, forged)
    forged = Rejection(MISSING_CONE, "forged", {"cone": [0, 1]})
    assert not recheck_rejection(P2, forged)
    assert not recheck_rejection(P2, Rejection(EXTRA_CONE, "forged", {"cone": [0, 1, 2], "group": [0, 1, 2]}))


# ---------------------------------------------------------------------------
# properties

cases = st.integers(1, 3).flatmap(lambda m: st.tuples(
    st.lists(st.integers(2, 4), min_size=m, max_size=m),
    st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), max_size=m),
    st.randoms(use_true_random=False),
))


def _recovered(sizes, S, cert):
    # compare A after matching groups by size via the assignment
    return sorted(cert.sizes.sizes) == sorted(sizes.sizes) and cert.subgroup.relations.rank == S.relations.rank


@settings(max_examples=60, deadline=None)
@given(cases)
def test_classify_accepts_every_quotient(case):
    sizes_raw, gens, rnd = case
    sizes = GroupSizes(tuple(sizes_raw))
    S = SubgroupSpec.from_generators(sizes.m, gens)
    f = quotient_fan(sizes, S).fan
    cert = classify(f)
    assert isinstance(cert, HomogeneityCertificate)
    assert verify_certificate(f, cert)
    assert _recovered(sizes, S, cert)
    # invariance under ray relabeling
    perm = list(range(f.n_rays))
    rnd.shuffle(perm)
    g = permute_rays(f, perm)
    cert2 = classify(g)
    assert cert2.sizes == cert.sizes
    assert cert2.subgroup.relations.rank == cert.subgroup.relations.rank
    assert {frozenset(g.rays[cert2.ray_assignment[i]] for i in grp) for grp in cert2.sizes.groups()} == \
        {frozenset(f.rays[cert.ray_assignment[i]] for i in grp) for grp in cert.sizes.groups()}
    # partition uniqueness: the groups are the same ray sets under the relabeling
    p1, p2 = recognize_partition(f), recognize_partition(g)
    assert {frozenset(f.rays[i] for i in grp) for grp in p1.groups} == \
        {frozenset(g.rays[i] for i in grp) for grp in p2.groups}


small_fans = st.tuples(
    st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=2, max_size=5, unique=True),
    st.randoms(use_true_random=False),
)


@settings(max_examples=150, deadline=None)
@given(small_fans)
def test_every_rejection_rechecks(data):
    raw, rnd = data
    rays = []
    for x, y in raw:
        g = gcd(x, y)
        if g and (x // g, y // g) not in rays:
            rays.append((x // g, y // g))
    if len(rays) < 2:
        return
    cones = [[i] for i in range(len(rays))]
    cones += [sorted(rnd.sample(range(len(rays)), 2)) for _ in range(rnd.randint(0, 3))]
    try:
        f = make_fan(2, rays, cones)
    except ValueError:
        return
    result = classify(f)
    if isinstance(result, Rejection):
        assert recheck_rejection(f, result), result
    else:
        assert verify_certificate(f, result)
