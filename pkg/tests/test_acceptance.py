"""
Seeded end-to-end runs at the documented instance counts
"""
import random
from itertools import combinations

import pytest

from services import Generator, Library, load_object
from simplicial.algebras import comm_collapse_rhs, theorem1_sides
from simplicial.complexes import validate
from simplicial.dold_kan import KConstruction, roundtrip_check
from simplicial.exterior import add_into, delta_derivation, lambda_action
from simplicial.maps import SimplicialMap, compose, fin_maps
from simplicial.modules import ScalarRing, span_ops
from simplicial.sgroups import theorem2_check

pytestmark = pytest.mark.acceptance

Z = ScalarRing()
Z5 = ScalarRing(5)


def _key(alpha):
    return alpha.source_dim, alpha.target_dim, alpha.values


def _exterior_basis(n):
    return [J for r in range(n + 1) for J in combinations(range(n), r)]


def _plus(x, y):
    out = dict(x)
    for J, c in y.items():
        add_into(out, J, c)
    return out


def _random_map(rng, m, n):
    return SimplicialMap(m, n, tuple(rng.randint(0, n) for _ in range(m + 1)), monotone=False)


# ---------- Dold-Kan roundtrips ----------

@pytest.mark.parametrize('seed', range(100))
def test_random_complex_roundtrip(seed):
    ring = (Z, Z5)[(seed // 5) % 2]
    top = seed % 5
    C = Generator(seed).chain_complex(ring, top, max_rank=4)
    assert all(C.level(i).rank <= 4 for i in range(top + 1))
    report = roundtrip_check(C, top=top)
    assert report.ok, report.failure


@pytest.mark.parametrize('seed', range(50))
def test_random_simplicial_module_roundtrip(seed):
    ring = (Z5, Z)[seed % 2]
    A = Generator(1000 + seed).simplicial_module(ring, 1 + seed % 4, max_rank=2)
    assert validate(A) is None
    report = roundtrip_check(A)
    assert report.ok, report.failure


# ---------- functoriality and the derivation law ----------

@pytest.fixture(scope='module')
def k_small(z4_shifted):
    K = KConstruction(z4_shifted, 3)
    return {_key(a): K.fin_map(a) for m in range(4) for n in range(4) for a in fin_maps(m, n)}


@pytest.mark.parametrize('p', range(4))
@pytest.mark.parametrize('n', range(4))
@pytest.mark.parametrize('m', range(4))
def test_k_is_functorial_on_every_small_map(k_small, m, n, p):
    for alpha in fin_maps(m, n):
        for beta in fin_maps(n, p):
            both = k_small[_key(compose(alpha, beta))]
            assert both.same_as(k_small[_key(beta)].then(k_small[_key(alpha)])), (alpha.values, beta.values)


@pytest.mark.parametrize('p', range(4))
@pytest.mark.parametrize('n', range(4))
@pytest.mark.parametrize('m', range(4))
def test_derivation_law_on_every_small_map(m, n, p):
    basis = _exterior_basis(p)
    for alpha in fin_maps(m, n):
        for beta in fin_maps(n, p):
            both = compose(alpha, beta)
            for J in basis:
                x = {J: 1}
                assert lambda_action(both, x) == lambda_action(alpha, lambda_action(beta, x))
                right = _plus(lambda_action(alpha, delta_derivation(beta, x)),
                              delta_derivation(alpha, lambda_action(beta, x)))
                assert delta_derivation(both, x) == right, (alpha.values, beta.values, J)


def test_random_maps_in_dimension_four(z4_shifted):
    K = KConstruction(z4_shifted, 4)
    rng = random.Random(4)
    basis = _exterior_basis(4)
    for _ in range(200):
        alpha, beta = _random_map(rng, 4, 4), _random_map(rng, 4, 4)
        both = compose(alpha, beta)
        assert K.fin_map(both).same_as(K.fin_map(beta).then(K.fin_map(alpha)))
        for J in basis:
            x = {J: 1}
            right = _plus(lambda_action(alpha, delta_derivation(beta, x)),
                          delta_derivation(alpha, lambda_action(beta, x)))
            assert delta_derivation(both, x) == right


# ---------- gamma sums on symmetric algebras ----------

SYMMETRIC_CASES = [(q, seed) for q in (2, 3) for seed in range(3)]


@pytest.fixture(scope='module')
def symmetric_instances():
    return {case: load_object(Generator(case[1]).symmetric_algebra(case[0], top=3))
            for case in SYMMETRIC_CASES}


def _assert_lifts(A, report):
    m = report.level
    assert report.lifts
    for lift in report.lifts:
        assert lift.ok, lift.to_dict()
        assert A.carrier.moore_subspan(m).contains_vector(lift.preimage)
        assert A.carrier.faces[m][m](lift.preimage) == lift.target
        faces = A.carrier.faces[m]
        assert all(A.level(m - 1).is_zero(faces[j](lift.lift)) for j in range(m + 1) if j != lift.r)
        assert faces[lift.r](lift.lift) == lift.target


@pytest.mark.parametrize('case', SYMMETRIC_CASES)
def test_symmetric_instances_on_level_two(symmetric_instances, case):
    A = symmetric_instances[case]
    report = theorem1_sides(A, 2, certify=True)
    assert report.hypothesis
    assert report.verdict == 'equal'
    assert span_ops(report.rhs, comm_collapse_rhs(A, 2), 'equal')
    _assert_lifts(A, report)


@pytest.mark.parametrize('case', SYMMETRIC_CASES)
def test_symmetric_instances_on_level_three(symmetric_instances, case):
    A = symmetric_instances[case]
    report = theorem1_sides(A, 3)
    assert report.hypothesis
    assert report.verdict == 'equal'
    assert span_ops(report.rhs, comm_collapse_rhs(A, 3), 'equal')


@pytest.mark.parametrize('name', ['sym_z2_deg1', 'sym_z3_deg1'])
def test_every_level_three_generator_lifts(name):
    A = Library.get(name)
    report = theorem1_sides(A, 3, certify=True)
    assert report.verdict == 'equal'
    assert report.uncertified == []
    _assert_lifts(A, report)


@pytest.mark.parametrize('q, seed', [(2, 0), (2, 1), (3, 0)])
def test_boundary_out_of_degree_two_breaks_equality(q, seed):
    A = load_object(Generator(seed).symmetric_algebra(q, top=2, violate=True))
    report = theorem1_sides(A, 2)
    assert not report.hypothesis
    assert report.verdict == 'lhs⊋rhs'
    assert report.inclusion_ok


# ---------- commutator products in simplicial groups ----------

GROUP_TYPES = ('crossed_module', 'precrossed_module', 'k_group')
LEVELS = [(name, n) for kind in GROUP_TYPES for name in Library.names(kind)
          for n in range(2, min(3, Library.document(name).get('top', 2)) + 1)]


@pytest.mark.parametrize('name, n', LEVELS)
def test_commutator_product_sits_in_the_boundary(name, n):
    G = Library.get(name)
    report = theorem2_check(G, n)
    assert report.inclusion_ok
    if report.degenerate:
        assert report.verdict == 'equal'
    else:
        assert report.verdict == ('equal' if report.lhs.order == 1 else 'lhs⊋rhs')
    if report.verdict == 'equal':
        assert report.uncertified == []
        assert set(report.certificates) <= set(report.lhs)


def test_library_covers_both_levels():
    groups = Library.simplicial_groups()
    assert len(groups) >= 6
    assert all(groups[name].top >= n for name, n in LEVELS)
    assert {n for _, n in LEVELS} == {2, 3}
