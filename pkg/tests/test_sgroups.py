import numpy as np
import pytest

from services.library import Library
from simplicial.groups import FiniteGroup, GroupHom
from simplicial.sgroups import (
    SimplicialGroupError, boundary_image, constant_sgroup, crossed_module_axioms,
    crossed_module_build, degenerate_part, moore, moore_subgroup, pc2_counts_match,
    pc2_decompose, pc2_recompose, theorem2_check, theta_conj, theta_normality, validate_sgroup,
)


def _z6_over_z2():
    M, P = FiniteGroup.cyclic(6), FiniteGroup.cyclic(2)
    boundary = GroupHom(M, P, [x % 2 for x in range(6)])
    act = np.array([list(range(6)), [(-x) % 6 for x in range(6)]])
    return M, P, boundary, act


def test_library_groups_are_simplicial():
    groups = Library.simplicial_groups()
    assert 'pcm_d6' in groups
    for name, G in groups.items():
        assert validate_sgroup(G) is None, name


def test_nerve_orders(cm_z4_z2):
    assert cm_z4_z2.orders() == [2, 8, 32, 128]


def test_crossed_module_has_equal_sides(cm_s3):
    report = theorem2_check(cm_s3, 2)
    assert report.verdict == 'equal'
    assert report.inclusion_ok


def test_abelian_k_group_needs_the_hypothesis(kc_z4):
    report = theorem2_check(kc_z4, 2)
    assert report.verdict == 'lhs⊋rhs'
    assert not report.degenerate
    assert report.rhs.is_trivial()
    assert not report.lhs.is_trivial()


def test_precrossed_module_boundaries_are_certified(pcm_d6):
    report = theorem2_check(pcm_d6, 2)
    assert report.verdict == 'equal'
    assert report.lhs.order > 1
    assert report.certificates
    assert report.uncertified == []
    group = pcm_d6.levels[1]
    for target, factors in report.certificates.items():
        value = group.product(group.power(group.commutator(f.u, f.v), f.exponent) for f in factors)
        assert value == target


def test_theorem2_range(cm_s3):
    with pytest.raises(SimplicialGroupError):
        theorem2_check(cm_s3, 1)
    with pytest.raises(SimplicialGroupError):
        theorem2_check(cm_s3, 3)


@pytest.mark.parametrize('n', [0, 1, 2])
def test_decomposition_recomposes_every_element(cm_s3, n):
    for x in range(cm_s3.levels[n].order):
        parts = pc2_decompose(cm_s3, n, x)
        assert pc2_recompose(cm_s3, n, parts) == x
        for I, x_I in parts:
            assert x_I in moore_subgroup(cm_s3, n - len(I))


@pytest.mark.parametrize('name', ['cm_s3_s3', 'cm_z4_z2', 'pcm_d6', 'kc_z4_shifted'])
def test_level_orders_factor_through_moore(name):
    G = Library.get(name)
    assert all(pc2_counts_match(G, n) for n in range(G.top + 1))


def test_decompose_rejects_foreign_elements(cm_s3):
    with pytest.raises(SimplicialGroupError):
        pc2_decompose(cm_s3, 1, cm_s3.levels[1].order)


def test_constant_group_has_trivial_moore_tail():
    G = constant_sgroup(FiniteGroup.cyclic(3), 3)
    assert validate_sgroup(G) is None
    assert moore_subgroup(G, 0).order == 3
    assert all(moore_subgroup(G, n).is_trivial() for n in range(1, 4))
    assert degenerate_part(G, 2).order == 3


def test_moore_boundaries_are_normal_cycles(pcm_d6):
    data = moore(pcm_d6)
    assert data.cycles_ok and data.normal_ok
    assert data.to_dict()['orders'][0] == 2


@pytest.mark.parametrize('name', ['cm_s3_s3', 'pcm_d6'])
def test_theta_conjugation_certificates(name):
    G = Library.get(name)
    assert theta_normality(G, 2) is None


def test_theta_rejects_elements_outside_moore(cm_s3):
    outside = next(x for x in range(cm_s3.levels[2].order) if x not in moore_subgroup(cm_s3, 2))
    with pytest.raises(SimplicialGroupError):
        theta_conj(cm_s3, 2, 0, outside)


def test_negation_action_satisfies_only_the_first_axiom():
    M, P, boundary, act = _z6_over_z2()
    assert crossed_module_axioms(M, P, boundary, act, peiffer=False) is None
    assert crossed_module_axioms(M, P, boundary, act) == 'CM2'
    with pytest.raises(SimplicialGroupError, match='CM2'):
        crossed_module_build(M, P, boundary, act, 2)


def test_action_must_be_by_automorphisms():
    M, P, boundary, act = _z6_over_z2()
    act[1] = [0, 2, 1, 3, 4, 5]
    with pytest.raises(SimplicialGroupError):
        crossed_module_build(M, P, boundary, act, 2)


def test_nerve_respects_the_order_cap():
    Z4, Z2 = FiniteGroup.cyclic(4), FiniteGroup.cyclic(2)
    boundary = GroupHom(Z4, Z2, [x % 2 for x in range(4)])
    act = np.tile(np.arange(4), (2, 1))
    with pytest.raises(SimplicialGroupError):
        crossed_module_build(Z4, Z2, boundary, act, 3, order_cap=100)


def test_boundary_image_lives_in_the_level_below(cm_s3):
    assert boundary_image(cm_s3, 1).ambient == cm_s3.levels[0]
    with pytest.raises(SimplicialGroupError):
        boundary_image(cm_s3, 0)
