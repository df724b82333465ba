import itertools

import pytest
from hypothesis import given, settings, strategies as st

from simplicial.maps import (
    Operator, SimplicialMap, SimplicialMapError, SubsetTuple, canonical_composite,
    canonical_operators, codegeneracy, coface, compose, covering_tuples, degeneracy_subset,
    factor, fin_maps, identity, operators_map, product_order, simplicial_identities,
    surjection_from_subset,
)


def test_compose_applies_first_argument_first():
    f = coface(1, 0)
    g = coface(2, 0)
    assert compose(f, g).values == (2,)


def test_codegeneracy_after_coface_is_identity():
    assert compose(coface(1, 0), codegeneracy(0, 0)).is_identity


def test_compose_with_identity():
    f = coface(3, 1)
    assert compose(identity(2), f) == f
    assert compose(f, identity(3)) == f


def test_compose_rejects_dimension_mismatch():
    with pytest.raises(SimplicialMapError):
        compose(coface(1, 0), coface(3, 0))


def test_monotone_flag_is_conjunction():
    twist = SimplicialMap(1, 1, (1, 0), monotone=False)
    assert not compose(identity(1), twist).monotone
    assert compose(identity(1), identity(1)).monotone


@pytest.mark.parametrize('n', range(1, 6))
def test_codegeneracy_splits_cofaces(n):
    for i in range(n):
        assert compose(coface(n, i), codegeneracy(n - 1, i)).is_identity
        assert compose(coface(n, i + 1), codegeneracy(n - 1, i)).is_identity


@pytest.mark.parametrize('n', range(2, 6))
def test_cosimplicial_face_identity(n):
    # delta^j delta^i = delta^i delta^(j-1) for i < j
    for j in range(n + 1):
        for i in range(j):
            left = compose(coface(n - 1, i), coface(n, j))
            right = compose(coface(n - 1, j - 1), coface(n, i))
            assert left == right


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
@settings(max_examples=60, deadline=None)
def test_compose_is_associative(m, n, p, data):
    f = data.draw(st.sampled_from(list(fin_maps(m, n))))
    g = data.draw(st.sampled_from(list(fin_maps(n, p))))
    h = data.draw(st.sampled_from(list(fin_maps(p, 2))))
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_canonical_composite_of_empty_subset_is_identity():
    assert canonical_composite((), 'degeneracy', 2).is_identity
    assert canonical_composite((), 'face', 2).is_identity


def test_canonical_degeneracy_order():
    ops = canonical_operators((0, 1), 'degeneracy', 0)
    assert ops == [Operator('s', 0, 0), Operator('s', 1, 1)]


def test_canonical_face_order():
    ops = canonical_operators((0, 2), 'face', 3)
    assert ops == [Operator('d', 3, 2), Operator('d', 2, 0)]


@pytest.mark.parametrize('n', range(0, 4))
def test_faces_undo_degeneracies(n):
    for r in range(0, 4):
        for I in itertools.combinations(range(n + r), r):
            s = canonical_composite(I, 'degeneracy', n)
            d = canonical_composite(I, 'face', n + r)
            assert compose(d, s).is_identity


def test_factor_reproduces_monotone_maps():
    for alpha in fin_maps(2, 3, monotone=True):
        assert operators_map(factor(alpha), alpha.target_dim) == alpha


def test_degeneracy_subset_inverts_surjection():
    for I in [(), (0,), (1,), (0, 2), (0, 1, 2)]:
        alpha = surjection_from_subset(I, 3)
        assert degeneracy_subset(alpha) == I


def test_product_order_small_cases():
    assert product_order(0) == [()]
    assert product_order(1) == [(0,), ()]
    assert product_order(2) == [(0, 1), (0,), (1,), ()]


@pytest.mark.parametrize('n', range(0, 5))
def test_product_order_lists_every_subset_once(n):
    order = product_order(n)
    assert len(order) == 2 ** n
    assert len(set(order)) == 2 ** n
    assert order[-1] == ()


def test_covering_tuples_counts():
    assert covering_tuples(1, 1) == [SubsetTuple(1, ((0,),))]
    assert len(covering_tuples(2, 2, allow_empty=True)) == 9
    assert len(covering_tuples(2, 2)) == 7
    proper = covering_tuples(2, 2, proper=True)
    assert [t.parts for t in proper] == [((0,), (1,)), ((1,), (0,))]


@pytest.mark.parametrize('m,p', [(m, p) for m in range(0, 5) for p in range(0, 4)])
def test_covering_count_matches_inclusion_exclusion(m, p):
    # every point is covered: (2^p - 1)^m tuples with empty parts allowed
    assert len(covering_tuples(m, p, allow_empty=True)) == (2 ** p - 1) ** m


def test_operator_rejects_faces_on_level_zero():
    with pytest.raises(SimplicialMapError):
        Operator('d', 0, 0)


def test_identities_stay_in_range():
    for ident in simplicial_identities(3):
        for op in ident.lhs + ident.rhs:
            assert 0 <= op.level <= 3
            assert 0 <= op.target_level <= 3
