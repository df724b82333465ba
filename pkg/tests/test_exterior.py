import itertools

import pytest
from hypothesis import given, settings, strategies as st

from simplicial.exterior import (
    ExteriorError, add_into, delta_derivation, lambda_action, monomials, top_monomial, wedge,
    zn_pullback,
)
from simplicial.maps import codegeneracy, coface, compose, fin_maps, identity


@st.composite
def fin_pair(draw, bound=3):
    m, n, p = (draw(st.integers(0, bound)) for _ in range(3))
    alpha = draw(st.sampled_from(list(fin_maps(m, n))))
    beta = draw(st.sampled_from(list(fin_maps(n, p))))
    return alpha, beta


@st.composite
def monomial_at(draw, level):
    subsets = [J for r in range(level + 1) for J in itertools.combinations(range(level), r)]
    return draw(st.sampled_from(subsets))


def _sum(x, y):
    out = dict(x)
    for J, c in y.items():
        add_into(out, J, c)
    return out


def test_first_degeneracy_on_phi0():
    assert zn_pullback(codegeneracy(1, 0), [1]) == [1, 1]


def test_inner_face_keeps_lower_generators():
    assert zn_pullback(coface(2, 1), [1, 0]) == [1]


@pytest.mark.parametrize('n', range(2, 6))
def test_last_face_on_last_generator(n):
    phi = [0] * (n - 1) + [1]
    assert zn_pullback(coface(n, n), phi) == [-1] * (n - 1)


def test_identity_acts_trivially():
    x = {(0, 2): 3, (1,): -1, (): 2}
    assert lambda_action(identity(3), x) == x


def test_degeneracy_on_a_wedge():
    assert lambda_action(codegeneracy(2, 0), {(0, 1): 1}) == {(0, 2): 1, (1, 2): 1}


def test_inner_face_kills_repeated_image():
    assert lambda_action(coface(2, 1), {(0, 1): 1}) == {}


def test_wedge_is_graded_commutative():
    assert wedge({(0,): 1}, {(1,): 1}) == {(0, 1): 1}
    assert wedge({(1,): 1}, {(0,): 1}) == {(0, 1): -1}
    assert wedge({(1,): 1}, {(1,): 1}) == {}
    assert wedge({(): 2}, {(0, 1): 1}) == {(0, 1): 2}


@pytest.mark.parametrize('m', range(1, 5))
def test_last_face_derivation_on_top_monomial(m):
    assert delta_derivation(coface(m, m), {top_monomial(m): 1}) == {top_monomial(m - 1): 1}


def test_derivation_vanishes_away_from_the_hit_index():
    # coface(2, 0) sends 1 to 2, and phi_0 does not contain 2
    assert delta_derivation(coface(2, 0), {(0,): 1}) == {}


def test_monomials_are_lexicographic():
    assert monomials(3, 2) == [(0, 1), (0, 2), (1, 2)]


@given(fin_pair(), st.data())
@settings(max_examples=100, deadline=None)
def test_pullback_is_functorial(pair, data):
    alpha, beta = pair
    J = data.draw(monomial_at(beta.target_dim))
    x = {J: 1}
    assert lambda_action(compose(alpha, beta), x) == lambda_action(alpha, lambda_action(beta, x))


@given(fin_pair(), st.data())
@settings(max_examples=100, deadline=None)
def test_derivation_law_for_composites(pair, data):
    alpha, beta = pair
    J = data.draw(monomial_at(beta.target_dim))
    x = {J: 1}
    left = delta_derivation(compose(alpha, beta), x)
    right = _sum(lambda_action(alpha, delta_derivation(beta, x)),
                 delta_derivation(alpha, lambda_action(beta, x)))
    assert left == right


@given(st.integers(0, 3), st.integers(0, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_pullback_is_multiplicative(m, n, data):
    alpha = data.draw(st.sampled_from(list(fin_maps(m, n))))
    J = data.draw(monomial_at(n))
    K = data.draw(monomial_at(n))
    product = wedge({J: 1}, {K: 1})
    assert lambda_action(alpha, product) == wedge(lambda_action(alpha, {J: 1}),
                                                  lambda_action(alpha, {K: 1}))


def test_pullback_rejects_a_vector_of_the_wrong_level():
    with pytest.raises(ExteriorError):
        zn_pullback(coface(2, 0), [1, 0, 0])


def test_action_rejects_a_monomial_above_the_level():
    with pytest.raises(ExteriorError):
        lambda_action(coface(2, 1), {(0, 2): 1})
