from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from simplicial.exterior import lambda_action
from simplicial.maps import Operator
from simplicial.near_ring import (
    NearRingError, NearRingWord, abelian_coefficients, certify_expression, degenerate_top,
    express_by_degeneracies, format_expression, generator_image, lex_degeneracy_word,
    monomial_product, nr_multiply, nr_simplicial,
)


def phi(level, *J, sign=1):
    return NearRingWord.monomial(level, tuple(J), sign)


def test_adjacent_inverse_letters_cancel():
    w = NearRingWord(2, ((1, (0,)), (-1, (0,))))
    assert w.is_zero()
    assert (phi(2, 1) - phi(2, 1)).is_zero()


def test_addition_is_not_commutative_as_words():
    a, b = phi(2, 0), phi(2, 1)
    assert a + b != b + a
    assert (a + b).abelianize() == (b + a).abelianize()


def test_monomial_product_signs():
    assert monomial_product((0,), (1,)) == (1, (0, 1))
    assert monomial_product((1,), (0,)) == (-1, (0, 1))
    assert monomial_product((0,), (0, 1)) == (0, ())


def test_one_is_a_two_sided_unit():
    x = phi(3, 0) - phi(3, 1, 2) + phi(3, 2)
    one = NearRingWord.one(3)
    assert one * x == x
    assert x * one == x


def test_multiplication_distributes_on_the_right():
    a, b, c = phi(3, 0), phi(3, 1, sign=-1), phi(3, 2) + phi(3, 0)
    assert (a + b) * c == a * c + b * c


def test_square_of_a_generator_is_zero():
    assert nr_multiply(phi(2, 0), phi(2, 0)).is_zero()


def test_words_print_in_order():
    assert str(phi(2, 0) - phi(2, 1)) == "φ0 -φ1"
    assert str(NearRingWord.zero(2)) == "0"
    assert (phi(3, 0, 2) + phi(3, 1)).degree() == 2


def test_letters_are_checked():
    with pytest.raises(NearRingError):
        NearRingWord(2, ((2, (0,)),))
    with pytest.raises(NearRingError):
        phi(2, 2)
    with pytest.raises(NearRingError):
        phi(2, 0) + phi(3, 0)


def test_last_face_conventions():
    op = Operator('d', 2, 2)
    assert generator_image(op, 1, 'literal').is_zero()
    assert generator_image(op, 1).abelianize() == {(0,): -1}
    with pytest.raises(NearRingError):
        generator_image(op, 0, 'other')


def test_first_expression():
    expr = express_by_degeneracies((1,), 2)
    assert expr == [(-1, (1,)), (1, (0,))]
    assert format_expression(expr) == "−s_1 + s_0"
    assert abelian_coefficients((1,), 2) == {(1,): -1, (0,): 1}


def test_top_monomial_is_its_own_expression():
    for m in range(1, 5):
        assert express_by_degeneracies(tuple(range(m)), m) == [(1, ())]
    assert format_expression([(1, ())]) == "id"


def test_first_index_needs_a_single_degeneracy():
    assert express_by_degeneracies((0,), 2) == [(1, (1,))]


@pytest.mark.parametrize('m', [1, 2, 3, 4])
def test_every_expression_reexpands(m):
    for r in range(m + 1):
        for J in combinations(range(m), r):
            assert certify_expression(J, m)


def test_expression_rejects_out_of_range_indices():
    with pytest.raises(NearRingError):
        express_by_degeneracies((3,), 2)


def test_lexicographic_word_has_the_same_abelianization():
    for m in (2, 3):
        for r in range(m + 1):
            for I in combinations(range(m), m - r):
                assert degenerate_top(I, r, m).abelianize() == lex_degeneracy_word(I, r, m).abelianize()


def test_degenerate_top_checks_levels():
    with pytest.raises(NearRingError):
        degenerate_top((0,), 2, 2)


operators = st.integers(1, 4).flatmap(
    lambda n: st.one_of(
        st.builds(Operator, st.just('d'), st.just(n), st.integers(0, n)),
        st.builds(Operator, st.just('s'), st.just(n), st.integers(0, n)),
    )
)


@given(operators, st.data())
@settings(max_examples=60, deadline=None)
def test_dual_operators_abelianize_to_the_exterior_action(op, data):
    n = op.level
    subsets = [J for r in range(n + 1) for J in combinations(range(n), r)]
    letters = data.draw(st.lists(st.tuples(st.sampled_from([1, -1]), st.sampled_from(subsets)), max_size=4))
    x = NearRingWord(n, tuple(letters))
    assert nr_simplicial(op, x).abelianize() == lambda_action(op.delta_map(), x.abelianize())
