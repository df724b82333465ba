import numpy as np
import pytest
from sympy.combinatorics.named_groups import SymmetricGroup

from simplicial.groups import (
    FiniteGroup, GroupError, GroupHom, Subgroup, commutator_subgroup, evaluate_word,
    express_as_word, generate, image, kernel_meet_join, setwise_product, trivial_subgroup, whole,
)


@pytest.fixture(scope='module')
def s3():
    return FiniteGroup.from_sympy(SymmetricGroup(3), name="S3")


def _element(G, label):
    return G.labels.index(label)


def test_sympy_groups_put_the_identity_first(s3):
    assert s3.order == 6
    assert s3.labels[0] == "[0, 1, 2]"
    assert not s3.is_abelian()


def test_commutator_subgroup_of_s3_is_a3(s3):
    derived = commutator_subgroup(whole(s3), whole(s3))
    assert derived.order == 3
    assert set(derived.labels()) == {"[0, 1, 2]", "[1, 2, 0]", "[2, 0, 1]"}
    assert derived.is_normal()


def test_transposition_generates_order_two_with_normal_closure_everything(s3):
    t = _element(s3, "[0, 2, 1]")
    assert generate(s3, [t]).order == 2
    assert generate(s3, [t], 'normal_closure').is_whole()


def test_cyclic_group():
    Z4 = FiniteGroup.cyclic(4)
    assert Z4.is_abelian()
    assert Z4.power(1, 3) == 3
    assert Z4.inv(1) == 3
    assert generate(Z4, [2]).members == (0, 2)


def test_table_must_be_a_group():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[1, 0], [0, 1]])


def test_non_homomorphism_is_rejected():
    Z4 = FiniteGroup.cyclic(4)
    with pytest.raises(GroupError):
        GroupHom(Z4, Z4, [0, 1, 1, 3])


def test_homomorphism_from_generators(s3):
    Z2 = FiniteGroup.cyclic(2)
    t = _element(s3, "[0, 2, 1]")
    r = _element(s3, "[1, 2, 0]")
    sign = GroupHom.from_generators(s3, Z2, {t: 1, r: 0})
    kernel = kernel_meet_join([sign], 'kernel')
    assert kernel == commutator_subgroup(whole(s3), whole(s3))
    assert image(sign).is_whole()


def test_inconsistent_generator_images_are_rejected(s3):
    Z3 = FiniteGroup.cyclic(3)
    t = _element(s3, "[0, 2, 1]")
    with pytest.raises(GroupError):
        GroupHom.from_generators(s3, Z3, {t: 1})


def test_meet_and_join_of_subgroups(s3):
    a = generate(s3, [_element(s3, "[0, 2, 1]")])
    b = generate(s3, [_element(s3, "[1, 0, 2]")])
    assert kernel_meet_join([a, b], 'intersect').is_trivial()
    assert kernel_meet_join([a, b], 'product_span').is_whole()


def test_setwise_product_of_two_transposition_groups_is_not_a_subgroup(s3):
    a = generate(s3, [_element(s3, "[0, 2, 1]")])
    b = generate(s3, [_element(s3, "[1, 0, 2]")])
    product = setwise_product(a, b)
    assert product.order == 4
    assert not product.is_closed()


def test_words_evaluate_back(s3):
    gens = [_element(s3, "[0, 2, 1]"), _element(s3, "[1, 2, 0]")]
    for target in range(s3.order):
        word = express_as_word(s3, target, gens)
        assert word is not None
        assert evaluate_word(s3, word, gens) == target


def test_unreachable_target_has_no_word(s3):
    gens = [_element(s3, "[1, 2, 0]")]
    assert express_as_word(s3, _element(s3, "[0, 2, 1]"), gens) is None


def test_conjugation_and_commutator_agree(s3):
    for h in range(s3.order):
        for k in range(s3.order):
            assert s3.commutator(h, k) == s3.mul(s3.conj(h, k), s3.inv(k))


def test_trivial_subgroup(s3):
    assert trivial_subgroup(s3).is_trivial()
    assert Subgroup(s3, [0]) == trivial_subgroup(s3)
    assert np.array_equal(s3.table[0], np.arange(6))
