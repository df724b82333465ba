import pytest

from simplicial.algebras import (
    AlgebraError, DecoratedTerm, SimplicialOperadAlgebra, Slot, bar_moore, comm_collapse_rhs,
    degeneracy_generation_check, fm_differential, pairing_lift, psi_map, quadratic_collapse_rhs,
    square_zero_example, subalgebra_generate, symmetric_example, theorem1_sides, validate_algebra,
)
from simplicial.complexes import ChainComplex
from simplicial.dold_kan import KConstruction
from simplicial.maps import SubsetTuple, coface
from simplicial.modules import ScalarRing, Subspan, span_ops
from simplicial.operads import build_operad


def test_symmetric_example_is_an_algebra(sym_z2):
    assert validate_algebra(sym_z2) is None


def test_square_zero_example_is_an_algebra(sq0_z2):
    assert validate_algebra(sq0_z2) is None


def test_symmetric_example_is_degeneracy_generated_above_its_degree(sym_z2):
    assert degeneracy_generation_check(sym_z2, 2)
    assert degeneracy_generation_check(sym_z2, 3)
    assert not degeneracy_generation_check(sym_z2, 1)


def test_boundary_of_moore_matches_gamma_sum_on_symmetric_example(sym_z2):
    report = theorem1_sides(sym_z2, 2, certify=True)
    assert report.verdict == 'equal'
    assert report.hypothesis
    assert report.inclusion_ok
    assert report.uncertified == []
    assert span_ops(report.rhs, comm_collapse_rhs(sym_z2, 2), 'equal')
    assert span_ops(report.rhs, quadratic_collapse_rhs(sym_z2, 2), 'equal')


def test_square_zero_algebra_shows_the_hypothesis_is_needed(sq0_z2):
    report = theorem1_sides(sq0_z2, 2)
    assert report.verdict == 'lhs⊋rhs'
    assert report.rhs.is_zero()
    assert not report.lhs.is_zero()
    assert not report.hypothesis
    assert report.inclusion_ok


def test_truncated_operad_reports_omitted_lengths(sym_z2):
    A = SimplicialOperadAlgebra(build_operad('comm', 2), sym_z2.carrier, sym_z2.products)
    report = theorem1_sides(A, 3)
    assert report.verdict == 'truncated'
    assert report.omitted_lengths == [3]


def test_theorem1_needs_level_two(sym_z2):
    with pytest.raises(AlgebraError):
        theorem1_sides(sym_z2, 1)


def test_generated_subalgebra_of_one_generator(sym_z2):
    x = sym_z2.embed(1, [1])
    x2 = sym_z2.multiply(1, x, x)
    Am = sym_z2.level(1)
    generated = subalgebra_generate(sym_z2, 1, Subspan.span(Am, [x]))
    assert span_ops(generated, Subspan.span(Am, [x, x2]), 'equal')
    assert generated.order() == 4


def test_generated_subalgebra_of_everything_and_nothing(sym_z2):
    Am = sym_z2.level(2)
    assert span_ops(subalgebra_generate(sym_z2, 2, Subspan.whole(Am)), Subspan.whole(Am), 'equal')
    assert subalgebra_generate(sym_z2, 2, Subspan.zero(Am)).is_zero()


def test_symmetric_example_of_zero_complex_is_the_unit():
    A = symmetric_example(ChainComplex.zero(ScalarRing(2), 1), degree_cap=2, top=2)
    assert [M.rank for M in A.carrier.levels] == [1, 1, 1]


def test_symmetric_example_needs_a_prime_field(mult2):
    with pytest.raises(AlgebraError):
        symmetric_example(mult2)


def test_symmetric_example_respects_the_rank_cap(z2_degree_one):
    with pytest.raises(AlgebraError):
        symmetric_example(z2_degree_one, degree_cap=2, top=3, rank_cap=5)


class TestPsi:

    @pytest.fixture
    def setup(self, z4_shifted):
        K = KConstruction(z4_shifted, 3)
        A = K.simplicial()
        a = K.element(2, [(2, [1], {(0, 1): 1})])
        return A, a

    def test_psi_lands_in_the_kernels_and_inverts(self, setup):
        A, a = setup
        for r in range(3):
            b = psi_map(A, 2, r, a)
            assert bar_moore(A, 2, r).contains_vector(b)
            assert psi_map(A, 2, r, b, 'inverse') == a

    def test_psi_at_the_last_index_is_the_identity(self, setup):
        A, a = setup
        assert psi_map(A, 2, 2, a) == a

    def test_psi_fixes_cycles(self, setup):
        A, a = setup
        cycle = A.levels[2].scale(2, a)
        assert psi_map(A, 2, 0, cycle) == cycle

    def test_psi_rejects_elements_outside_moore(self, setup):
        A, _ = setup
        degenerate = A.degeneracies[1][0](A.levels[1].basis_vector(0))
        with pytest.raises(AlgebraError):
            psi_map(A, 2, 0, degenerate)


def test_pairing_lift_on_symmetric_example(sym_z2):
    Is = SubsetTuple(2, ((0,), (1,)))
    x1 = sym_z2.carrier.k_subspan(1, (0,)).generators()
    x2 = sym_z2.carrier.k_subspan(1, (1,)).generators()
    lift = pairing_lift(sym_z2, 2, [1], [x1[0], x2[0]], Is)
    assert lift.ok
    assert sym_z2.carrier.moore_subspan(2).contains_vector(lift.preimage)
    assert sym_z2.carrier.faces[2][2](lift.preimage) == lift.target


def test_pairing_lift_rejects_empty_parts(sym_z2):
    zero = [0] * sym_z2.level(1).rank
    with pytest.raises(AlgebraError):
        pairing_lift(sym_z2, 2, [1], [zero, zero], SubsetTuple(2, ((0, 1), ())))


def test_literal_differential_drops_the_all_face_summand():
    term = DecoratedTerm(2, (1,), (Slot(1, (1,), (0,)), Slot(1, (1,), (1,))))
    result = fm_differential(term, convention='literal')
    assert len(result.summands) == 3
    assert result.dropped_all_faces
    assert not result.relaxed


def test_dual_differential_keeps_every_choice():
    term = DecoratedTerm(2, (1,), (Slot(1, (1,), (0,)), Slot(1, (1,), (1,))))
    result = fm_differential(term)
    assert len(result.summands) == 4
    assert not result.dropped_all_faces


def test_differential_of_a_top_slot_is_the_boundary(mult2):
    term = DecoratedTerm(1, (1,), (Slot(1, (1,), (0,)),))
    survivors = fm_differential(term, chain=mult2).nonzero()
    assert len(survivors) == 1
    assert survivors[0].factors == [(0, [2], {(): 1})]


def test_uncovered_support_keeps_all_summands():
    term = DecoratedTerm(3, (1,), (Slot(1, (1,), (0,)),))
    result = fm_differential(term, convention='literal')
    assert result.relaxed
    assert len(result.summands) == 2


@pytest.mark.parametrize('J', [(0,), (1,)])
def test_dual_differential_agrees_with_the_last_face_of_k(mult2, J):
    K = KConstruction(mult2, 2)
    term = DecoratedTerm(2, (1,), (Slot(1, (1,), J),))
    terms = [factor for s in fm_differential(term, chain=mult2).nonzero() for factor in s.factors]
    expected = K.fin_map(coface(2, 2))(K.element(2, [(1, [1], {J: 1})]))
    assert K.element(1, terms) == expected


def test_square_zero_example_has_zero_products(mult2):
    A = square_zero_example(mult2, 2)
    x = A.level(1).basis_vector(1)
    assert A.multiply(1, x, x) == [0, 0]
