import pytest

from simplicial.complexes import (
    ChainComplex, ComplexError, SimplicialModule, constant, moore_complex, validate,
)
from simplicial.dold_kan import build_K
from simplicial.modules import ExactModule, ModuleMap, ScalarRing, Subspan, span_ops

Z = ScalarRing()


def test_valid_complex_passes(mult2):
    assert validate(mult2) is None
    assert validate(ChainComplex.zero(Z, 3)) is None


def test_nonzero_square_names_the_boundaries():
    C = ChainComplex.from_matrices(Z, [1, 1, 1], [[[1]], [[1]]])
    v = validate(C)
    assert v is not None
    assert v.identity == "d∘d = 0"
    assert v.indices == (1, 2)


def test_boundary_outside_the_range_is_zero(mult2):
    assert mult2.boundary(5).is_zero()
    assert mult2.level(7).rank == 0


def test_from_matrices_needs_one_matrix_per_boundary():
    with pytest.raises(ComplexError):
        ChainComplex.from_matrices(Z, [1, 1], [])


def test_constant_module_is_valid_with_trivial_moore_tail():
    M = ExactModule.quotient(Z, 2, [[3, 0], [0, 5]])
    A = constant(M, 3)
    assert validate(A) is None
    N = moore_complex(A)
    assert N.chain.levels[0].order() == M.order() == 15
    assert N.chain.levels[0].rank == 2
    for m in range(1, 4):
        assert N.spans[m].is_zero()


def _broken_degeneracy():
    M = ExactModule.free(Z, 1)
    ident = ModuleMap.identity(M)
    double = ModuleMap.make(M, M, [[2]])
    return SimplicialModule(Z, (M, M), ((), (ident, double)), ((ident,), ()))


def test_broken_simplicial_identity_is_named():
    v = validate(_broken_degeneracy())
    assert v is not None
    assert v.identity == "d_1 s_0 = id"
    assert v.level == 0


def test_moore_complex_rejects_invalid_modules():
    with pytest.raises(ComplexError):
        moore_complex(_broken_degeneracy())


def test_level_count_is_checked():
    M = ExactModule.free(Z, 1)
    with pytest.raises(ComplexError):
        SimplicialModule(Z, (M, M), ((),), ((), ()))


def test_k_subspans_intersect_along_unions(mult2):
    A = build_K(mult2, 3)
    n = 3
    for I, J in [((0,), (2,)), ((0, 1), (1, 3)), ((), (2,))]:
        union = tuple(sorted(set(I) | set(J)))
        meet = span_ops(A.k_subspan(n, I), A.k_subspan(n, J), 'intersect')
        assert span_ops(A.k_subspan(n, union), meet, 'equal')


def test_moore_complex_of_k_recovers_the_doubling(mult2):
    A = build_K(mult2, 3)
    N = moore_complex(A)
    assert span_ops(N.spans[1], Subspan.span(A.levels[1], [[0, 1]]), 'equal')
    assert N.chain.boundary(1).rows == [[2]]
    assert all(N.spans[m].is_zero() for m in (2, 3))
