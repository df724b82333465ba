import random

import pytest
from hypothesis import given, settings, strategies as st

from services.generator import Generator
from simplicial.complexes import ChainComplex, validate
from simplicial.dold_kan import (
    DoldKanError, KConstruction, build_K, degeneracy_coordinates, roundtrip_check,
)
from simplicial.maps import codegeneracy, coface, compose, fin_maps
from simplicial.modules import ScalarRing

Z = ScalarRing()
Z5 = ScalarRing(5)


def test_level_one_of_the_doubling(mult2):
    K = KConstruction(mult2, 2)
    assert K.cells(1) == [(0, (), 0), (1, (0,), 0)]
    A = K.simplicial()
    assert A.faces[1][1].rows == [[1], [2]]
    assert A.faces[1][0].rows == [[1], [0]]


def test_first_degeneracy_of_the_doubling(mult2):
    K = KConstruction(mult2, 2)
    b = K.element(1, [(1, [1], {(0,): 1})])
    assert b == [0, 1]
    image = K.fin_map(codegeneracy(1, 0))(b)
    assert image == K.element(2, [(1, [1], {(0,): 1, (1,): 1})])


def test_degree_zero_complex_gives_a_constant_module():
    C = ChainComplex.from_matrices(Z, [2], [])
    A = build_K(C, 3)
    for n in range(1, 4):
        assert all(f.rows == [[1, 0], [0, 1]] for f in A.faces[n])


@pytest.mark.parametrize('top', [1, 2, 3])
def test_k_is_simplicial(mult2, z4_shifted, top):
    assert validate(build_K(mult2, top)) is None
    assert validate(build_K(z4_shifted, top)) is None


def test_build_k_rejects_invalid_complexes():
    C = ChainComplex.from_matrices(Z, [1, 1, 1], [[[1]], [[1]]])
    with pytest.raises(DoldKanError):
        build_K(C, 2)


def test_k_is_functorial_on_fin_maps(z4_shifted):
    K = KConstruction(z4_shifted, 3)
    rng = random.Random(7)
    for _ in range(50):
        m, n, p = (rng.randint(0, 3) for _ in range(3))
        alpha = rng.choice(list(fin_maps(m, n)))
        beta = rng.choice(list(fin_maps(n, p)))
        assert K.fin_map(compose(alpha, beta)).same_as(K.fin_map(beta).then(K.fin_map(alpha)))


def test_top_monomials_are_degenerate_combinations():
    coords = degeneracy_coordinates((1,), 2)
    assert coords == {(1,): -1, (0,): 1}


def test_zero_complex_roundtrip():
    report = roundtrip_check(ChainComplex.zero(Z, 2), top=3)
    assert report.ok
    assert all(f.source.rank == 0 for f in report.forward)


def test_doubling_roundtrip(mult2):
    report = roundtrip_check(mult2, top=3)
    assert report.ok
    assert report.kind == 'complex'
    assert len(report.forward) == 4


def test_simplicial_roundtrip_of_k(z4_shifted):
    report = roundtrip_check(build_K(z4_shifted, 3))
    assert report.ok, report.failure
    assert report.to_dict()['ok']


@given(st.integers(0, 10 ** 6), st.sampled_from([Z, Z5]), st.integers(1, 3))
@settings(max_examples=15, deadline=None)
def test_random_complexes_roundtrip(seed, ring, top):
    C = Generator(seed).chain_complex(ring, top, max_rank=2)
    assert validate(C) is None
    assert roundtrip_check(C, top=top).ok


@given(st.integers(0, 10 ** 6), st.integers(1, 3))
@settings(max_examples=10, deadline=None)
def test_random_simplicial_modules_roundtrip(seed, top):
    A = Generator(seed).simplicial_module(Z5, top, max_rank=2)
    assert validate(A) is None
    assert roundtrip_check(A).ok


def test_k_needs_nonnegative_top(mult2):
    with pytest.raises(DoldKanError):
        KConstruction(mult2, -1)


def test_fin_map_outside_truncation(mult2):
    with pytest.raises(DoldKanError):
        KConstruction(mult2, 1).fin_map(coface(2, 0))


@pytest.mark.parametrize('top', [1, 2, 3])
def test_k_of_a_complex_with_an_empty_bottom_level(z2_degree_one, top):
    A = build_K(z2_degree_one, top)
    assert validate(A) is None
    assert [M.rank for M in A.levels] == list(range(top + 1))


def test_fin_maps_skip_the_empty_bottom_level(z2_degree_one):
    K = KConstruction(z2_degree_one, 3)
    for m in range(4):
        for n in range(4):
            for alpha in fin_maps(m, n):
                f = K.fin_map(alpha)
                assert (f.source.rank, f.target.rank) == (n, m)
    assert roundtrip_check(z2_degree_one, top=3).ok
