"""
Shared fixtures: small complexes, library instances and a seeded RNG
"""
import random

import pytest

from services.library import Library
from simplicial.complexes import ChainComplex
from simplicial.modules import ScalarRing

Z = ScalarRing()
Z2 = ScalarRing(2)
Z4 = ScalarRing(4)
Z5 = ScalarRing(5)


@pytest.fixture
def rng():
    return random.Random(42)


@pytest.fixture
def mult2():
    """Z --2--> Z in degrees 1, 0"""
    return ChainComplex.from_matrices(Z, [1, 1], [[[2]]])


@pytest.fixture(scope='session')
def z4_shifted():
    """Z/4 --2--> Z/4 in degrees 2, 1"""
    return ChainComplex.from_matrices(Z, [0, 1, 1], [[[]], [[2]]], relations=[[], [[4]], [[4]]])


@pytest.fixture
def z2_degree_one():
    """Z/2 concentrated in degree 1"""
    return ChainComplex.from_matrices(Z2, [0, 1], [[[]]])


@pytest.fixture
def library():
    return Library


@pytest.fixture(scope='session')
def cm_s3():
    return Library.get('cm_s3_s3')


@pytest.fixture(scope='session')
def cm_z4_z2():
    return Library.get('cm_z4_z2')


@pytest.fixture(scope='session')
def pcm_d6():
    return Library.get('pcm_d6')


@pytest.fixture(scope='session')
def kc_z4():
    return Library.get('kc_z4_shifted')


@pytest.fixture(scope='session')
def sym_z2():
    return Library.get('sym_z2_deg1')


@pytest.fixture(scope='session')
def sq0_z2():
    return Library.get('sq0_z2_deg12')
