"""Exact simplicial algebra: modules, groups, operads and near-rings"""
from simplicial.modules import ExactModule, ModuleMap, ScalarRing, Subspan, Z
from simplicial.complexes import ChainComplex, SimplicialModule, moore_complex, validate
from simplicial.dold_kan import build_K, roundtrip_check
from simplicial.operads import TruncatedOperad, build_operad, validate_operad
from simplicial.algebras import SimplicialOperadAlgebra, theorem1_sides
from simplicial.groups import FiniteGroup, GroupHom, Subgroup
from simplicial.sgroups import TruncatedSimplicialGroup, theorem2_check
from simplicial.near_ring import NearRingWord, express_by_degeneracies
