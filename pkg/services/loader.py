"""
JSON schemas for complexes, simplicial objects, operads and algebras
"""
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Union

import numpy as np

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, DihedralGroup, SymmetricGroup

from config import Config
from simplicial.algebras import AlgebraError, SimplicialOperadAlgebra, square_zero_example, symmetric_example
from simplicial.complexes import ChainComplex, ComplexError, SimplicialModule
from simplicial.dold_kan import DoldKanError, build_K
from simplicial.exterior import ExteriorError
from simplicial.groups import FiniteGroup, GroupError, GroupHom
from simplicial.lattice import LatticeError
from simplicial.modules import ExactModule, ModuleError, ModuleMap, ScalarRing
from simplicial.operads import MODELS, OperadError, TruncatedOperad, build_operad
from simplicial.sgroups import (
    SimplicialGroupError, TruncatedSimplicialGroup, crossed_module_build, from_simplicial_module,
    precrossed_build,
)
from utils.logger import logger

Loaded = Union[ChainComplex, SimplicialModule, TruncatedSimplicialGroup, TruncatedOperad,
               SimplicialOperadAlgebra]

# errors raised while turning JSON into objects
DOMAIN_ERRORS = (ModuleError, ComplexError, DoldKanError, GroupError, SimplicialGroupError,
                 OperadError, AlgebraError, LatticeError, ExteriorError)


class LoaderError(Exception):
    """Malformed or inconsistent input document"""
    pass


def _require(data: Dict, *keys: str) -> None:
    if not isinstance(data, dict):
        raise LoaderError(f"expected an object, got {type(data).__name__}")
    missing = [k for k in keys if k not in data]
    if missing:
        raise LoaderError(f"missing field(s) {', '.join(missing)} in {data.get('type', 'object')}")


def load_ring(data) -> ScalarRing:
    try:
        return ScalarRing.from_json(data if data is not None else "Z")
    except ModuleError as e:
        raise LoaderError(str(e)) from e


# ---------- modules ----------

def load_chain_complex(data: Dict) -> ChainComplex:
    _require(data, 'ranks', 'boundaries')
    ring = load_ring(data.get('ring'))
    return ChainComplex.from_matrices(ring, data['ranks'], data['boundaries'], data.get('relations'))


def dump_chain_complex(C: ChainComplex) -> Dict:
    return {
        'type': 'chain_complex',
        'ring': C.ring.to_json(),
        'ranks': [M.rank for M in C.levels],
        'relations': [_extra_relations(M) for M in C.levels],
        'boundaries': [C.boundary(i).rows for i in range(1, C.top + 1)],
    }


def _extra_relations(M: ExactModule) -> List[List[int]]:
    """Relations beyond the ones the scalar ring imposes"""
    base = ExactModule.free(M.ring, M.rank)
    return [] if M.relations == base.relations else M.relation_rows


def load_simplicial_module(data: Dict) -> SimplicialModule:
    _require(data, 'levels', 'faces', 'degeneracies')
    ring = load_ring(data.get('ring'))
    levels = tuple(ExactModule.quotient(ring, lv['rank'], lv.get('relations', []))
                   for lv in data['levels'])
    top = len(levels) - 1
    if len(data['faces']) != top + 1 or len(data['degeneracies']) != top + 1:
        raise LoaderError("faces and degeneracies need one list per level")
    faces = tuple(
        tuple(ModuleMap.make(levels[n], levels[n - 1], m) for m in data['faces'][n])
        for n in range(top + 1)
    )
    degs = tuple(
        tuple(ModuleMap.make(levels[n], levels[n + 1], m) for m in data['degeneracies'][n])
        for n in range(top + 1)
    )
    return SimplicialModule(ring, levels, faces, degs)


def dump_simplicial_module(A: SimplicialModule) -> Dict:
    return {
        'type': 'simplicial_module',
        'ring': A.ring.to_json(),
        'levels': [{'rank': M.rank, 'relations': _extra_relations(M)} for M in A.levels],
        'faces': [[f.rows for f in row] for row in A.faces],
        'degeneracies': [[s.rows for s in row] for row in A.degeneracies],
    }


def load_k_complex(data: Dict) -> SimplicialModule:
    _require(data, 'complex')
    return build_K(load_chain_complex(data['complex']), data.get('top', Config.DEFAULT_TOP))


# ---------- groups ----------

def load_group(data: Dict, name: str = "group") -> FiniteGroup:
    if not isinstance(data, dict):
        raise LoaderError(f"group must be an object, got {data!r}")
    name = data.get('name', name)
    if 'cyclic' in data:
        return FiniteGroup.cyclic(int(data['cyclic']))
    if 'table' in data:
        return FiniteGroup(data['table'], data.get('labels'), name)
    named = {'symmetric': SymmetricGroup, 'alternating': AlternatingGroup, 'dihedral': DihedralGroup}
    for key, build in named.items():
        if key in data:
            return FiniteGroup.from_sympy(build(int(data[key])), name, cap=Config.ORDER_CAP)
    if 'permutations' in data:
        gens = [Permutation(list(g)) for g in data['permutations']]
        return FiniteGroup.from_sympy(PermutationGroup(gens), name, cap=Config.ORDER_CAP)
    raise LoaderError(f"unknown group description {sorted(data)}")


def dump_group(G: FiniteGroup) -> Dict:
    return {'name': G.name, 'table': G.table.tolist(), 'labels': list(G.labels)}


def load_simplicial_group(data: Dict) -> TruncatedSimplicialGroup:
    _require(data, 'levels', 'faces', 'degeneracies')
    name = data.get('name', 'G')
    levels = [load_group(g, f"{name}_{n}") for n, g in enumerate(data['levels'])]
    top = len(levels) - 1
    faces = [[GroupHom(levels[n], levels[n - 1], imgs) for imgs in data['faces'][n]]
             for n in range(top + 1)]
    degs = [[GroupHom(levels[n], levels[n + 1], imgs) for imgs in data['degeneracies'][n]]
            for n in range(top + 1)]
    return TruncatedSimplicialGroup(levels, faces, degs, name)


def dump_simplicial_group(G: TruncatedSimplicialGroup) -> Dict:
    return {
        'type': 'simplicial_group',
        'name': G.name,
        'levels': [dump_group(g) for g in G.levels],
        'faces': [[f.images.tolist() for f in row] for row in G.faces],
        'degeneracies': [[s.images.tolist() for s in row] for row in G.degeneracies],
    }


def _resolve_boundary(spec, M: FiniteGroup, P: FiniteGroup) -> GroupHom:
    """An image list, or one of "identity", "inclusion" (by label) and "reduction" (x mod |P|)"""
    if isinstance(spec, list):
        return GroupHom(M, P, spec)
    if spec == 'identity':
        if M.order != P.order:
            raise LoaderError("identity boundary needs |M| = |P|")
        return GroupHom(M, P, range(M.order))
    if spec == 'inclusion':
        positions = {label: k for k, label in enumerate(P.labels)}
        missing = [lab for lab in M.labels if lab not in positions]
        if missing:
            raise LoaderError(f"inclusion boundary: {missing[0]} is not an element of P")
        return GroupHom(M, P, [positions[lab] for lab in M.labels])
    if spec == 'reduction':
        return GroupHom(M, P, [x % P.order for x in range(M.order)])
    raise LoaderError(f"unknown boundary {spec!r}")


def _resolve_action(spec, M: FiniteGroup, P: FiniteGroup, boundary: GroupHom) -> np.ndarray:
    """A |P| x |M| table, or one of "trivial", "conjugation" (through an injective boundary)
    and "inversion" (every non-identity element of P inverts M)"""
    if isinstance(spec, list):
        return np.asarray(spec, dtype=np.int64)
    if spec == 'trivial':
        return np.tile(np.arange(M.order), (P.order, 1))
    if spec == 'inversion':
        act = np.tile(M.inverses, (P.order, 1))
        act[0] = np.arange(M.order)
        return act
    if spec == 'conjugation':
        back = {int(y): x for x, y in enumerate(boundary.images)}
        if len(back) != M.order:
            raise LoaderError("conjugation action needs an injective boundary")
        table = np.zeros((P.order, M.order), dtype=np.int64)
        for p in range(P.order):
            for m in range(M.order):
                c = P.conj(p, boundary(m))
                if c not in back:
                    raise LoaderError("image of the boundary is not normal in P")
                table[p, m] = back[c]
        return table
    raise LoaderError(f"unknown action {spec!r}")


def load_crossed_module(data: Dict) -> TruncatedSimplicialGroup:
    _require(data, 'M', 'P', 'boundary', 'action')
    M = load_group(data['M'], 'M')
    P = load_group(data['P'], 'P')
    boundary = _resolve_boundary(data['boundary'], M, P)
    act = _resolve_action(data['action'], M, P, boundary)
    name = data.get('name', 'cm')
    if data.get('type') == 'precrossed_module':
        return precrossed_build(M, P, boundary, act, name)
    return crossed_module_build(M, P, boundary, act, data.get('top', 2), name,
                                order_cap=Config.ORDER_CAP)


def load_k_group(data: Dict) -> TruncatedSimplicialGroup:
    return from_simplicial_module(load_k_complex(data), data.get('name', 'K(C)'),
                                  order_cap=Config.ORDER_CAP)


# ---------- operads and algebras ----------

def load_operad(data: Dict) -> TruncatedOperad:
    _require(data, 'max_arity')
    if 'tables' in data:
        return TruncatedOperad.from_dict(data)
    _require(data, 'name')
    return build_operad(data['name'], data['max_arity'])


def load_algebra(data: Dict) -> SimplicialOperadAlgebra:
    _require(data, 'operad', 'carrier', 'products')
    return SimplicialOperadAlgebra(load_operad(data['operad']), load_simplicial_module(data['carrier']),
                                   data['products'], name=data.get('name', 'algebra'))


def load_symmetric_algebra(data: Dict) -> SimplicialOperadAlgebra:
    _require(data, 'complex')
    return symmetric_example(load_chain_complex(data['complex']), data.get('degree_cap', 2),
                             data.get('top'))


def load_square_zero_algebra(data: Dict) -> SimplicialOperadAlgebra:
    _require(data, 'complex')
    return square_zero_example(load_chain_complex(data['complex']), data.get('top', Config.DEFAULT_TOP))


def load_library_entry(data: Dict) -> Loaded:
    from services.library import Library, LibraryError

    _require(data, 'name')
    try:
        return Library.get(data['name'])
    except LibraryError as e:
        raise LoaderError(str(e)) from e


LOADERS: Dict[str, Callable[[Dict], Loaded]] = {
    'chain_complex': load_chain_complex,
    'simplicial_module': load_simplicial_module,
    'k_complex': load_k_complex,
    'simplicial_group': load_simplicial_group,
    'crossed_module': load_crossed_module,
    'precrossed_module': load_crossed_module,
    'k_group': load_k_group,
    'operad': load_operad,
    'algebra': load_algebra,
    'symmetric_algebra': load_symmetric_algebra,
    'square_zero_algebra': load_square_zero_algebra,
    'library': load_library_entry,
}


def load_object(data: Any) -> Loaded:
    """Dispatch on the document's "type" field"""
    _require(data, 'type')
    kind = data['type']
    loader = LOADERS.get(kind)
    if loader is None:
        raise LoaderError(f"unknown type {kind!r}, expected one of {sorted(LOADERS)}")
    try:
        return loader(data)
    except LoaderError:
        raise
    except DOMAIN_ERRORS as e:
        raise LoaderError(f"{kind}: {e}") from e
    except (KeyError, IndexError, TypeError, ValueError) as e:
        raise LoaderError(f"{kind}: malformed field ({e})") from e


def load_file(path: Union[str, Path]) -> Loaded:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise LoaderError(f"cannot read {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise LoaderError(f"{path} is not valid JSON: {e}") from e
    logger.info(f"📂 Loading {data.get('type', '?') if isinstance(data, dict) else '?'} from {path}")
    return load_object(data)


def dump_object(obj: Loaded) -> Dict:
    if isinstance(obj, ChainComplex):
        return dump_chain_complex(obj)
    if isinstance(obj, SimplicialModule):
        return dump_simplicial_module(obj)
    if isinstance(obj, TruncatedSimplicialGroup):
        return dump_simplicial_group(obj)
    if isinstance(obj, TruncatedOperad):
        return {'type': 'operad', **obj.to_dict()}
    if isinstance(obj, SimplicialOperadAlgebra):
        return {
            'type': 'algebra',
            'name': obj.name,
            'operad': _operad_reference(obj.operad),
            'carrier': dump_simplicial_module(obj.carrier),
            'products': obj.products,
        }
    raise LoaderError(f"cannot serialize {type(obj).__name__}")


def _operad_reference(O: TruncatedOperad) -> Dict:
    if O.name in MODELS:
        return {'type': 'operad', 'name': O.name, 'max_arity': O.max_arity}
    return {'type': 'operad', **O.to_dict()}
