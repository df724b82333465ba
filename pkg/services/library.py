"""
Shipped example instances, kept as loader documents and built on demand
"""
import copy
import threading
from typing import Dict, List, Optional

from simplicial.sgroups import TruncatedSimplicialGroup
from utils.logger import logger


class LibraryError(Exception):
    """Unknown library entry"""
    pass


def _complex(ring, ranks, boundaries, relations=None) -> Dict:
    doc = {'type': 'chain_complex', 'ring': ring, 'ranks': ranks, 'boundaries': boundaries}
    if relations is not None:
        doc['relations'] = relations
    return doc


ENTRIES: Dict[str, Dict] = {
    # crossed modules
    'cm_z2_z2': {
        'type': 'crossed_module', 'name': 'cm_z2_z2',
        'M': {'cyclic': 2}, 'P': {'cyclic': 2},
        'boundary': 'identity', 'action': 'trivial', 'top': 3,
    },
    'cm_s3_s3': {
        'type': 'crossed_module', 'name': 'cm_s3_s3',
        'M': {'symmetric': 3}, 'P': {'symmetric': 3},
        'boundary': 'identity', 'action': 'conjugation', 'top': 2,
    },
    'cm_z4_z2': {
        'type': 'crossed_module', 'name': 'cm_z4_z2',
        'M': {'cyclic': 4}, 'P': {'cyclic': 2},
        'boundary': 'reduction', 'action': 'trivial', 'top': 3,
    },
    'cm_a3_s3': {
        'type': 'crossed_module', 'name': 'cm_a3_s3',
        'M': {'alternating': 3}, 'P': {'symmetric': 3},
        'boundary': 'inclusion', 'action': 'conjugation', 'top': 2,
    },
    # Z/2 acting on Z/6 by negation: CM1 holds, the Peiffer identity does not
    'pcm_d6': {
        'type': 'precrossed_module', 'name': 'pcm_d6',
        'M': {'cyclic': 6}, 'P': {'cyclic': 2},
        'boundary': 'reduction', 'action': 'inversion',
    },
    # abelian K(C)
    'kc_z4_shifted': {
        'type': 'k_group', 'name': 'kc_z4_shifted', 'top': 2,
        'complex': _complex('Z', [0, 1, 1], [[[]], [[2]]], [[], [[4]], [[4]]]),
    },
    'kc_z2_deg23': {
        'type': 'k_group', 'name': 'kc_z2_deg23', 'top': 3,
        'complex': _complex({'mod': 2}, [0, 0, 1, 1], [[], [[]], [[1]]]),
    },
    'kc_z2_deg01': {
        'type': 'k_group', 'name': 'kc_z2_deg01', 'top': 3,
        'complex': _complex({'mod': 2}, [1, 1], [[[1]]]),
    },
    # complexes and algebras
    'c_z_mult2': {
        'name': 'c_z_mult2', **_complex('Z', [1, 1], [[[2]]]),
    },
    'sym_z2_deg1': {
        'type': 'symmetric_algebra', 'name': 'sym_z2_deg1', 'degree_cap': 2, 'top': 3,
        'complex': _complex({'mod': 2}, [0, 1], [[[]]]),
    },
    'sym_z3_deg1': {
        'type': 'symmetric_algebra', 'name': 'sym_z3_deg1', 'degree_cap': 2, 'top': 3,
        'complex': _complex({'mod': 3}, [0, 1], [[[]]]),
    },
    # C_2 != 0, so level 2 is not generated by degeneracies
    'sq0_z2_deg12': {
        'type': 'square_zero_algebra', 'name': 'sq0_z2_deg12', 'top': 3,
        'complex': _complex({'mod': 2}, [0, 1, 1], [[[]], [[1]]]),
    },
}


class Library:
    """Named instances, built once per process"""

    _cache: Dict[str, object] = {}
    # reentrant: a library_entry document resolves through get
    _lock = threading.RLock()

    @staticmethod
    def names(kind: Optional[str] = None) -> List[str]:
        """Entry names, optionally only the ones of a document type"""
        return sorted(n for n, doc in ENTRIES.items() if kind is None or doc['type'] == kind)

    @staticmethod
    def document(name: str) -> Dict:
        if name not in ENTRIES:
            raise LibraryError(f"no library entry {name!r}; known: {', '.join(sorted(ENTRIES))}")
        return copy.deepcopy(ENTRIES[name])

    @classmethod
    def get(cls, name: str):
        from services.loader import load_object

        with cls._lock:
            if name not in cls._cache:
                doc = cls.document(name)
                logger.info(f"📚 Building library entry {name}")
                cls._cache[name] = load_object(doc)
            return cls._cache[name]

    @classmethod
    def simplicial_groups(cls) -> Dict[str, TruncatedSimplicialGroup]:
        groups = {}
        for name in sorted(ENTRIES):
            if ENTRIES[name]['type'] in ('crossed_module', 'precrossed_module', 'k_group',
                                         'simplicial_group'):
                groups[name] = cls.get(name)
        return groups

    @classmethod
    def listing(cls) -> List[Dict]:
        """Name, type and level orders of every shipped simplicial group"""
        return [
            {'name': name, 'type': ENTRIES[name]['type'], 'top': G.top, 'orders': G.orders()}
            for name, G in cls.simplicial_groups().items()
        ]
