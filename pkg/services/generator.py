"""
Seeded generators for complexes, simplicial modules and example documents
"""
import random
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config import Config
from services.loader import dump_chain_complex, dump_simplicial_module, load_group
from simplicial.complexes import ChainComplex, SimplicialModule
from simplicial.dold_kan import build_K
from simplicial.lattice import Matrix, eye, mat_mul
from simplicial.modules import ModuleMap, ScalarRing
from utils.logger import logger


class GeneratorError(Exception):
    """Generation request out of range"""
    pass


def unimodular_pair(rng: random.Random, n: int, steps: Optional[int] = None) -> Tuple[Matrix, Matrix]:
    """(U, U^-1) as a random product of elementary row operations"""
    U, V = eye(n), eye(n)
    if n == 0:
        return U, V
    for _ in range(2 * n if steps is None else steps):
        move = rng.choice(('add', 'swap', 'negate')) if n > 1 else 'negate'
        i = rng.randrange(n)
        if move == 'negate':
            U[i] = [-x for x in U[i]]
            for row in V:
                row[i] = -row[i]
            continue
        j = rng.choice([k for k in range(n) if k != i])
        if move == 'swap':
            U[i], U[j] = U[j], U[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
        else:
            c = rng.choice((-1, 1))
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
            for row in V:
                row[j] -= c * row[i]
    return U, V


def _conjugate(U: Matrix, D: Sequence[Sequence[int]], V: Matrix, rows: int, cols: int) -> Matrix:
    """U @ D @ V for a rows x cols matrix D"""
    if rows == 0:
        return []
    if cols == 0:
        return [[] for _ in range(rows)]
    return mat_mul(mat_mul(U, D), V)


def _coefficient(rng: random.Random, ring: ScalarRing) -> int:
    if ring.modulus is None:
        return rng.choice((1, 2, 3))
    return rng.randint(1, ring.modulus - 1)


class Generator:
    """Seed-deterministic instance generator"""

    def __init__(self, seed: Optional[int] = None):
        self.seed = Config.DEFAULT_SEED if seed is None else seed
        self.rng = random.Random(self.seed)
        logger.info(f"✅ Generator initialized with seed {self.seed}")

    # ---------- objects ----------

    def chain_complex(self, ring: ScalarRing, top: int, max_rank: int = 3) -> ChainComplex:
        """Direct sum of elementary pieces (a free generator, or x -> c y one degree down),
        then a random change of basis in every degree"""
        if top < 0 or max_rank < 0:
            raise GeneratorError("top and max_rank must be non-negative")
        rng = self.rng
        roles: List[List[Tuple[str, int, int]]] = [[] for _ in range(top + 1)]
        for i in range(top + 1):
            for _ in range(rng.randint(0, 2)):
                if len(roles[i]) >= max_rank:
                    break
                if i > 0 and len(roles[i - 1]) < max_rank and rng.random() < 0.5:
                    roles[i - 1].append(('dst', 0, 0))
                    roles[i].append(('src', len(roles[i - 1]) - 1, _coefficient(rng, ring)))
                else:
                    roles[i].append(('free', 0, 0))
        ranks = [len(r) for r in roles]
        matrices = []
        bases = [unimodular_pair(rng, r) for r in ranks]
        for i in range(1, top + 1):
            D = [[0] * ranks[i - 1] for _ in range(ranks[i])]
            for k, (role, partner, c) in enumerate(roles[i]):
                if role == 'src':
                    D[k][partner] = c
            matrices.append(_conjugate(bases[i][0], D, bases[i - 1][1], ranks[i], ranks[i - 1]))
        return ChainComplex.from_matrices(ring, ranks, matrices)

    def simplicial_module(self, ring: ScalarRing, top: int, max_rank: int = 2) -> SimplicialModule:
        """K of a random complex, presented in a random basis on every level"""
        C = self.chain_complex(ring, top, max_rank)
        for m in range(top + 1):
            rank = sum(C.level(i).rank * comb(m, i) for i in range(m + 1))
            if rank > Config.RANK_CAP:
                raise GeneratorError(f"level {m} would have rank {rank} > cap {Config.RANK_CAP}")
        A = build_K(C, top)
        pairs = [unimodular_pair(self.rng, M.rank) for M in A.levels]

        def moved(f: ModuleMap, n: int, k: int) -> ModuleMap:
            rows = _conjugate(pairs[n][0], f.rows, pairs[k][1], A.levels[n].rank, A.levels[k].rank)
            return ModuleMap.make(A.levels[n], A.levels[k], rows, check=False)

        faces = tuple(tuple(moved(f, n, n - 1) for f in A.faces[n]) for n in range(top + 1))
        degs = tuple(tuple(moved(s, n, n + 1) for s in A.degeneracies[n]) for n in range(top + 1))
        return SimplicialModule(ring, A.levels, faces, degs)

    # ---------- documents ----------

    def kc(self, complex_doc: Optional[Dict] = None, ring: ScalarRing = ScalarRing(),
           top: int = 3, max_rank: int = 2) -> Dict:
        """k_complex document for a given complex, or for a random one"""
        if complex_doc is None:
            complex_doc = dump_chain_complex(self.chain_complex(ring, top, max_rank))
        return {'type': 'k_complex', 'complex': complex_doc, 'top': top}

    def crossed_module(self, M: Dict, P: Optional[Dict] = None, boundary='identity',
                       action='conjugation', top: int = 2, name: str = 'cm') -> Dict:
        """crossed_module document; refused when the nerve would exceed ORDER_CAP"""
        P = M if P is None else P
        size = load_group(P).order * load_group(M).order ** top
        if size > Config.ORDER_CAP:
            raise GeneratorError(f"level {top} would have order {size} > cap {Config.ORDER_CAP}")
        return {'type': 'crossed_module', 'name': name, 'M': M, 'P': P,
                'boundary': boundary, 'action': action, 'top': top}

    def symmetric_algebra(self, q: int, top: int = 3, degree_cap: int = 2,
                          violate: bool = False) -> Dict:
        """symmetric_algebra document over Z/q.

        The complex lives in degrees 0 and 1, so every level from 2 on is
        spanned by degenerate elements; with violate=True a nonzero boundary
        out of degree 2 is added instead.
        """
        ring = ScalarRing(q)
        if not ring.is_prime_field:
            raise GeneratorError(f"symmetric algebras need a prime modulus, got {q}")
        rng = self.rng
        if violate:
            r1 = rng.randint(1, 2)
            d2 = [[rng.randint(0, q - 1) for _ in range(r1)]]
            d2[0][rng.randrange(r1)] = _coefficient(rng, ring)
            ranks, matrices = [0, r1, 1], [[[]] * r1, d2]
        else:
            r0, r1 = rng.randint(0, 1), rng.randint(1, 2)
            ranks = [r0, r1]
            matrices = [[[rng.randint(0, q - 1) for _ in range(r0)] for _ in range(r1)]]
        for m in range(top + 1):
            n = sum(r * comb(m, i) for i, r in enumerate(ranks))
            size = sum(comb(n + d - 1, d) for d in range(degree_cap + 1))
            if size > Config.RANK_CAP:
                raise GeneratorError(f"level {m} would have rank {size} > cap {Config.RANK_CAP}")
        C = ChainComplex.from_matrices(ring, ranks, matrices)
        return {'type': 'symmetric_algebra', 'complex': dump_chain_complex(C),
                'degree_cap': degree_cap, 'top': top}

    def random(self, ring: ScalarRing = ScalarRing(), top: int = 3, max_rank: int = 2) -> Dict:
        return dump_simplicial_module(self.simplicial_module(ring, top, max_rank))

    def generate(self, kind: str, **params) -> Dict:
        handler = self.handlers().get(kind)
        if handler is None:
            raise GeneratorError(f"unknown kind {kind!r}, expected one of {sorted(self.handlers())}")
        logger.info(f"🎲 Generating {kind} with seed {self.seed}")
        return handler(**params)

    def handlers(self) -> Dict[str, Callable[..., Dict]]:
        return {
            'kc': self.kc,
            'crossed-module': self.crossed_module,
            'symmetric-algebra': self.symmetric_algebra,
            'random': self.random,
        }
