"""
The functor K = C ⊠ ΛZ(*) and the roundtrip isomorphisms with the Moore complex.

K_m C is the direct sum over i <= m of C_i ⊗ Λ^i Z(m). Its basis cells are
(i, J, k): the k-th basis vector of C_i tensored with the monomial phi_J,
|J| = i. A map alpha : [m] -> [n] acts by

    K(alpha)(a ⊗ phi) = a ⊗ alpha^*(phi) + da ⊗ delta_alpha(phi)
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from simplicial import lattice
from simplicial.complexes import (
    ChainComplex, ComplexError, SimplicialModule, moore_complex, validate,
)
from simplicial.exterior import (
    Exterior, delta_derivation, lambda_action, monomials, top_monomial,
)
from simplicial.lattice import Row
from simplicial.maps import (
    Operator, SimplicialMap, Subset, codegeneracy, coface, surjection_from_subset,
)
from simplicial.modules import ExactModule, ModuleError, ModuleMap, coordinates_in
from utils.logger import logger

Cell = Tuple[int, Subset, int]


class DoldKanError(Exception):
    """Invalid input to the K construction"""
    pass


class KConstruction:
    """K C truncated at `top`, with explicit cell bookkeeping"""

    def __init__(self, chain: ChainComplex, top: int):
        if top < 0:
            raise DoldKanError("top must be non-negative")
        self.chain = chain
        self.top = top
        self._cells: Dict[int, List[Cell]] = {}
        self._index: Dict[int, Dict[Cell, int]] = {}
        self._levels: Dict[int, ExactModule] = {}

    def cells(self, m: int) -> List[Cell]:
        if m not in self._cells:
            cells = []
            for i in range(min(m, self.chain.top) + 1):
                for J in monomials(m, i):
                    for k in range(self.chain.level(i).rank):
                        cells.append((i, J, k))
            self._cells[m] = cells
            self._index[m] = {c: pos for pos, c in enumerate(cells)}
        return self._cells[m]

    def position(self, m: int, cell: Cell) -> int:
        self.cells(m)
        try:
            return self._index[m][cell]
        except KeyError:
            raise DoldKanError(f"no cell {cell} on level {m}")

    def block_offset(self, m: int, i: int, J: Subset) -> int:
        return self.position(m, (i, tuple(J), 0))

    def level(self, m: int) -> ExactModule:
        if m not in self._levels:
            cells = self.cells(m)
            rels = []
            for i in range(min(m, self.chain.top) + 1):
                Ci = self.chain.level(i)
                if not Ci.rank:
                    continue
                for J in monomials(m, i):
                    off = self.block_offset(m, i, J)
                    for r in Ci.relations:
                        row = [0] * len(cells)
                        row[off:off + Ci.rank] = r
                        rels.append(row)
            self._levels[m] = ExactModule.quotient(self.chain.ring, len(cells), rels)
        return self._levels[m]

    def element(self, m: int, terms: Sequence[Tuple[int, Sequence[int], Exterior]]) -> Row:
        """Vector of sum a ⊗ phi over (degree, a in C_i, phi of degree i)"""
        vec = [0] * len(self.cells(m))
        for i, a, phi in terms:
            if not self.chain.level(i).rank:
                continue
            for J, c in phi.items():
                if len(J) != i:
                    raise DoldKanError(f"monomial {J} has degree {len(J)}, term has degree {i}")
                off = self.block_offset(m, i, J)
                for k, x in enumerate(a):
                    vec[off + k] += c * x
        return self.level(m).reduce(vec)

    def terms(self, m: int, vec: Sequence[int]) -> List[Tuple[int, Subset, Row]]:
        """Nonzero (degree, J, a) blocks of a level-m vector"""
        out = []
        reduced = self.level(m).reduce(vec)
        for i in range(min(m, self.chain.top) + 1):
            rank = self.chain.level(i).rank
            if not rank:
                continue
            for J in monomials(m, i):
                off = self.block_offset(m, i, J)
                a = reduced[off:off + rank]
                if any(a):
                    out.append((i, J, a))
        return out

    def fin_map(self, alpha: SimplicialMap) -> ModuleMap:
        """K(alpha) : K_n -> K_m for any map alpha : [m] -> [n]"""
        m, n = alpha.source_dim, alpha.target_dim
        if max(m, n) > self.top:
            raise DoldKanError(f"map [{m}] -> [{n}] leaves levels 0..{self.top}")
        width = len(self.cells(m))
        rows = []
        for i, J, k in self.cells(n):
            row = [0] * width
            for L, c in lambda_action(alpha, {J: 1}).items():
                row[self.position(m, (i, L, k))] += c
            if i and self.chain.level(i - 1).rank:
                da = self.chain.boundary(i).rows[k]
                for L, c in delta_derivation(alpha, {J: 1}).items():
                    off = self.block_offset(m, i - 1, L)
                    for t, x in enumerate(da):
                        if x:
                            row[off + t] += c * x
            rows.append(row)
        return ModuleMap.make(self.level(n), self.level(m), rows, check=False)

    def simplicial(self) -> SimplicialModule:
        levels = tuple(self.level(m) for m in range(self.top + 1))
        faces = tuple(
            tuple(self.fin_map(coface(n, i)) for i in range(n + 1)) if n else ()
            for n in range(self.top + 1)
        )
        degs = tuple(
            tuple(self.fin_map(codegeneracy(n, i)) for i in range(n + 1)) if n < self.top else ()
            for n in range(self.top + 1)
        )
        return SimplicialModule(self.chain.ring, levels, faces, degs)


def build_K(C: ChainComplex, top: int) -> SimplicialModule:
    bad = validate(C)
    if bad is not None:
        raise DoldKanError(f"invalid chain complex: {bad}")
    logger.info(f"🔧 Building K of a length-{C.top} complex up to level {top}")
    return KConstruction(C, top).simplicial()


@lru_cache(maxsize=None)
def degeneracy_coordinates(J: Subset, m: int) -> Dict[Subset, int]:
    """phi_J in Λ^r Z(m) as an integer combination of s_I(phi_{[r-1]}), r = |J|"""
    r = len(J)
    mons = monomials(m, r)
    pos = {L: t for t, L in enumerate(mons)}
    subsets = list(combinations(range(m), m - r))
    rows = []
    for I in subsets:
        row = [0] * len(mons)
        for L, c in lambda_action(surjection_from_subset(I, m), {top_monomial(r): 1}).items():
            row[pos[L]] += c
        rows.append(row)
    target = [1 if L == tuple(J) else 0 for L in mons]
    coeffs = lattice.solve(rows, target, len(mons))
    if coeffs is None:
        raise DoldKanError(f"phi_{J} is not in the span of degenerate top monomials")
    return {I: c for I, c in zip(subsets, coeffs) if c}


@dataclass
class RoundtripReport:
    """Levelwise isomorphisms, forward[m] and backward[m], or the first failing cell"""
    kind: str
    top: int
    forward: List[ModuleMap] = field(default_factory=list)
    backward: List[ModuleMap] = field(default_factory=list)
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'top': self.top,
            'ok': self.ok,
            'failure': self.failure,
            'levels': [
                {'level': m, 'forward': f.rows, 'backward': b.rows}
                for m, (f, b) in enumerate(zip(self.forward, self.backward))
            ],
        }


def _fail(report: RoundtripReport, message: str) -> RoundtripReport:
    logger.warning(f"⚠️ Roundtrip failed: {message}")
    report.failure = message
    return report


def _complex_roundtrip(C: ChainComplex, top: int) -> RoundtripReport:
    report = RoundtripReport('complex', top)
    K = KConstruction(C, top)
    N = moore_complex(K.simplicial())
    for m in range(top + 1):
        Cm = C.level(m)
        Nm = N.chain.levels[m]
        span = N.spans[m]
        forward_rows = []
        for k in range(Cm.rank):
            vec = K.element(m, [(m, Cm.basis_vector(k), {top_monomial(m): 1})])
            try:
                forward_rows.append(coordinates_in(span, vec))
            except ModuleError:
                return _fail(report, f"a⊗phi_top for basis vector {k} is not a Moore element on level {m}")
        backward_rows = []
        if Cm.rank:
            off = K.block_offset(m, m, top_monomial(m))
            backward_rows = [b[off:off + Cm.rank] for b in span.rows]
        else:
            backward_rows = [[] for _ in span.rows]
        try:
            fwd = ModuleMap.make(Cm, Nm, forward_rows)
            bwd = ModuleMap.make(Nm, Cm, backward_rows)
        except ModuleError as e:
            return _fail(report, f"level {m}: {e}")
        if not fwd.then(bwd).same_as(ModuleMap.identity(Cm)):
            return _fail(report, f"C_{m} -> N_{m} -> C_{m} is not the identity")
        if not bwd.then(fwd).same_as(ModuleMap.identity(Nm)):
            return _fail(report, f"N_{m} -> C_{m} -> N_{m} is not the identity")
        if m:
            left = C.boundary(m).then(report.forward[m - 1])
            right = fwd.then(N.chain.boundary(m))
            if not left.same_as(right):
                return _fail(report, f"boundary square fails on level {m}")
        report.forward.append(fwd)
        report.backward.append(bwd)
    return report


def _module_roundtrip(A: SimplicialModule) -> RoundtripReport:
    report = RoundtripReport('simplicial', A.top)
    N = moore_complex(A)
    K = KConstruction(N.chain, A.top)
    KA = K.simplicial()
    for m in range(A.top + 1):
        Am = A.levels[m]
        rows = []
        for i, J, k in K.cells(m):
            lifted = N.inclusions[i].rows[k]
            vec = [0] * Am.rank
            for I, c in degeneracy_coordinates(J, m).items():
                image = A.degeneracy(I, i)(lifted)
                vec = [x + c * y for x, y in zip(vec, image)]
            rows.append(vec)
        try:
            fwd = ModuleMap.make(KA.levels[m], Am, rows)
        except ModuleError as e:
            return _fail(report, f"level {m}: {e}")
        back_rows = []
        width = KA.levels[m].rank
        for j in range(Am.rank):
            sol = lattice.solve(fwd.rows + Am.relation_rows, Am.basis_vector(j), Am.rank)
            if sol is None:
                return _fail(report, f"basis vector {j} of A_{m} is not hit from K_{m} N A")
            back_rows.append(sol[:width])
        try:
            bwd = ModuleMap.make(Am, KA.levels[m], back_rows)
        except ModuleError as e:
            return _fail(report, f"level {m}: inverse is not well defined ({e})")
        if not bwd.then(fwd).same_as(ModuleMap.identity(Am)):
            return _fail(report, f"A_{m} -> K_{m} N A -> A_{m} is not the identity")
        if not fwd.then(bwd).same_as(ModuleMap.identity(KA.levels[m])):
            return _fail(report, f"K_{m} N A -> A_{m} -> K_{m} N A is not the identity")
        report.forward.append(fwd)
        report.backward.append(bwd)
    for m in range(A.top + 1):
        ops = [Operator('d', m, i) for i in range(m + 1)] if m else []
        if m < A.top:
            ops += [Operator('s', m, i) for i in range(m + 1)]
        for op in ops:
            left = KA.operator(op).then(report.forward[op.target_level])
            right = report.forward[m].then(A.operator(op))
            if not left.same_as(right):
                return _fail(report, f"square for {op} does not commute")
    return report


def roundtrip_check(X: Union[ChainComplex, SimplicialModule],
                    top: Optional[int] = None) -> RoundtripReport:
    """N K C ≅ C for a complex, A ≅ K N A for a simplicial module"""
    bad = validate(X)
    if bad is not None:
        raise DoldKanError(f"invalid input: {bad}")
    try:
        if isinstance(X, ChainComplex):
            return _complex_roundtrip(X, X.top if top is None else top)
        return _module_roundtrip(X)
    except ComplexError as e:
        raise DoldKanError(str(e)) from e
