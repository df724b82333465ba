"""
Simplicial algebras over a truncated operad and the boundary-of-Moore checker.

Every operation of the shipped operads is a tree of binary products, so an
algebra is given by one bilinear product table per level and an operation
acts by evaluating its tree. Faces and degeneracies must be algebra maps.
"""
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations, product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config import Config
from simplicial.complexes import ChainComplex, SimplicialModule, validate
from simplicial.dold_kan import KConstruction, build_K
from simplicial.exterior import Exterior, delta_derivation, lambda_action
from simplicial.lattice import Matrix, Row
from simplicial.maps import (
    SimplicialMapError, Subset, SubsetTuple, Violation, check_subset, codegeneracy,
    coface, covering_tuples,
)
from simplicial.modules import ExactModule, ModuleMap, Subspan, image_preimage, span_ops, span_sum
from simplicial.operads import Tree, TruncatedOperad, build_operad
from utils.logger import logger

ProductTable = List[List[Row]]
VERDICTS = ('equal', 'lhs⊋rhs', 'rhs⊋lhs', 'incomparable', 'truncated')


class AlgebraError(Exception):
    """Invalid algebra data or out-of-range request"""
    pass


@dataclass
class SimplicialOperadAlgebra:
    """A simplicial module with one product table per level; products[m][i][j] = e_i * e_j"""
    operad: TruncatedOperad
    carrier: SimplicialModule
    products: List[ProductTable]
    name: str = 'algebra'
    generators: Optional[KConstruction] = field(default=None, repr=False)
    monomials: Optional[List[List[Tuple[int, ...]]]] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.operad.has_trees:
            raise AlgebraError(f"operad {self.operad.name} has no operation trees to act with")
        if len(self.products) != self.carrier.top + 1:
            raise AlgebraError(f"need {self.carrier.top + 1} product tables, got {len(self.products)}")
        for m, table in enumerate(self.products):
            n = self.carrier.levels[m].rank
            if len(table) != n or any(len(row) != n for row in table):
                raise AlgebraError(f"product table on level {m} must be {n} x {n}")
            if any(len(v) != n for row in table for v in row):
                raise AlgebraError(f"products on level {m} must be vectors of length {n}")

    @property
    def top(self) -> int:
        return self.carrier.top

    def level(self, m: int) -> ExactModule:
        if not 0 <= m <= self.top:
            raise AlgebraError(f"level {m} outside 0..{self.top}")
        return self.carrier.levels[m]

    def multiply(self, m: int, x: Sequence[int], y: Sequence[int]) -> Row:
        Am = self.level(m)
        table = self.products[m]
        out = [0] * Am.rank
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    c = a * b
                    out = [u + c * v for u, v in zip(out, table[i][j])]
        return Am.reduce(out)

    def evaluate(self, m: int, tree: Tree, xs: Sequence[Sequence[int]]) -> Row:
        if isinstance(tree, int):
            return self.level(m).reduce(xs[tree])
        return self.multiply(m, self.evaluate(m, tree[0], xs), self.evaluate(m, tree[1], xs))

    def act(self, m: int, o: Sequence[int], xs: Sequence[Sequence[int]]) -> Row:
        """gamma_m(o ⊗ x_1 ⊗ ... ⊗ x_p)"""
        p = len(xs)
        if len(o) != self.operad.rank(p):
            raise AlgebraError(f"operation of length {len(o)} in O({p}) of rank {self.operad.rank(p)}")
        Am = self.level(m)
        out = [0] * Am.rank
        for b, c in enumerate(o):
            if c:
                v = self.evaluate(m, self.operad.trees[p][b], xs)
                out = [u + c * w for u, w in zip(out, v)]
        return Am.reduce(out)

    def span_product(self, m: int, left: Subspan, right: Subspan) -> Subspan:
        gens = [self.multiply(m, x, y) for x in left.generators() for y in right.generators()]
        return Subspan.span(self.level(m), gens)

    def evaluate_spans(self, m: int, tree: Tree, spans: Sequence[Subspan]) -> Subspan:
        """Span of all tree evaluations with the i-th input drawn from spans[i]"""
        if isinstance(tree, int):
            return spans[tree]
        return self.span_product(m, self.evaluate_spans(m, tree[0], spans),
                                 self.evaluate_spans(m, tree[1], spans))

    def embed(self, m: int, vec: Sequence[int]) -> Row:
        """Degree-one generator of a symmetric example"""
        if self.generators is None or self.monomials is None:
            raise AlgebraError(f"{self.name} is not generated by a K construction")
        out = [0] * self.level(m).rank
        for k, c in enumerate(vec):
            if c:
                out[self.monomials[m].index((k,))] += c
        return self.level(m).reduce(out)


def validate_algebra(A: SimplicialOperadAlgebra, samples: int = 64,
                     seed: Optional[int] = None) -> Optional[Violation]:
    """Carrier identities, multiplicative operators, and the operad laws on sampled inputs"""
    bad = validate(A.carrier)
    if bad is not None:
        return bad
    O = A.operad
    rng = random.Random(Config.DEFAULT_SEED if seed is None else seed)
    for m in range(A.top + 1):
        Am = A.level(m)
        basis = [Am.basis_vector(i) for i in range(Am.rank)]
        for rel in Am.relation_rows:
            for j, e in enumerate(basis):
                if not Am.is_zero(A.multiply(m, rel, e)) or not Am.is_zero(A.multiply(m, e, rel)):
                    return Violation("product respects relations", m, (j,))
        ops = [('d', k, f) for k, f in enumerate(A.carrier.faces[m])]
        ops += [('s', k, f) for k, f in enumerate(A.carrier.degeneracies[m])]
        for kind, k, f in ops:
            target = m - 1 if kind == 'd' else m + 1
            for i, j in product(range(Am.rank), repeat=2):
                lhs = f(A.multiply(m, basis[i], basis[j]))
                rhs = A.multiply(target, f(basis[i]), f(basis[j]))
                if lhs != rhs:
                    return Violation(f"{kind}_{k} is multiplicative", m, (k, i, j))
        if not Am.rank:
            continue

        def inputs(k: int) -> List[List[Row]]:
            if Am.rank ** k <= samples:
                return [[basis[i] for i in idx] for idx in product(range(Am.rank), repeat=k)]
            return [[basis[rng.randrange(Am.rank)] for _ in range(k)] for _ in range(samples)]

        for p in range(1, O.max_arity + 1):
            for xs in inputs(p):
                for b, o in enumerate(O.basis(p)):
                    if p == 1 and O.unit == o and A.act(m, o, xs) != Am.reduce(xs[0]):
                        return Violation("unit acts as the identity", m, (b,))
                    for sigma in permutations(range(p)):
                        lhs = A.act(m, O.act(o, sigma), xs)
                        rhs = A.act(m, o, [xs[sigma[i]] for i in range(p)])
                        if lhs != rhs:
                            return Violation("action is equivariant", m, (p, b) + sigma)
        for ks in O.shapes():
            p, k = len(ks), sum(ks)
            starts = [sum(ks[:i]) for i in range(p)]
            for xs in inputs(k):
                for idx in product(range(O.rank(p)), *(range(O.rank(a)) for a in ks)):
                    o = O.basis(p)[idx[0]]
                    inner = [(a, O.basis(a)[b]) for a, b in zip(ks, idx[1:])]
                    lhs = A.act(m, O.compose(o, inner), xs)
                    rhs = A.act(m, o, [A.act(m, v, xs[s:s + a]) for (a, v), s in zip(inner, starts)])
                    if lhs != rhs:
                        return Violation("action is associative", m, tuple(idx), f"shape {ks}")
    return None


# ---------- generated subalgebras ----------

def subalgebra_generate(A: SimplicialOperadAlgebra, m: int, seed: Subspan) -> Subspan:
    """Least sub-O-algebra of A_m containing seed.

    Every operation is a tree of binary products, so closing under the
    product closes under all of them.
    """
    Am = A.level(m)
    if seed.ambient != Am:
        raise AlgebraError(f"seed does not live in level {m}")
    current = seed
    gens = current.generators()
    pending = [(x, y) for x in gens for y in gens]
    while pending:
        x, y = pending.pop()
        v = A.multiply(m, x, y)
        if current.contains_vector(v):
            continue
        current = span_ops(current, Subspan.span(Am, [v]), 'sum')
        gens.append(v)
        pending.extend([(v, g) for g in gens] + [(g, v) for g in gens[:-1]])
    return current


def degenerate_span(A: SimplicialOperadAlgebra, m: int) -> Subspan:
    """s_0(A_{m-1}) + ... + s_{m-1}(A_{m-1})"""
    if not 1 <= m <= A.top:
        raise AlgebraError(f"degeneracies into level {m} need 1 <= m <= {A.top}")
    images = [image_preimage(s, None, 'image') for s in A.carrier.degeneracies[m - 1]]
    return span_sum(images, A.level(m))


def degeneracy_generation_check(A: SimplicialOperadAlgebra, m: int) -> bool:
    generated = subalgebra_generate(A, m, degenerate_span(A, m))
    return span_ops(generated, Subspan.whole(A.level(m)), 'equal')


# ---------- the two sides ----------

def _verdict(lhs: Subspan, rhs: Subspan) -> str:
    if span_ops(lhs, rhs, 'equal'):
        return 'equal'
    if span_ops(lhs, rhs, 'contains'):
        return 'lhs⊋rhs'
    if span_ops(rhs, lhs, 'contains'):
        return 'rhs⊋lhs'
    return 'incomparable'


def boundary_of_moore(X: Union[SimplicialOperadAlgebra, SimplicialModule], m: int) -> Subspan:
    """d_m(N_m) inside level m - 1"""
    carrier = X.carrier if isinstance(X, SimplicialOperadAlgebra) else X
    return image_preimage(carrier.faces[m][m], carrier.moore_subspan(m), 'image')


def covering_span(A: SimplicialOperadAlgebra, m: int, tup: SubsetTuple) -> Subspan:
    """Span of gamma(O(p) ⊗ K_{I_1} ⊗ ... ⊗ K_{I_p}) inside A_{m-1}"""
    p = len(tup)
    spans = [A.carrier.k_subspan(m - 1, I) for I in tup.parts]
    pieces = [A.evaluate_spans(m - 1, tree, spans) for tree in A.operad.trees.get(p, [])]
    return span_sum(pieces, A.level(m - 1))


def span_dict(s: Subspan) -> dict:
    return {'generators': s.generators(), 'order': s.order()}


@dataclass
class PairingLift:
    """x in level m with d_j x = 0 for j != r and d_r x = target, plus its Moore preimage"""
    level: int
    target: Row
    r: Optional[int] = None
    degeneracies: Tuple[int, ...] = ()
    lift: Optional[Row] = None
    preimage: Optional[Row] = None
    first_choice: bool = False

    @property
    def ok(self) -> bool:
        return self.preimage is not None

    def to_dict(self) -> dict:
        return {
            'level': self.level, 'target': self.target, 'ok': self.ok, 'r': self.r,
            'degeneracies': list(self.degeneracies), 'lift': self.lift,
            'preimage': self.preimage, 'first_choice': self.first_choice,
        }


@dataclass
class Theorem1Report:
    level: int
    lhs: Subspan
    rhs: Subspan
    rhs_broad: Subspan
    verdict: str
    broad_verdict: str
    omitted_lengths: List[int]
    hypothesis: bool
    lifts: List[PairingLift] = field(default_factory=list)

    @property
    def inclusion_ok(self) -> bool:
        """rhs is always inside lhs"""
        return span_ops(self.lhs, self.rhs, 'contains')

    @property
    def uncertified(self) -> List[PairingLift]:
        return [lift for lift in self.lifts if not lift.ok]

    def to_dict(self) -> dict:
        return {
            'level': self.level,
            'lhs': span_dict(self.lhs),
            'rhs': span_dict(self.rhs),
            'rhs_broad': span_dict(self.rhs_broad),
            'verdict': self.verdict,
            'broad_verdict': self.broad_verdict,
            'omitted_lengths': self.omitted_lengths,
            'hypothesis': self.hypothesis,
            'inclusion_ok': self.inclusion_ok,
            'certified': sum(1 for lift in self.lifts if lift.ok),
            'uncertified': [lift.to_dict() for lift in self.uncertified],
        }


def theorem1_sides(A: SimplicialOperadAlgebra, m: int, certify: bool = False) -> Theorem1Report:
    """d_m(N_m A) against the sum of gamma(O(p) ⊗ K_{I_1} ⊗ ... ⊗ K_{I_p}).

    The main sum runs over covering tuples of [m-1] with nonempty proper parts
    and 2 <= p <= max_arity; the broad sum also admits p = 1.
    """
    if not 2 <= m <= A.top:
        raise AlgebraError(f"theorem 1 needs 2 <= m <= {A.top}, got {m}")
    P = A.operad.max_arity
    ambient = A.level(m - 1)
    lhs = boundary_of_moore(A, m)
    tuples = [t for p in range(2, min(P, m) + 1) for t in covering_tuples(m, p, proper=True)]
    rhs = span_sum([covering_span(A, m, t) for t in tuples], ambient)
    single = covering_span(A, m, SubsetTuple(m, (tuple(range(m)),)))
    rhs_broad = span_sum([rhs, single], ambient)
    omitted = [p for p in range(2, m + 1) if p > P]
    verdict = 'truncated' if omitted else _verdict(lhs, rhs)
    report = Theorem1Report(
        level=m, lhs=lhs, rhs=rhs, rhs_broad=rhs_broad, verdict=verdict,
        broad_verdict='truncated' if omitted else _verdict(lhs, rhs_broad),
        omitted_lengths=omitted, hypothesis=degeneracy_generation_check(A, m),
    )
    if certify:
        for t in tuples:
            gens = [A.carrier.k_subspan(m - 1, I).generators() for I in t.parts]
            for o in A.operad.basis(len(t)):
                for xs in product(*gens):
                    report.lifts.append(pairing_lift(A, m, o, list(xs), t))
    if not report.inclusion_ok:
        logger.warning(f"⚠️ Level {m}: gamma-sum is not inside d(N_{m})")
    logger.info(f"📐 Theorem 1 on level {m}: {report.verdict}")
    return report


def quadratic_collapse_rhs(A: SimplicialOperadAlgebra, m: int) -> Subspan:
    """Sum over covering pairs of gamma(O(2) ⊗ K_{I'} ⊗ K_{I''})"""
    if not 2 <= m <= A.top:
        raise AlgebraError(f"collapse needs 2 <= m <= {A.top}, got {m}")
    if A.operad.rank(2) == 0:
        raise AlgebraError(f"operad {A.operad.name} has no binary operations")
    pairs = covering_tuples(m, 2, proper=True)
    return span_sum([covering_span(A, m, t) for t in pairs], A.level(m - 1))


def comm_collapse_rhs(A: SimplicialOperadAlgebra, m: int) -> Subspan:
    """Sum over covering pairs of the product spans K_{I'} K_{I''}"""
    if A.operad.name != 'comm':
        raise AlgebraError(f"the product collapse needs the comm operad, got {A.operad.name}")
    if not 2 <= m <= A.top:
        raise AlgebraError(f"collapse needs 2 <= m <= {A.top}, got {m}")
    spans = []
    for t in covering_tuples(m, 2, proper=True):
        left, right = (A.carrier.k_subspan(m - 1, I) for I in t.parts)
        spans.append(A.span_product(m - 1, left, right))
    return span_sum(spans, A.level(m - 1))


# ---------- the psi bijection and the pairing lift ----------

def _carrier(X: Union[SimplicialOperadAlgebra, SimplicialModule]) -> SimplicialModule:
    return X.carrier if isinstance(X, SimplicialOperadAlgebra) else X


def bar_moore(X: Union[SimplicialOperadAlgebra, SimplicialModule], n: int, r: int) -> Subspan:
    """Intersection of ker d_i over i != r on level n"""
    return _carrier(X).k_subspan(n, tuple(i for i in range(n + 1) if i != r))


def psi_map(X: Union[SimplicialOperadAlgebra, SimplicialModule], n: int, r: int,
            a: Sequence[int], direction: str = 'forward') -> Row:
    """psi(a) = a - sum_{k=r}^{n-1} (-1)^(n-1-k) s_k d_n a, or its inverse.

    psi carries N_n onto the intersection of ker d_i for i != r, and
    d_r psi(a) = (-1)^(n-r) d_n a.
    """
    A = _carrier(X)
    if not 0 <= r <= n <= A.top:
        raise AlgebraError(f"psi needs 0 <= r <= n <= {A.top}, got r={r}, n={n}")
    An = A.levels[n]
    if len(a) != An.rank:
        raise AlgebraError(f"vector of length {len(a)} on level {n} of rank {An.rank}")
    moore = A.moore_subspan(n)
    bar = bar_moore(A, n, r)
    if direction == 'forward':
        if not moore.contains_vector(a):
            raise AlgebraError(f"element is not in N_{n}")
        da = A.faces[n][n](a) if n else []
        out = list(a)
        for k in range(r, n):
            sign = -1 if (n - 1 - k) % 2 else 1
            out = [u - sign * v for u, v in zip(out, A.degeneracies[n - 1][k](da))]
        out = An.reduce(out)
        if not bar.contains_vector(out):
            raise AlgebraError(f"psi(a) left the kernels of d_i, i != {r}: not a simplicial module")
        return out
    if direction == 'inverse':
        if not bar.contains_vector(a):
            raise AlgebraError(f"element is not in the kernels of d_i, i != {r}")
        if r == n:
            return An.reduce(a)
        da = A.faces[n][r](a)
        if (n - r) % 2:
            da = [-v for v in da]
        out = list(a)
        for k in range(r, n):
            sign = -1 if (n - 1 - k) % 2 else 1
            out = [u + sign * v for u, v in zip(out, A.degeneracies[n - 1][k](da))]
        out = An.reduce(out)
        if not moore.contains_vector(out) or psi_map(A, n, r, out) != An.reduce(a):
            raise AlgebraError("inverse of psi failed to certify")
        return out
    raise AlgebraError(f"unknown direction {direction!r}")


def _lift_candidates(Is: SubsetTuple, m: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """(r, degeneracy indices) pairs, the proof's choice first"""
    out: List[Tuple[int, Tuple[int, ...]]] = []
    common = set(range(m)).intersection(*map(set, Is.parts))
    r0 = next((r for r in range(1, m) if r not in common), None)
    if r0 is not None:
        i0 = next(i for i, part in enumerate(Is.parts) if r0 in part)
        out.append((r0, tuple(r0 - 1 if i == i0 else r0 for i in range(len(Is)))))
    for r in range(m):
        options = [e for e in (r - 1, r) if e >= 0]
        for choice in product(options, repeat=len(Is)):
            if (r, choice) not in out:
                out.append((r, choice))
    return out


def pairing_lift(A: SimplicialOperadAlgebra, m: int, o: Sequence[int],
                 xs: Sequence[Sequence[int]], Is: SubsetTuple) -> PairingLift:
    """Lift gamma(o ⊗ x_1 ⊗ ... ⊗ x_p) on level m-1 to d_m of an element of N_m.

    x = gamma(o ⊗ s_{e_1} x_1 ⊗ ... ⊗ s_{e_p} x_p) with every e_i in {r-1, r};
    the first (r, e) whose x lies in the kernels of d_j, j != r, is kept, and
    (-1)^(m-r) psi^{-1}(x) is the Moore preimage.
    """
    if not 1 <= m <= A.top:
        raise AlgebraError(f"lift into level {m} needs 1 <= m <= {A.top}")
    if Is.ambient != m or len(Is) != len(xs) or not Is.covering:
        raise AlgebraError(f"{Is.parts} is not a covering tuple of [{m - 1}] for {len(xs)} inputs")
    if any(not part for part in Is.parts):
        raise AlgebraError("covering tuple has an empty part")
    for x, part in zip(xs, Is.parts):
        if not A.carrier.k_subspan(m - 1, part).contains_vector(x):
            raise AlgebraError(f"input is not in K_{part} on level {m - 1}")
    target = A.act(m - 1, o, xs)
    result = PairingLift(m, target)
    Am = A.level(m)
    for attempt, (r, choice) in enumerate(_lift_candidates(Is, m)):
        lifted = [A.carrier.degeneracies[m - 1][e](x) for e, x in zip(choice, xs)]
        x = A.act(m, o, lifted)
        faces = A.carrier.faces[m]
        if any(not A.level(m - 1).is_zero(faces[j](x)) for j in range(m + 1) if j != r):
            continue
        if faces[r](x) != target:
            continue
        a = psi_map(A, m, r, x, 'inverse')
        if (m - r) % 2:
            a = Am.reduce([-v for v in a])
        if faces[m](a) != target:
            continue
        result.r, result.degeneracies, result.lift, result.preimage = r, choice, x, a
        result.first_choice = attempt == 0
        return result
    logger.warning(f"⚠️ No pairing lift for {Is.parts} on level {m}")
    return result


# ---------- the differential on decorated terms ----------

FM_CONVENTIONS = ('dual', 'literal')


@dataclass(frozen=True)
class Slot:
    """a ⊗ phi_J with a in C_degree and |J| = degree"""
    degree: int
    element: Tuple[int, ...]
    monomial: Subset


@dataclass(frozen=True)
class DecoratedTerm:
    """o ⊗ (a_1 ⊗ x_1) ⊗ ... ⊗ (a_p ⊗ x_p) on level m"""
    level: int
    operation: Tuple[int, ...]
    slots: Tuple[Slot, ...]

    @property
    def covering(self) -> bool:
        support = set().union(*(set(s.monomial) for s in self.slots)) if self.slots else set()
        return support == set(range(self.level))


@dataclass
class FormalSummand:
    """One choice of d_m or delta_m per slot; factors are (degree, a or da, image)"""
    choices: Tuple[str, ...]
    factors: List[Tuple[int, Optional[Row], Exterior]]
    index: SubsetTuple

    @property
    def vanishes(self) -> bool:
        return any(not image for _, _, image in self.factors)

    def to_dict(self) -> dict:
        return {
            'choices': list(self.choices),
            'factors': [
                {'degree': d, 'element': a, 'image': [[list(J), c] for J, c in sorted(img.items())]}
                for d, a, img in self.factors
            ],
            'index': [list(J) for J in self.index.parts],
            'vanishes': self.vanishes,
        }


@dataclass
class FormalSum:
    summands: List[FormalSummand]
    convention: str
    dropped_all_faces: bool
    relaxed: bool

    def nonzero(self) -> List[FormalSummand]:
        return [s for s in self.summands if not s.vanishes]

    def to_dict(self) -> dict:
        return {
            'convention': self.convention,
            'dropped_all_faces': self.dropped_all_faces,
            'relaxed': self.relaxed,
            'summands': [s.to_dict() for s in self.summands],
        }


def _last_face_image(J: Subset, m: int, convention: str) -> Exterior:
    if convention == 'literal' and m - 1 in J:
        return {}
    return lambda_action(coface(m, m), {J: 1})


def fm_differential(term: DecoratedTerm, chain: Optional[ChainComplex] = None,
                    convention: str = 'dual') -> FormalSum:
    """d_m of a decorated term, expanded over the 2^p choices of d_m or delta_m per slot.

    A slot a ⊗ x goes to a ⊗ d_m(x) or to da ⊗ delta_m(x). Under the literal
    last-face clause the all-d_m summand of a covering term is zero and is dropped.
    """
    if convention not in FM_CONVENTIONS:
        raise AlgebraError(f"unknown convention {convention!r}")
    m = term.level
    if m < 1:
        raise AlgebraError("the last face needs level >= 1")
    for s in term.slots:
        try:
            check_subset(s.monomial, m)
        except SimplicialMapError as e:
            raise AlgebraError(str(e)) from e
        if len(s.monomial) != s.degree:
            raise AlgebraError(f"monomial {s.monomial} has degree {len(s.monomial)}, slot has {s.degree}")
    drop = convention == 'literal' and term.covering
    if not term.covering:
        logger.info(f"ℹ️ Supports do not cover [{m - 1}]; the all-face summand is kept")
    alpha = coface(m, m)
    out: List[FormalSummand] = []
    for choices in product(('d', 'delta'), repeat=len(term.slots)):
        if drop and all(c == 'd' for c in choices):
            continue
        factors = []
        for c, s in zip(choices, term.slots):
            if c == 'd':
                factors.append((s.degree, list(s.element), _last_face_image(s.monomial, m, convention)))
            else:
                da = chain.boundary(s.degree)(list(s.element)) if chain is not None else None
                factors.append((s.degree - 1, da, delta_derivation(alpha, {s.monomial: 1})))
        index = SubsetTuple(m - 1, tuple(
            tuple(sorted(set().union(*(set(J) for J in img)))) for _, _, img in factors
        ))
        out.append(FormalSummand(tuple(choices), factors, index))
    return FormalSum(out, convention, drop, not term.covering)


# ---------- example algebras ----------

def _check_free(C: ChainComplex) -> None:
    for i, Ci in enumerate(C.levels):
        if Ci.relations != ExactModule.free(C.ring, Ci.rank).relations:
            raise AlgebraError(f"C_{i} is not free over {C.ring.name}")


def _induced(rows: Matrix, monos: List[Tuple[int, ...]], target: List[Tuple[int, ...]]) -> Matrix:
    """Matrix of the algebra map induced by a linear map on generators"""
    pos = {mono: t for t, mono in enumerate(target)}
    out = []
    for mono in monos:
        partial: Dict[Tuple[int, ...], int] = {(): 1}
        for g in mono:
            nxt: Dict[Tuple[int, ...], int] = {}
            for key, c in partial.items():
                for j, a in enumerate(rows[g]):
                    if a:
                        k2 = tuple(sorted(key + (j,)))
                        nxt[k2] = nxt.get(k2, 0) + c * a
            partial = nxt
        row = [0] * len(target)
        for key, c in partial.items():
            row[pos[key]] += c
        out.append(row)
    return out


def symmetric_example(C: ChainComplex, degree_cap: int = 2, top: Optional[int] = None,
                      rank_cap: Optional[int] = None) -> SimplicialOperadAlgebra:
    """Truncated symmetric algebra S^0 + ... + S^cap on K(C), products above the cap set to zero"""
    if not C.ring.is_prime_field:
        raise AlgebraError(f"symmetric example needs Z/q with q prime, got {C.ring.name}")
    if degree_cap < 1:
        raise AlgebraError("degree_cap must be at least 1")
    _check_free(C)
    top = Config.DEFAULT_TOP if top is None else top
    cap = Config.RANK_CAP if rank_cap is None else rank_cap
    K = KConstruction(C, top)
    monos: List[List[Tuple[int, ...]]] = []
    for m in range(top + 1):
        n = K.level(m).rank
        level = [mono for d in range(degree_cap + 1)
                 for mono in combinations_with_replacement(range(n), d)]
        if len(level) > cap:
            raise AlgebraError(f"level {m} has rank {len(level)}, above the cap {cap}")
        monos.append(level)
    logger.info(f"🔧 Building a degree-{degree_cap} symmetric algebra up to level {top}")
    levels = tuple(ExactModule.free(C.ring, len(ms)) for ms in monos)

    def lift(alpha) -> ModuleMap:
        m, n = alpha.source_dim, alpha.target_dim
        rows = _induced(K.fin_map(alpha).rows, monos[n], monos[m])
        return ModuleMap.make(levels[n], levels[m], rows, check=False)

    faces = tuple(tuple(lift(coface(n, i)) for i in range(n + 1)) if n else ()
                  for n in range(top + 1))
    degs = tuple(tuple(lift(codegeneracy(n, i)) for i in range(n + 1)) if n < top else ()
                 for n in range(top + 1))
    carrier = SimplicialModule(C.ring, levels, faces, degs)
    products = []
    for m, ms in enumerate(monos):
        pos = {mono: t for t, mono in enumerate(ms)}
        table = []
        for u in ms:
            row = []
            for v in ms:
                w = tuple(sorted(u + v))
                vec = [0] * len(ms)
                if len(w) <= degree_cap:
                    vec[pos[w]] = 1
                row.append(vec)
            table.append(row)
        products.append(table)
    return SimplicialOperadAlgebra(build_operad('comm'), carrier, products,
                                   name=f"Sym≤{degree_cap} K(C)", generators=K, monomials=monos)


def square_zero_example(C: ChainComplex, top: int) -> SimplicialOperadAlgebra:
    """K(C) with the zero product"""
    carrier = build_K(C, top)
    products = [[[[0] * M.rank for _ in range(M.rank)] for _ in range(M.rank)] for M in carrier.levels]
    return SimplicialOperadAlgebra(build_operad('comm'), carrier, products, name="K(C) square-zero")
