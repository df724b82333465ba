"""
Truncated operads in abelian groups.

O(p) is free on a finite basis. Composition is stored as one table per arity
shape (k_1, ..., k_p): the row for basis indices (b, b_1, ..., b_p), taken in
lexicographic order, is the coordinate vector of gamma(o_b; o_b1, ..., o_bp)
in O(k_1 + ... + k_p). Symmetric groups act through one matrix per
permutation, sigma sending x_i to x_sigma[i].

The shipped operads come from multilinear polynomials: an element of O(p) is
a polynomial in x_0..x_{p-1} using every variable exactly once, and gamma
substitutes polynomials for variables block by block.
"""
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from config import Config
from simplicial import lattice
from simplicial.lattice import Matrix, Row
from simplicial.maps import SubsetTuple, Violation
from simplicial.modules import ExactModule, Z
from utils.logger import logger

Shape = Tuple[int, ...]
Perm = Tuple[int, ...]
Tree = Union[int, Tuple['Tree', 'Tree']]
Poly = Dict[Tuple[int, ...], int]


class OperadError(Exception):
    """Invalid operad data or composition shape"""
    pass


def arity_tuples(length: int, max_total: int, min_part: int = 1) -> Iterator[Shape]:
    """Tuples of `length` arities, each >= min_part, summing to at most max_total"""
    if length == 0:
        yield ()
        return
    for first in range(min_part, max_total + 1):
        for rest in arity_tuples(length - 1, max_total - first, min_part):
            yield (first,) + rest


def block_permutation(ks: Sequence[int], sigma: Perm) -> Perm:
    """Relabelling that moves block sigma[i] of the permuted layout back into place"""
    offsets = [sum(ks[:i]) for i in range(len(ks))]
    out: List[int] = []
    for i in range(len(ks)):
        j = sigma[i]
        out.extend(offsets[j] + t for t in range(ks[j]))
    return tuple(out)


def block_sum(perms: Sequence[Perm]) -> Perm:
    out: List[int] = []
    offset = 0
    for tau in perms:
        out.extend(offset + t for t in tau)
        offset += len(tau)
    return tuple(out)


@dataclass
class TruncatedOperad:
    """O(0), ..., O(max_arity) with composition and action tables"""
    name: str
    max_arity: int
    ranks: Tuple[int, ...]
    unit: Row
    tables: Dict[Shape, Matrix]
    actions: Dict[int, Dict[Perm, Matrix]]
    trees: Dict[int, List[Tree]] = field(default_factory=dict)

    def __post_init__(self):
        if self.max_arity < 1:
            raise OperadError("max_arity must be at least 1")
        if len(self.ranks) != self.max_arity + 1:
            raise OperadError(f"need {self.max_arity + 1} ranks, got {len(self.ranks)}")
        if len(self.unit) != self.ranks[1]:
            raise OperadError(f"unit has length {len(self.unit)}, O(1) has rank {self.ranks[1]}")

    def rank(self, p: int) -> int:
        return self.ranks[p] if 0 <= p <= self.max_arity else 0

    def space(self, p: int) -> ExactModule:
        return ExactModule.free(Z, self.rank(p))

    def basis(self, p: int) -> List[Row]:
        return lattice.eye(self.rank(p))

    @property
    def min_part(self) -> int:
        return 0 if self.rank(0) else 1

    def shapes(self) -> Iterator[Shape]:
        for p in range(1, self.max_arity + 1):
            yield from arity_tuples(p, self.max_arity, self.min_part)

    @property
    def has_trees(self) -> bool:
        return all(len(self.trees.get(p, [])) == self.rank(p) for p in range(1, self.max_arity + 1))

    def compose(self, o: Sequence[int], inner: Sequence[Tuple[int, Sequence[int]]]) -> Row:
        """gamma(o; o_1, ..., o_p) for o in O(p) and (k_i, o_i) with o_i in O(k_i)"""
        p = len(inner)
        if len(o) != self.rank(p):
            raise OperadError(f"operation of length {len(o)} in O({p}) of rank {self.rank(p)}")
        ks = tuple(k for k, _ in inner)
        for k, v in inner:
            if len(v) != self.rank(k):
                raise OperadError(f"operation of length {len(v)} in O({k}) of rank {self.rank(k)}")
        if p == 0:
            return list(o)
        k = sum(ks)
        if k > self.max_arity:
            raise OperadError(f"composite arity {k} exceeds the truncation {self.max_arity}")
        out = [0] * self.rank(k)
        if not out or not any(o):
            return out
        try:
            rows = self.tables[ks]
        except KeyError:
            raise OperadError(f"no composition table for shape {ks}")
        vectors = [list(o)] + [list(v) for _, v in inner]
        for row, idx in zip(rows, product(*(range(len(v)) for v in vectors))):
            c = 1
            for v, b in zip(vectors, idx):
                c *= v[b]
                if not c:
                    break
            if c:
                out = [x + c * y for x, y in zip(out, row)]
        return out

    def act(self, o: Sequence[int], sigma: Perm) -> Row:
        p = len(sigma)
        matrix = self.actions.get(p, {}).get(tuple(sigma))
        if matrix is None:
            raise OperadError(f"no action of {tuple(sigma)} on arity {p}")
        if not self.rank(p):
            return []
        return lattice.vec_mat(list(o), matrix, self.rank(p))

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'max_arity': self.max_arity,
            'ranks': list(self.ranks),
            'unit': list(self.unit),
            'tables': [{'shape': list(s), 'matrix': m} for s, m in sorted(self.tables.items())],
            'actions': [
                {'perm': list(sigma), 'matrix': m}
                for p in sorted(self.actions) for sigma, m in sorted(self.actions[p].items())
            ],
            'trees': {str(p): [_tree_to_json(t) for t in ts] for p, ts in sorted(self.trees.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'TruncatedOperad':
        actions: Dict[int, Dict[Perm, Matrix]] = {}
        for entry in data.get('actions', []):
            sigma = tuple(entry['perm'])
            actions.setdefault(len(sigma), {})[sigma] = [list(r) for r in entry['matrix']]
        return cls(
            name=data.get('name', 'custom'),
            max_arity=data['max_arity'],
            ranks=tuple(data['ranks']),
            unit=list(data['unit']),
            tables={tuple(e['shape']): [list(r) for r in e['matrix']] for e in data.get('tables', [])},
            actions=actions,
            trees={int(p): [_tree_from_json(t) for t in ts] for p, ts in data.get('trees', {}).items()},
        )


def _tree_to_json(tree: Tree):
    return tree if isinstance(tree, int) else [_tree_to_json(tree[0]), _tree_to_json(tree[1])]


def _tree_from_json(data) -> Tree:
    if isinstance(data, int):
        return data
    if isinstance(data, list) and len(data) == 2:
        return (_tree_from_json(data[0]), _tree_from_json(data[1]))
    raise OperadError(f"malformed operation tree {data!r}")


# ---------- validation ----------

def _eq(a: Sequence[int], b: Sequence[int]) -> bool:
    return list(a) == list(b)


def _check_unit(O: TruncatedOperad) -> Optional[Violation]:
    for p in range(O.max_arity + 1):
        for b, o in enumerate(O.basis(p)):
            if p >= 1 and not _eq(O.compose(O.unit, [(p, o)]), o):
                return Violation("gamma(1; o) = o", p, (b,))
            if not _eq(O.compose(o, [(1, O.unit)] * p), o):
                return Violation("gamma(o; 1, ..., 1) = o", p, (b,))
    return None


def _check_associativity(O: TruncatedOperad) -> Optional[Violation]:
    P = O.max_arity
    for ks in O.shapes():
        p, k = len(ks), sum(ks)
        for ls in arity_tuples(k, P, O.min_part):
            starts = [sum(ks[:i]) for i in range(p)]
            for idx in product(range(O.rank(p)), *(range(O.rank(a)) for a in ks + ls)):
                o = O.basis(p)[idx[0]]
                inner = [(a, O.basis(a)[b]) for a, b in zip(ks, idx[1:1 + p])]
                leaves = [(a, O.basis(a)[b]) for a, b in zip(ls, idx[1 + p:])]
                lhs = O.compose(O.compose(o, inner), leaves)
                nested = []
                for i, (a, v) in enumerate(inner):
                    block = leaves[starts[i]:starts[i] + a]
                    nested.append((sum(x for x, _ in block), O.compose(v, block)))
                rhs = O.compose(o, nested)
                if not _eq(lhs, rhs):
                    return Violation("gamma associativity", k, tuple(idx),
                                     f"outer shape {ks}, inner shape {ls}")
    return None


def _check_equivariance(O: TruncatedOperad) -> Optional[Violation]:
    for p in range(O.max_arity + 1):
        perms = list(permutations(range(p)))
        swaps = [tuple(range(i)) + (i + 1, i) + tuple(range(i + 2, p)) for i in range(p - 1)]
        for b, o in enumerate(O.basis(p)):
            if not _eq(O.act(o, tuple(range(p))), o):
                return Violation("identity permutation acts trivially", p, (b,))
            for sigma in perms:
                for tau in swaps:
                    composite = tuple(tau[sigma[i]] for i in range(p))
                    if not _eq(O.act(O.act(o, sigma), tau), O.act(o, composite)):
                        return Violation("action is a group action", p, (b,) + sigma + tau)
    for ks in O.shapes():
        p = len(ks)
        for idx in product(range(O.rank(p)), *(range(O.rank(a)) for a in ks)):
            o = O.basis(p)[idx[0]]
            inner = [(a, O.basis(a)[b]) for a, b in zip(ks, idx[1:])]
            base = O.compose(o, inner)
            for sigma in permutations(range(p)):
                lhs = O.compose(O.act(o, sigma), inner)
                moved = O.compose(o, [inner[sigma[i]] for i in range(p)])
                rhs = O.act(moved, block_permutation(ks, sigma))
                if not _eq(lhs, rhs):
                    return Violation("gamma(o.sigma; ...) equivariance", p, tuple(idx) + sigma,
                                     f"shape {ks}")
            for taus in product(*(permutations(range(a)) for a in ks)):
                lhs = O.compose(o, [(a, O.act(v, tau)) for (a, v), tau in zip(inner, taus)])
                rhs = O.act(base, block_sum(taus))
                if not _eq(lhs, rhs):
                    return Violation("gamma(o; o_i.tau_i) equivariance", p, tuple(idx),
                                     f"shape {ks}, permutations {taus}")
    return None


def validate_operad(O: TruncatedOperad) -> Optional[Violation]:
    """First failing unit, associativity or equivariance law, or None"""
    try:
        for check in (_check_unit, _check_associativity, _check_equivariance):
            bad = check(O)
            if bad is not None:
                logger.warning(f"⚠️ Operad {O.name}: {bad}")
                return bad
    except OperadError as e:
        return Violation("table shape", 0, (), str(e))
    except lattice.LatticeError as e:
        return Violation("table shape", 0, (), str(e))
    return None


# ---------- decorated indices ----------

def gamma_tilde(outer: SubsetTuple, inner: Sequence[SubsetTuple]) -> Optional[SubsetTuple]:
    """(I_1 ++ ... ++ I_p) when outer = (union I_1, ..., union I_p), None (zero) otherwise"""
    if len(inner) != len(outer):
        raise OperadError(f"{len(inner)} inner tuples for an outer tuple of length {len(outer)}")
    for t in inner:
        if t.ambient != outer.ambient:
            raise OperadError(f"inner tuple over [{t.ambient - 1}], outer over [{outer.ambient - 1}]")
    if any(t.union != tuple(part) for t, part in zip(inner, outer.parts)):
        return None
    return SubsetTuple(outer.ambient, tuple(J for t in inner for J in t.parts))


def decorated_compose(O: TruncatedOperad, outer: SubsetTuple, o: Sequence[int],
                      inner: Sequence[Tuple[SubsetTuple, Sequence[int]]]) -> Optional[Tuple[SubsetTuple, Row]]:
    """gamma on decorated operations: index rule paired with the coefficient composition"""
    index = gamma_tilde(outer, [t for t, _ in inner])
    if index is None:
        return None
    if len(index) > O.max_arity:
        raise OperadError(f"composite arity {len(index)} exceeds the truncation {O.max_arity}")
    return index, O.compose(o, [(len(t), v) for t, v in inner])


# ---------- polynomial model ----------

def _normalize(poly: Poly, commutative: bool) -> Poly:
    out: Poly = {}
    for word, c in poly.items():
        key = tuple(sorted(word)) if commutative else word
        out[key] = out.get(key, 0) + c
    return {w: c for w, c in out.items() if c}


def evaluate_tree(tree: Tree, bracket: bool, commutative: bool = False) -> Poly:
    """Polynomial of an operation tree; inner nodes multiply or bracket"""
    if isinstance(tree, int):
        return {(tree,): 1}
    left = evaluate_tree(tree[0], bracket, commutative)
    right = evaluate_tree(tree[1], bracket, commutative)
    out: Poly = {}
    for u, a in left.items():
        for v, b in right.items():
            out[u + v] = out.get(u + v, 0) + a * b
            if bracket:
                out[v + u] = out.get(v + u, 0) - a * b
    return _normalize(out, commutative)


def substitute(f: Poly, blocks: Sequence[Poly]) -> Poly:
    """f with x_i replaced by blocks[i]"""
    out: Poly = {}
    for word, c in f.items():
        partial: Poly = {(): c}
        for letter in word:
            nxt: Poly = {}
            for u, a in partial.items():
                for v, b in blocks[letter].items():
                    nxt[u + v] = nxt.get(u + v, 0) + a * b
            partial = nxt
        for w, a in partial.items():
            out[w] = out.get(w, 0) + a
    return {w: c for w, c in out.items() if c}


def relabel(f: Poly, sigma: Sequence[int]) -> Poly:
    return {tuple(sigma[i] for i in w): c for w, c in f.items()}


def _left_normed(letters: Sequence[int]) -> Tree:
    tree: Tree = letters[0]
    for i in letters[1:]:
        tree = (tree, i)
    return tree


def _comm_trees(p: int) -> List[Tree]:
    return [_left_normed(range(p))] if p else []


def _ass_trees(p: int) -> List[Tree]:
    return [_left_normed(sigma) for sigma in permutations(range(p))] if p else []


def _lie_trees(p: int) -> List[Tree]:
    if not p:
        return []
    return [_left_normed((0,) + sigma) for sigma in permutations(range(1, p))]


# name -> (basis trees, bracket nodes, commutative words)
MODELS = {
    'comm': (_comm_trees, False, True),
    'ass': (_ass_trees, False, False),
    'lie': (_lie_trees, True, False),
}


class PolynomialModel:
    """Basis polynomials of one model operad, arity by arity"""

    def __init__(self, name: str, max_arity: int):
        if name not in MODELS:
            raise OperadError(f"unknown operad {name!r}, expected one of {sorted(MODELS)}")
        trees_of, self.bracket, self.commutative = MODELS[name]
        self.name = name
        self.max_arity = max_arity
        self.trees = {p: trees_of(p) for p in range(max_arity + 1)}
        self.polys = {p: [evaluate_tree(t, self.bracket, self.commutative) for t in ts]
                      for p, ts in self.trees.items()}
        self.words = {p: sorted({w for f in fs for w in f}) for p, fs in self.polys.items()}
        self._rows = {p: [[f.get(w, 0) for w in self.words[p]] for f in fs]
                      for p, fs in self.polys.items()}
        # monomial bases: every basis polynomial is a single word with coefficient 1
        self._lookup = {}
        for p, fs in self.polys.items():
            if all(len(f) == 1 and next(iter(f.values())) == 1 for f in fs):
                self._lookup[p] = {next(iter(f)): b for b, f in enumerate(fs)}

    def coordinates(self, p: int, poly: Poly) -> Row:
        poly = _normalize(poly, self.commutative)
        rank = len(self.trees[p])
        if p in self._lookup:
            out = [0] * rank
            for w, c in poly.items():
                if w not in self._lookup[p]:
                    raise OperadError(f"{self.name}({p}) does not contain the word {w}")
                out[self._lookup[p][w]] += c
            return out
        pos = {w: t for t, w in enumerate(self.words[p])}
        target = [0] * len(pos)
        for w, c in poly.items():
            if w not in pos:
                raise OperadError(f"{self.name}({p}) does not contain the word {w}")
            target[pos[w]] += c
        coeffs = lattice.solve(self._rows[p], target, len(pos))
        if coeffs is None:
            raise OperadError(f"polynomial is not in {self.name}({p})")
        return coeffs

    def composition_table(self, ks: Shape) -> Matrix:
        p, k = len(ks), sum(ks)
        offsets = [sum(ks[:i]) for i in range(p)]
        rows = []
        for idx in product(range(len(self.polys[p])), *(range(len(self.polys[a])) for a in ks)):
            blocks = [relabel(self.polys[a][b], [off + t for t in range(a)])
                      for a, b, off in zip(ks, idx[1:], offsets)]
            rows.append(self.coordinates(k, substitute(self.polys[p][idx[0]], blocks)))
        return rows

    def action_table(self, sigma: Perm) -> Matrix:
        p = len(sigma)
        return [self.coordinates(p, relabel(f, sigma)) for f in self.polys[p]]


def build_operad(name: str, max_arity: Optional[int] = None) -> TruncatedOperad:
    """Comm, Ass or Lie truncated at max_arity, with O(0) = 0"""
    P = Config.MAX_ARITY if max_arity is None else max_arity
    if P < 1:
        raise OperadError("max_arity must be at least 1")
    logger.info(f"🔧 Building the {name} operad up to arity {P}")
    model = PolynomialModel(name, P)
    ranks = tuple(len(model.trees[p]) for p in range(P + 1))
    tables = {}
    for p in range(1, P + 1):
        for ks in arity_tuples(p, P, 1):
            tables[ks] = model.composition_table(ks)
    actions = {p: {sigma: model.action_table(sigma) for sigma in permutations(range(p))}
               for p in range(P + 1)}
    return TruncatedOperad(
        name=name,
        max_arity=P,
        ranks=ranks,
        unit=[1],
        tables=tables,
        actions=actions,
        trees={p: list(model.trees[p]) for p in range(1, P + 1)},
    )
