"""
Truncated simplicial groups over finite Cayley tables.

Covers the Moore complex, face-kernel subgroups K_I, the degenerate part D_n,
the canonical decomposition x = prod s_I(x_I), theta-conjugation, the
Peiffer-commutator comparison for d(N_n G), and builders from crossed modules,
pre-crossed modules and finite simplicial modules.
"""
from dataclasses import dataclass, field
from itertools import product as cartesian
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from simplicial.complexes import SimplicialModule
from simplicial.groups import (
    FiniteGroup, GroupError, GroupHom, Subgroup, commutator_subgroup,
    evaluate_word, express_as_word, generate, image, kernel_meet_join, setwise_product, whole,
)
from simplicial.maps import (
    Operator, Subset, Violation, canonical_operators, check_subset, covering_tuples,
    simplicial_identities,
)
from utils.logger import logger


class SimplicialGroupError(Exception):
    """Invalid simplicial group or query"""
    pass


class TruncatedSimplicialGroup:
    """Levels G_0..G_top with faces[n][i] : G_n -> G_{n-1} and degeneracies[n][i] : G_n -> G_{n+1}"""

    def __init__(self, levels: Sequence[FiniteGroup], faces: Sequence[Sequence[GroupHom]],
                 degeneracies: Sequence[Sequence[GroupHom]], name: str = "G"):
        self.levels = list(levels)
        self.faces = [list(f) for f in faces]
        self.degeneracies = [list(s) for s in degeneracies]
        self.name = name
        self._cache: Dict = {}
        top = self.top
        if len(self.faces) != top + 1 or len(self.degeneracies) != top + 1:
            raise SimplicialGroupError(f"{name}: faces and degeneracies need one slot per level")
        for n in range(top + 1):
            if len(self.faces[n]) != (n + 1 if n else 0):
                raise SimplicialGroupError(f"{name}: level {n} needs {n + 1 if n else 0} faces")
            if len(self.degeneracies[n]) != (n + 1 if n < top else 0):
                raise SimplicialGroupError(f"{name}: level {n} needs {n + 1 if n < top else 0} degeneracies")

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def orders(self) -> List[int]:
        return [g.order for g in self.levels]

    def operator(self, op: Operator) -> GroupHom:
        if op.level > self.top or op.target_level > self.top:
            raise SimplicialGroupError(f"{op} leaves levels 0..{self.top}")
        if op.kind == 'd':
            return self.faces[op.level][op.index]
        return self.degeneracies[op.level][op.index]

    def operators(self, ops: Sequence[Operator], level: int) -> GroupHom:
        result = GroupHom.identity(self.levels[level])
        for op in ops:
            result = result.then(self.operator(op))
        return result

    def degeneracy(self, I: Subset, base: int) -> GroupHom:
        """s_I out of level base, cached"""
        key = ('s', tuple(I), base)
        if key not in self._cache:
            self._cache[key] = self.operators(canonical_operators(I, 'degeneracy', base), base)
        return self._cache[key]

    def __repr__(self) -> str:
        return f"TruncatedSimplicialGroup({self.name}, orders={self.orders()})"


def validate_sgroup(G: TruncatedSimplicialGroup) -> Optional[Violation]:
    """None when all homomorphisms are multiplicative and all identities hold"""
    for n in range(G.top + 1):
        for kind, group in (('d', G.faces[n]), ('s', G.degeneracies[n])):
            for i, f in enumerate(group):
                if not f.is_multiplicative():
                    return Violation("homomorphism", n, (i,), f"{kind}_{i} is not multiplicative")
    for ident in simplicial_identities(G.top):
        lhs = G.operators(ident.lhs, ident.level)
        rhs = G.operators(ident.rhs, ident.level)
        if not lhs.same_as(rhs):
            return Violation(ident.name, ident.level, ident.indices)
    return None


# ---------- Moore complex and face kernels ----------

def k_subgroup(G: TruncatedSimplicialGroup, n: int, I: Subset) -> Subgroup:
    """K_I = intersection of ker d_i, i in I, inside G_n (I empty gives G_n)"""
    if not 0 <= n <= G.top:
        raise SimplicialGroupError(f"level {n} outside 0..{G.top}")
    try:
        I = check_subset(I, n + 1 if n else 0)
    except Exception as e:
        raise SimplicialGroupError(str(e)) from e
    key = ('K', n, I)
    if key not in G._cache:
        if not I:
            logger.debug(f"K_() on level {n} is the whole level")
            G._cache[key] = whole(G.levels[n])
        else:
            kernels = [kernel_meet_join([G.faces[n][i]], 'kernel') for i in I]
            G._cache[key] = kernel_meet_join(kernels, 'intersect')
    return G._cache[key]


def moore_subgroup(G: TruncatedSimplicialGroup, n: int) -> Subgroup:
    return k_subgroup(G, n, tuple(range(n)))


def boundary_image(G: TruncatedSimplicialGroup, n: int) -> Subgroup:
    """d_n(N_n G) inside G_{n-1}"""
    if not 1 <= n <= G.top:
        raise SimplicialGroupError(f"d(N_{n}) needs 1 <= n <= {G.top}")
    return image(G.faces[n][n], moore_subgroup(G, n))


@dataclass
class MooreData:
    """N_n G per level with the boundary images d(N_n G) in G_{n-1}"""
    normalized: List[Subgroup]
    boundaries: List[Optional[Subgroup]]
    cycles_ok: bool
    normal_ok: bool

    def to_dict(self) -> dict:
        return {
            'orders': [s.order for s in self.normalized],
            'boundary_orders': [None if b is None else b.order for b in self.boundaries],
            'boundaries_are_cycles': self.cycles_ok,
            'boundaries_are_normal': self.normal_ok,
        }


def moore(G: TruncatedSimplicialGroup) -> MooreData:
    normalized = [moore_subgroup(G, n) for n in range(G.top + 1)]
    boundaries: List[Optional[Subgroup]] = [None]
    cycles_ok = normal_ok = True
    for n in range(1, G.top + 1):
        b = boundary_image(G, n)
        boundaries.append(b)
        cycles_ok &= b <= normalized[n - 1]
        normal_ok &= b.is_normal()
    if not (cycles_ok and normal_ok):
        logger.warning(f"⚠️ {G.name}: Moore boundaries fail cycle or normality certification")
    return MooreData(normalized, boundaries, cycles_ok, normal_ok)


def degenerate_part(G: TruncatedSimplicialGroup, n: int, mode: str = 'subgroup') -> Subgroup:
    """Subgroup (or normal closure) generated by the images of s_i : G_{n-1} -> G_n"""
    if not 1 <= n <= G.top:
        raise SimplicialGroupError(f"degenerate part needs 1 <= n <= {G.top}")
    key = ('D', n, mode)
    if key not in G._cache:
        seed = set()
        for s in G.degeneracies[n - 1]:
            seed.update(int(x) for x in np.unique(s.images))
        G._cache[key] = generate(G.levels[n], seed, mode)
    return G._cache[key]


# ---------- decomposition ----------

def _decompose(G: TruncatedSimplicialGroup, x: int, n: int, t: int) -> List[Tuple[Subset, int]]:
    # x lies in ker d_0 .. ker d_{t-1}
    if n == t:
        return [((), x)]
    a = G.faces[n][t](x)
    y = G.levels[n].mul(G.levels[n].inv(G.degeneracies[n - 1][t](a)), x)
    head = [((t,) + tuple(i + 1 for i in I), a_I) for I, a_I in _decompose(G, a, n - 1, t)]
    return head + _decompose(G, y, n, t + 1)


def pc2_decompose(G: TruncatedSimplicialGroup, n: int, x: int) -> List[Tuple[Subset, int]]:
    """(I, x_I) with x_I in N_{n-|I|} G, ordered so that the product of s_I(x_I) is x"""
    if not 0 <= n <= G.top:
        raise SimplicialGroupError(f"level {n} outside 0..{G.top}")
    if not 0 <= x < G.levels[n].order:
        raise SimplicialGroupError(f"element {x} not in G_{n}")
    return _decompose(G, x, n, 0)


def pc2_recompose(G: TruncatedSimplicialGroup, n: int, parts: Sequence[Tuple[Subset, int]]) -> int:
    Gn = G.levels[n]
    x = 0
    for I, x_I in parts:
        x = Gn.mul(x, G.degeneracy(tuple(I), n - len(I))(x_I))
    return x


def pc2_counts_match(G: TruncatedSimplicialGroup, n: int) -> bool:
    """|G_n| equals the product over I of |N_{n-|I|} G|"""
    total = 1
    for r in range(n + 1):
        size = moore_subgroup(G, n - r).order
        total *= size ** comb(n, r)
    return total == G.levels[n].order


# ---------- theta conjugation ----------

def theta_conj(G: TruncatedSimplicialGroup, n: int, y: int, x: int) -> Tuple[int, bool]:
    """theta_y(x) = s_{n-1}(y) x s_{n-1}(y)^-1 and whether both certificates pass"""
    if not 1 <= n <= G.top:
        raise SimplicialGroupError(f"theta needs 1 <= n <= {G.top}")
    N = moore_subgroup(G, n)
    if x not in N:
        raise SimplicialGroupError(f"{G.levels[n].label(x)} is not in N_{n}")
    lifted = G.degeneracies[n - 1][n - 1](y)
    z = G.levels[n].conj(lifted, x)
    dn = G.faces[n][n]
    ok = z in N and dn(z) == G.levels[n - 1].conj(y, dn(x))
    return z, ok


def theta_normality(G: TruncatedSimplicialGroup, n: int) -> Optional[Violation]:
    """Every theta certificate passes, hence d(N_n G) is normal in G_{n-1}"""
    for y in range(G.levels[n - 1].order):
        for x in moore_subgroup(G, n):
            _, ok = theta_conj(G, n, y, x)
            if not ok:
                return Violation("theta-conjugation", n, (y, x))
    if not boundary_image(G, n).is_normal():
        return Violation("d(N_n G) normal", n, ())
    return None


# ---------- Peiffer commutators ----------

@dataclass(frozen=True)
class CommutatorFactor:
    """[u, v]^exponent with u in K_I and v in K_J"""
    I: Subset
    J: Subset
    u: int
    v: int
    exponent: int = 1

    def to_dict(self, group: FiniteGroup) -> dict:
        return {'I': list(self.I), 'J': list(self.J), 'u': group.label(self.u),
                'v': group.label(self.v), 'exponent': self.exponent}


def commutator_witnesses(G: TruncatedSimplicialGroup, level: int) -> Dict[int, CommutatorFactor]:
    """First (I, J, u, v) producing each nontrivial [u, v], I and J nonempty covering [level]"""
    key = ('W', level)
    if key in G._cache:
        return G._cache[key]
    group = G.levels[level]
    found: Dict[int, CommutatorFactor] = {}
    for pair in covering_tuples(level + 1, 2):
        I, J = pair.parts
        KI, KJ = k_subgroup(G, level, I), k_subgroup(G, level, J)
        for u in KI:
            for v in KJ:
                c = group.commutator(u, v)
                if c and c not in found:
                    found[c] = CommutatorFactor(I, J, u, v)
    G._cache[key] = found
    return found


def peiffer_product(G: TruncatedSimplicialGroup, level: int) -> Tuple[Subgroup, bool]:
    """Subgroup generated by all [K_I, K_J], and whether the setwise product already is one"""
    factors = [commutator_subgroup(k_subgroup(G, level, p.parts[0]), k_subgroup(G, level, p.parts[1]))
               for p in covering_tuples(level + 1, 2)]
    group = G.levels[level]
    if not factors:
        return Subgroup(group, [0]), True
    generated = kernel_meet_join(factors, 'product_span')
    setwise = factors[0]
    for f in factors[1:]:
        setwise = setwise_product(setwise, f)
    return generated, setwise == generated


def certify(G: TruncatedSimplicialGroup, level: int, target: int) -> Optional[List[CommutatorFactor]]:
    """Commutator word evaluating to target, re-verified, or None"""
    witnesses = commutator_witnesses(G, level)
    gens = sorted(witnesses)
    group = G.levels[level]
    word = express_as_word(group, target, gens)
    if word is None:
        return None
    if evaluate_word(group, word, gens) != target:
        raise SimplicialGroupError("commutator certificate does not evaluate to its target")
    out = []
    for pos, sign in word:
        w = witnesses[gens[pos]]
        out.append(CommutatorFactor(w.I, w.J, w.u, w.v, sign))
    return out


def _verdict(lhs: Subgroup, rhs: Subgroup) -> str:
    if lhs == rhs:
        return 'equal'
    if rhs < lhs:
        return 'lhs⊋rhs'
    if lhs < rhs:
        return 'rhs⊋lhs'
    return 'incomparable'


def _small_generating_set(H: Subgroup) -> List[int]:
    gens: List[int] = []
    span = Subgroup(H.ambient, [0])
    for x in H:
        if x not in span:
            gens.append(x)
            span = generate(H.ambient, gens)
    return gens


@dataclass
class PeifferReport:
    level: int
    lhs: Subgroup
    rhs: Subgroup
    verdict: str
    degenerate: bool
    degenerate_normal: bool
    setwise_is_subgroup: bool
    certificates: Dict[int, List[CommutatorFactor]] = field(default_factory=dict)
    uncertified: List[int] = field(default_factory=list)

    @property
    def inclusion_ok(self) -> bool:
        return self.rhs <= self.lhs

    def to_dict(self) -> dict:
        group = self.lhs.ambient
        return {
            'level': self.level,
            'lhs': self.lhs.labels(),
            'rhs': self.rhs.labels(),
            'verdict': self.verdict,
            'rhs_in_lhs': self.inclusion_ok,
            'G_n_equals_D_n': self.degenerate,
            'G_n_equals_normal_D_n': self.degenerate_normal,
            'setwise_product_is_subgroup': self.setwise_is_subgroup,
            'certificates': {
                group.label(t): [f.to_dict(group) for f in word]
                for t, word in sorted(self.certificates.items())
            },
            'uncertified': [group.label(t) for t in self.uncertified],
        }


def theorem2_check(G: TruncatedSimplicialGroup, n: int, certify_generators: bool = True) -> PeifferReport:
    """Compare d(N_n G) with the product of [K_I, K_J] over covering pairs"""
    if not 2 <= n <= G.top:
        raise SimplicialGroupError(f"the Peiffer comparison needs 2 <= n <= {G.top}")
    lhs = boundary_image(G, n)
    rhs, setwise = peiffer_product(G, n - 1)
    whole_level = G.levels[n].order
    report = PeifferReport(
        level=n, lhs=lhs, rhs=rhs, verdict=_verdict(lhs, rhs),
        degenerate=degenerate_part(G, n).order == whole_level,
        degenerate_normal=degenerate_part(G, n, 'normal_closure').order == whole_level,
        setwise_is_subgroup=setwise,
    )
    if not report.inclusion_ok:
        logger.warning(f"⚠️ {G.name}: commutator product escapes d(N_{n}G)")
    if certify_generators and report.verdict == 'equal':
        for g in _small_generating_set(lhs):
            cert = certify(G, n - 1, g)
            if cert is None:
                report.uncertified.append(g)
            else:
                report.certificates[g] = cert
    logger.info(f"🧮 {G.name} n={n}: |lhs|={lhs.order} |rhs|={rhs.order} verdict {report.verdict}")
    return report


# ---------- builders ----------

def _check_action(M: FiniteGroup, P: FiniteGroup, act: np.ndarray) -> None:
    if act.shape != (P.order, M.order):
        raise SimplicialGroupError(f"action table must have shape ({P.order}, {M.order})")
    if not np.array_equal(act[0], np.arange(M.order)):
        raise SimplicialGroupError("the identity of P does not act trivially")
    for p in range(P.order):
        if not GroupHom(M, M, act[p], check=False).is_multiplicative():
            raise SimplicialGroupError(f"{P.label(p)} does not act by an automorphism")
    # act[pq] = act[p] o act[q]
    if not np.array_equal(act[P.table], act[np.arange(P.order)[:, None, None], act[None, :, :]]):
        raise SimplicialGroupError("action is not multiplicative in P")


def crossed_module_axioms(M: FiniteGroup, P: FiniteGroup, boundary: GroupHom,
                          act: np.ndarray, peiffer: bool = True) -> Optional[str]:
    """'CM1' or 'CM2' for the first failing axiom, None when all hold"""
    d = boundary.images
    # CM1: d(p.m) = p d(m) p^-1
    conj = P.table[P.table[np.arange(P.order)[:, None], d[None, :]], P.inverses[:, None]]
    if not np.array_equal(d[act], conj):
        return 'CM1'
    # CM2: d(m).m' = m m' m^-1
    if peiffer and not np.array_equal(act[d], M.table[M.table, M.inverses[:, None]]):
        return 'CM2'
    return None


def _nerve_level(M: FiniteGroup, P: FiniteGroup, d: np.ndarray, n: int):
    """Coordinates (p_0, m_1..m_n) and objects p_0..p_n of every element of level n"""
    size = P.order * M.order ** n
    rest = np.arange(size)
    p0 = rest % P.order
    rest = rest // P.order
    ms = []
    for _ in range(n):
        ms.append(rest % M.order)
        rest = rest // M.order
    objects = [p0]
    for m in ms:
        objects.append(P.table[d[m], objects[-1]])
    return p0, ms, objects


def _encode(P: FiniteGroup, M: FiniteGroup, p0: np.ndarray, ms: Sequence[np.ndarray]) -> np.ndarray:
    code = np.zeros_like(p0)
    scale = 1
    for m in ms:
        code = code + scale * m
        scale *= M.order
    return p0 + P.order * code


def _nerve(M: FiniteGroup, P: FiniteGroup, d: np.ndarray, act: np.ndarray, top: int,
           name: str, order_cap: Optional[int]) -> TruncatedSimplicialGroup:
    levels: List[FiniteGroup] = []
    coords = []
    for n in range(top + 1):
        size = P.order * M.order ** n
        if order_cap is not None and size > order_cap:
            raise SimplicialGroupError(f"level {n} would have order {size} > cap {order_cap}")
        p0, ms, objects = _nerve_level(M, P, d, n)
        coords.append((p0, ms, objects))
        a, b = np.meshgrid(np.arange(size), np.arange(size), indexing='ij')
        # arrows multiply in M ⋊ P: (m, p)(m', p') = (m (p.m'), p p')
        new_ms = [M.table[ms[k][a], act[objects[k][a], ms[k][b]]] for k in range(n)]
        table = _encode(P, M, P.table[p0[a], p0[b]], new_ms)
        labels = [
            f"({P.label(int(p0[x]))}|{','.join(M.label(int(m[x])) for m in ms)})"
            for x in range(size)
        ]
        levels.append(FiniteGroup(table, labels, f"{name}_{n}", check=False))
    faces: List[List[GroupHom]] = [[]]
    for n in range(1, top + 1):
        p0, ms, objects = coords[n]
        row = []
        for i in range(n + 1):
            if i == 0:
                img = _encode(P, M, objects[1], ms[1:])
            elif i == n:
                img = _encode(P, M, p0, ms[:-1])
            else:
                img = _encode(P, M, p0, ms[:i - 1] + [M.table[ms[i], ms[i - 1]]] + ms[i + 1:])
            row.append(GroupHom(levels[n], levels[n - 1], img, check=False))
        faces.append(row)
    degs: List[List[GroupHom]] = []
    for n in range(top + 1):
        p0, ms, _ = coords[n]
        row = []
        if n < top:
            unit = np.zeros_like(p0)
            for i in range(n + 1):
                img = _encode(P, M, p0, ms[:i] + [unit] + ms[i:])
                row.append(GroupHom(levels[n], levels[n + 1], img, check=False))
        degs.append(row)
    return TruncatedSimplicialGroup(levels, faces, degs, name)


def crossed_module_build(M: FiniteGroup, P: FiniteGroup, boundary: GroupHom, act,
                         top: int, name: str = "cm", order_cap: Optional[int] = None) -> TruncatedSimplicialGroup:
    """Nerve of the crossed module: G_n = strings of n composable arrows of M ⋊ P"""
    act = np.asarray(act, dtype=np.int64)
    if boundary.source != M or boundary.target != P:
        raise SimplicialGroupError("boundary must map M to P")
    _check_action(M, P, act)
    bad = crossed_module_axioms(M, P, boundary, act)
    if bad is not None:
        raise SimplicialGroupError(f"crossed module axiom {bad} fails")
    G = _nerve(M, P, boundary.images, act, top, name, order_cap)
    logger.info(f"🏗️ Built nerve {name} with orders {G.orders()}")
    return G


def precrossed_build(M: FiniteGroup, P: FiniteGroup, boundary: GroupHom, act,
                     name: str = "pcm") -> TruncatedSimplicialGroup:
    """Levels 0..2: P, M ⋊ P, and the compatible triples of M ⋊ P (2-coskeleton)"""
    act = np.asarray(act, dtype=np.int64)
    _check_action(M, P, act)
    bad = crossed_module_axioms(M, P, boundary, act, peiffer=False)
    if bad is not None:
        raise SimplicialGroupError(f"pre-crossed module axiom {bad} fails")
    base = _nerve(M, P, boundary.images, act, 1, name, None)
    G0, G1 = base.levels
    d0, d1 = base.faces[1]
    s0 = base.degeneracies[0][0]
    triples = [
        (a, b, c) for a, b, c in cartesian(range(G1.order), repeat=3)
        if d0(a) == d0(b) and d1(a) == d0(c) and d1(b) == d1(c)
    ]
    index = {t: k for k, t in enumerate(triples)}
    G2 = FiniteGroup.from_func(
        triples, lambda x, y: tuple(G1.mul(u, v) for u, v in zip(x, y)), name=f"{name}_2",
        labels=[f"<{G1.label(a)};{G1.label(b)};{G1.label(c)}>" for a, b, c in triples],
    )
    faces2 = [GroupHom(G2, G1, [t[i] for t in triples], check=False) for i in range(3)]
    degs1 = [
        GroupHom(G1, G2, [index[(y, y, s0(d1(y)))] for y in range(G1.order)], check=False),
        GroupHom(G1, G2, [index[(s0(d0(y)), y, y)] for y in range(G1.order)], check=False),
    ]
    logger.info(f"🏗️ Built pre-crossed coskeleton {name} with |G_2| = {G2.order}")
    return TruncatedSimplicialGroup(
        [G0, G1, G2], [[], base.faces[1], faces2], [base.degeneracies[0], degs1, []], name
    )


def from_simplicial_module(A: SimplicialModule, name: str = "A",
                           order_cap: Optional[int] = None) -> TruncatedSimplicialGroup:
    """Additive groups of a levelwise finite simplicial module"""
    levels: List[FiniteGroup] = []
    indices: List[Dict[Tuple[int, ...], int]] = []
    elements: List[List[List[int]]] = []
    for n, An in enumerate(A.levels):
        if not An.is_finite:
            raise SimplicialGroupError(f"level {n} is infinite")
        if order_cap is not None and An.order() > order_cap:
            raise SimplicialGroupError(f"level {n} has order {An.order()} > cap {order_cap}")
        elems = list(An.elements())
        index = {tuple(e): k for k, e in enumerate(elems)}
        try:
            group = FiniteGroup.from_func(
                [tuple(e) for e in elems], lambda u, v, An=An: tuple(An.add(u, v)),
                name=f"{name}_{n}",
            )
        except GroupError as e:
            raise SimplicialGroupError(str(e)) from e
        levels.append(group)
        indices.append(index)
        elements.append(elems)

    def hom(f, src: int, tgt: int) -> GroupHom:
        return GroupHom(levels[src], levels[tgt],
                        [indices[tgt][tuple(f(e))] for e in elements[src]], check=False)

    faces = [[hom(A.faces[n][i], n, n - 1) for i in range(n + 1)] if n else [] for n in range(A.top + 1)]
    degs = [[hom(A.degeneracies[n][i], n, n + 1) for i in range(n + 1)] if n < A.top else []
            for n in range(A.top + 1)]
    return TruncatedSimplicialGroup(levels, faces, degs, name)


def constant_sgroup(group: FiniteGroup, top: int, name: str = "const") -> TruncatedSimplicialGroup:
    ident = GroupHom.identity(group)
    faces = [[ident] * (n + 1) if n else [] for n in range(top + 1)]
    degs = [[ident] * (n + 1) if n < top else [] for n in range(top + 1)]
    return TruncatedSimplicialGroup([group] * (top + 1), faces, degs, name)
