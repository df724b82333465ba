"""
G ⊠ Λ over a chain of finite groups, and the comparison map Phi onto G.

A level-n element is a freely reduced word in symbols g⊗phi_J (g ≠ 1 in the
degree-|J| chain group, J ⊆ [n-1]) and their inverses. The symbol relation
g⊗(a + b) = (g⊗a)(g⊗b) expands every g⊗(word) into such a product.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from simplicial.groups import FiniteGroup, GroupHom, Subgroup
from simplicial.maps import (
    Operator, SimplicialMapError, Subset, Violation, check_subset, simplicial_identities,
)
from simplicial.near_ring import (
    NearRingWord, degenerate_top, express_by_degeneracies, nr_simplicial,
)
from simplicial.sgroups import (
    CommutatorFactor, TruncatedSimplicialGroup, certify, degenerate_part,
    moore_subgroup, pc2_decompose,
)
from utils.logger import logger

BoxLetter = Tuple[int, Subset, int]
CORRECTIONS = ('last', 'first')


class BoxError(Exception):
    """Invalid box word or chain"""
    pass


@dataclass
class ChainOfGroups:
    """members[i] ⊆ groups[i] with d_i = boundaries[i] restricted to members[i]"""
    groups: List[FiniteGroup]
    members: List[Subgroup]
    boundaries: List[Optional[GroupHom]]

    def __post_init__(self):
        if not (len(self.groups) == len(self.members) == len(self.boundaries)):
            raise BoxError("groups, members and boundaries need one slot per degree")
        for i in range(1, len(self.groups)):
            d = self.boundaries[i]
            if d is None:
                raise BoxError(f"missing boundary in degree {i}")
            if any(d(x) not in self.members[i - 1] for x in self.members[i]):
                raise BoxError(f"d_{i} leaves the degree-{i - 1} chain group")
            if i >= 2 and any(self.boundaries[i - 1](d(x)) for x in self.members[i]):
                raise BoxError(f"d∘d is not trivial in degree {i}")

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def d(self, degree: int, g: int) -> int:
        return self.boundaries[degree](g)


def moore_chain(G: TruncatedSimplicialGroup) -> ChainOfGroups:
    """N G as a chain of groups inside the levels of G"""
    members = [moore_subgroup(G, n) for n in range(G.top + 1)]
    boundaries: List[Optional[GroupHom]] = [None] + [G.faces[n][n] for n in range(1, G.top + 1)]
    return ChainOfGroups(list(G.levels), members, boundaries)


def _reduce(letters: Sequence[BoxLetter]) -> Tuple[BoxLetter, ...]:
    out: List[BoxLetter] = []
    for g, J, s in letters:
        if g == 0:
            continue
        if out and out[-1] == (g, J, -s):
            out.pop()
        else:
            out.append((g, J, s))
    return tuple(out)


@dataclass(frozen=True)
class BoxWord:
    level: int
    letters: Tuple[BoxLetter, ...] = ()

    def __post_init__(self):
        for g, J, s in self.letters:
            if s not in (1, -1):
                raise BoxError(f"letter exponent must be +1 or -1, got {s}")
            try:
                check_subset(J, self.level)
            except SimplicialMapError as e:
                raise BoxError(str(e)) from e
        reduced = _reduce(self.letters)
        if reduced != self.letters:
            object.__setattr__(self, 'letters', reduced)

    @classmethod
    def generator(cls, level: int, g: int, J: Subset) -> 'BoxWord':
        return cls(level, ((g, tuple(J), 1),))

    def __mul__(self, other: 'BoxWord') -> 'BoxWord':
        if self.level != other.level:
            raise BoxError(f"levels {self.level} and {other.level} differ")
        return BoxWord(self.level, self.letters + other.letters)

    def inverse(self) -> 'BoxWord':
        return BoxWord(self.level, tuple((g, J, -s) for g, J, s in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def to_list(self, chain: Optional[ChainOfGroups] = None) -> List[list]:
        def name(g, J):
            return chain.groups[len(J)].label(g) if chain is not None else g
        return [[s, name(g, J), list(J)] for g, J, s in self.letters]


def tensor(g: int, x: NearRingWord) -> BoxWord:
    """g⊗x expanded along the letters of x"""
    return BoxWord(x.level, tuple((g, J, sign) for sign, J in x.letters))


def _check_generator(chain: ChainOfGroups, g: int, J: Subset) -> None:
    if len(J) > chain.top:
        raise BoxError(f"degree {len(J)} exceeds the chain length {chain.top}")
    if g not in chain.members[len(J)]:
        raise BoxError(f"element {g} is not in the degree-{len(J)} chain group")


def box_apply(op: Operator, w: BoxWord, chain: ChainOfGroups, convention: str = 'dual',
              correction: str = 'last') -> BoxWord:
    """Face or degeneracy on G ⊠ Λ; only the last face carries the dg correction"""
    if correction not in CORRECTIONS:
        raise BoxError(f"unknown correction placement {correction!r}")
    if op.level != w.level:
        raise BoxError(f"{op} applied to a word of level {w.level}")
    n = op.level
    out = BoxWord(op.target_level)
    for g, J, s in w.letters:
        _check_generator(chain, g, J)
        image = tensor(g, nr_simplicial(op, NearRingWord.monomial(n, J), convention))
        if op.is_last_face and J and J[-1] == n - 1:
            dg = chain.d(len(J), g)
            fix = tensor(dg, NearRingWord.monomial(n - 1, J[:-1]))
            image = image * fix if correction == 'last' else fix * image
        out = out * (image if s > 0 else image.inverse())
    return out


def box_apply_all(ops: Sequence[Operator], w: BoxWord, chain: ChainOfGroups, **kwargs) -> BoxWord:
    for op in ops:
        w = box_apply(op, w, chain, **kwargs)
    return w


def generators(chain: ChainOfGroups, level: int, max_degree: Optional[int] = None) -> List[BoxWord]:
    """Every g⊗phi_J on `level` with g ≠ 1"""
    top = min(level, chain.top) if max_degree is None else min(level, chain.top, max_degree)
    out = []
    for r in range(top + 1):
        for J in combinations(range(level), r):
            for g in chain.members[r]:
                if g:
                    out.append(BoxWord.generator(level, g, J))
    return out


def phi_map(G: TruncatedSimplicialGroup, w: BoxWord) -> int:
    """Phi_m: g⊗phi_J goes to the ordered product of s_I(g)^e over the expression of phi_J"""
    m = w.level
    Gm = G.levels[m]
    x = 0
    for g, J, s in w.letters:
        r = len(J)
        if g not in moore_subgroup(G, r):
            raise BoxError(f"{G.levels[r].label(g)} is not in N_{r}")
        image = 0
        for e, I in express_by_degeneracies(J, m):
            y = G.degeneracy(I, r)(g)
            image = Gm.mul(image, y if e > 0 else Gm.inv(y))
        x = Gm.mul(x, image if s > 0 else Gm.inv(image))
    return x


def phi_commutation(G: TruncatedSimplicialGroup, chain: Optional[ChainOfGroups] = None,
                    correction: str = 'last') -> Optional[Violation]:
    """First generator and operator where Phi fails to commute, else None"""
    chain = chain or moore_chain(G)
    for m in range(G.top + 1):
        ops = [Operator('d', m, i) for i in range(m + 1)] if m else []
        ops += [Operator('s', m, i) for i in range(m + 1)] if m < G.top else []
        for w in generators(chain, m):
            x = phi_map(G, w)
            for op in ops:
                left = phi_map(G, box_apply(op, w, chain, correction=correction))
                right = G.operator(op)(x)
                if left != right:
                    g, J, _ = w.letters[0]
                    return Violation(f"Phi commutes with {op.kind}_{op.index}", m, tuple(J),
                                     f"generator {G.levels[len(J)].label(g)}")
    return None


def surjectivity_witness(G: TruncatedSimplicialGroup, m: int, x: int) -> BoxWord:
    """A word with Phi(word) = x, built from the canonical decomposition of x"""
    w = BoxWord(m)
    for I, x_I in pc2_decompose(G, m, x):
        r = m - len(I)
        w = w * tensor(x_I, degenerate_top(I, r, m))
    if phi_map(G, w) != x:
        raise BoxError(f"surjectivity witness for {G.levels[m].label(x)} does not evaluate back")
    return w


def phi_is_onto(G: TruncatedSimplicialGroup, m: int) -> bool:
    try:
        for x in range(G.levels[m].order):
            surjectivity_witness(G, m, x)
    except BoxError as e:
        logger.warning(f"⚠️ {G.name}: {e}")
        return False
    return True


def box_identity_check(chain: ChainOfGroups, top: int, max_degree: Optional[int] = None,
                       G: Optional[TruncatedSimplicialGroup] = None,
                       convention: str = 'dual', correction: str = 'last') -> Optional[Violation]:
    """Simplicial identities on generator words; compared through Phi when G is given"""
    for ident in simplicial_identities(top):
        for w in generators(chain, ident.level, max_degree):
            left = box_apply_all(ident.lhs, w, chain, convention=convention, correction=correction)
            right = box_apply_all(ident.rhs, w, chain, convention=convention, correction=correction)
            same = phi_map(G, left) == phi_map(G, right) if G is not None else left == right
            if not same:
                g, J, _ = w.letters[0]
                return Violation(ident.name, ident.level, ident.indices, f"generator ({g}, {J})")
    return None


@dataclass
class OtimesReport:
    g: int
    h: int
    degree_two_ok: bool
    degree_one_ok: bool

    @property
    def ok(self) -> bool:
        return self.degree_two_ok and self.degree_one_ok


def otimes_identity_check(G: TruncatedSimplicialGroup, g: int, h: int) -> OtimesReport:
    """(gh⊗phi_1) against (h⊗phi_0)^-1 (g⊗phi_1) (h⊗phi_0) (h⊗phi_1), and gh⊗phi_0 against (g⊗phi_0)(h⊗phi_0)"""
    if G.top < 2:
        raise BoxError("the identity lives on level 2")
    N1 = moore_subgroup(G, 1)
    if g not in N1 or h not in N1:
        raise BoxError("g and h must lie in N_1")
    gh = G.levels[1].mul(g, h)
    lhs2 = BoxWord.generator(2, gh, (1,))
    h0 = BoxWord.generator(2, h, (0,))
    rhs2 = h0.inverse() * BoxWord.generator(2, g, (1,)) * h0 * BoxWord.generator(2, h, (1,))
    lhs1 = BoxWord.generator(1, gh, (0,))
    rhs1 = BoxWord.generator(1, g, (0,)) * BoxWord.generator(1, h, (0,))
    return OtimesReport(
        g, h,
        degree_two_ok=phi_map(G, lhs2) == phi_map(G, rhs2),
        degree_one_ok=phi_map(G, lhs1) == phi_map(G, rhs1),
    )


@dataclass
class PeifferCertificate:
    level: int
    element: int
    status: str
    factors: List[CommutatorFactor] = field(default_factory=list)

    def to_dict(self, G: TruncatedSimplicialGroup) -> dict:
        group = G.levels[self.level - 1]
        return {
            'level': self.level,
            'element': G.levels[self.level].label(self.element),
            'status': self.status,
            'factors': [f.to_dict(group) for f in self.factors],
        }


def peiffer_certificate(G: TruncatedSimplicialGroup, n: int, g: int) -> PeifferCertificate:
    """Commutator factors [u, v], u in K_I, v in K_J, multiplying to d_n(g)"""
    if g not in moore_subgroup(G, n):
        raise BoxError(f"{G.levels[n].label(g)} is not in N_{n}")
    target = G.faces[n][n](g)
    if target == 0:
        return PeifferCertificate(n, g, 'trivial')
    if degenerate_part(G, n).order != G.levels[n].order:
        return PeifferCertificate(n, g, 'hypothesis-failed')
    factors = certify(G, n - 1, target)
    if factors is None:
        logger.warning(f"⚠️ {G.name}: no commutator word reaches d_{n}({G.levels[n].label(g)})")
        return PeifferCertificate(n, g, 'no-witness')
    return PeifferCertificate(n, g, 'certified', factors)


def top_generator_shadow(G: TruncatedSimplicialGroup, n: int) -> Optional[Violation]:
    """Phi(g⊗phi_top) = g and its decomposition is the single empty-index component"""
    top = tuple(range(n))
    for g in moore_subgroup(G, n):
        if not g:
            continue
        if phi_map(G, BoxWord.generator(n, g, top)) != g:
            return Violation("Phi on top generators", n, (g,))
        parts = pc2_decompose(G, n, g)
        if any(x for I, x in parts if I) or dict(parts).get(()) != g:
            return Violation("top generators are nondegenerate", n, (g,))
    return None
