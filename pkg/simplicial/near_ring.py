"""
The near-ring Λ(m) with its not necessarily abelian addition.

An element is a freely reduced word of signed monomials ±phi_J. Multiplication
expands right-distributively: (sum_i s_i phi_i) * b = sum_i s_i (phi_i * b),
and a monomial multiplies a word letter by letter. Monomials anticommute and
square to zero.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from simplicial.exterior import Exterior, add_into, lambda_action, pullback_matrix, top_monomial
from simplicial.maps import (
    Operator, Subset, SimplicialMapError, canonical_operators, check_subset,
    surjection_from_subset,
)

Letter = Tuple[int, Subset]
CONVENTIONS = ('dual', 'literal')


class NearRingError(Exception):
    """Invalid near-ring word or operator"""
    pass


def _reduce(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    out: List[Letter] = []
    for sign, J in letters:
        if out and out[-1] == (-sign, J):
            out.pop()
        else:
            out.append((sign, J))
    return tuple(out)


@dataclass(frozen=True)
class NearRingWord:
    """Element of the additive group of Λ(level)"""
    level: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for sign, J in self.letters:
            if sign not in (1, -1):
                raise NearRingError(f"letter sign must be +1 or -1, got {sign}")
            try:
                check_subset(J, self.level)
            except SimplicialMapError as e:
                raise NearRingError(str(e)) from e
        if _reduce(self.letters) != self.letters:
            object.__setattr__(self, 'letters', _reduce(self.letters))

    @classmethod
    def zero(cls, level: int) -> 'NearRingWord':
        return cls(level)

    @classmethod
    def monomial(cls, level: int, J: Subset, sign: int = 1) -> 'NearRingWord':
        return cls(level, ((sign, tuple(J)),))

    @classmethod
    def one(cls, level: int) -> 'NearRingWord':
        return cls.monomial(level, ())

    def _check_level(self, other: 'NearRingWord') -> None:
        if self.level != other.level:
            raise NearRingError(f"levels {self.level} and {other.level} differ")

    def __add__(self, other: 'NearRingWord') -> 'NearRingWord':
        self._check_level(other)
        return NearRingWord(self.level, _reduce(self.letters + other.letters))

    def __neg__(self) -> 'NearRingWord':
        return NearRingWord(self.level, tuple((-s, J) for s, J in reversed(self.letters)))

    def __sub__(self, other: 'NearRingWord') -> 'NearRingWord':
        return self + (-other)

    def __mul__(self, other: 'NearRingWord') -> 'NearRingWord':
        return nr_multiply(self, other)

    def is_zero(self) -> bool:
        return not self.letters

    def degree(self) -> int:
        """Largest monomial degree, -1 for zero"""
        return max((len(J) for _, J in self.letters), default=-1)

    def abelianize(self) -> Exterior:
        out: Exterior = {}
        for sign, J in self.letters:
            add_into(out, J, sign)
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "0"
        parts = []
        for k, (sign, J) in enumerate(self.letters):
            name = "1" if not J else "φ" + "".join(str(j) for j in J)
            parts.append(("-" if sign < 0 else ("+" if k else "")) + name)
        return " ".join(parts)

    def to_list(self) -> List[list]:
        return [[sign, list(J)] for sign, J in self.letters]


def monomial_product(I: Subset, J: Subset) -> Tuple[int, Subset]:
    """phi_I phi_J = sign phi_{I u J}; sign 0 when they share an index"""
    if set(I) & set(J):
        return 0, ()
    inversions = sum(1 for i in I for j in J if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(I + J))


def nr_multiply(a: NearRingWord, b: NearRingWord) -> NearRingWord:
    a._check_level(b)
    out: List[Letter] = []
    for sign_a, I in a.letters:
        block: List[Letter] = []
        for sign_b, J in b.letters:
            s, L = monomial_product(I, J)
            if s:
                block.append((s * sign_b, L))
        if sign_a < 0:
            block = [(-s, L) for s, L in reversed(block)]
        out.extend(block)
    return NearRingWord(a.level, _reduce(out))


def generator_image(op: Operator, i: int, convention: str = 'dual') -> NearRingWord:
    """Image of phi_i under a face or degeneracy, as an ordered word"""
    if convention not in CONVENTIONS:
        raise NearRingError(f"unknown convention {convention!r}")
    target = op.target_level
    if op.is_last_face and i == op.level - 1 and convention == 'literal':
        return NearRingWord.zero(target)
    row = pullback_matrix(op.delta_map())[i]
    positive = [(1, (j,)) for j, c in enumerate(row) if c > 0]
    negative = [(-1, (j,)) for j, c in reversed(list(enumerate(row))) if c < 0]
    return NearRingWord(target, tuple(positive + negative))


def nr_simplicial(op: Operator, x: NearRingWord, convention: str = 'dual') -> NearRingWord:
    """Apply a face or degeneracy: multiplicative on monomials, additive on words"""
    if op.level != x.level:
        raise NearRingError(f"{op} applied to a word of level {x.level}")
    target = op.target_level
    images = [generator_image(op, i, convention) for i in range(x.level)]
    out = NearRingWord.zero(target)
    for sign, J in x.letters:
        w = NearRingWord.one(target)
        for j in J:
            w = nr_multiply(w, images[j])
        out = out + (w if sign > 0 else -w)
    return out


def apply_operators(ops: Sequence[Operator], x: NearRingWord, convention: str = 'dual') -> NearRingWord:
    for op in ops:
        x = nr_simplicial(op, x, convention)
    return x


def degenerate_top(I: Subset, r: int, m: int) -> NearRingWord:
    """s_I(phi_{[r-1]}) carried from level r to level m"""
    if len(I) != m - r:
        raise NearRingError(f"s_{I} does not carry level {r} to level {m}")
    return apply_operators(canonical_operators(I, 'degeneracy', r),
                           NearRingWord.monomial(r, top_monomial(r)))


def lex_degeneracy_word(I: Subset, r: int, m: int) -> NearRingWord:
    """The lexicographically ordered sum of the monomials of s_I(phi_{[r-1]})"""
    if len(I) != m - r:
        raise NearRingError(f"s_{I} does not carry level {r} to level {m}")
    image = lambda_action(surjection_from_subset(tuple(I), m), {top_monomial(r): 1})
    if any(c != 1 for c in image.values()):
        raise NearRingError(f"s_{I}(phi_top) has coefficients other than 1")
    return NearRingWord(m, tuple((1, J) for J in sorted(image)))


Expression = Tuple[Tuple[int, Subset], ...]


def _invert(expr: Sequence[Tuple[int, Subset]]) -> List[Tuple[int, Subset]]:
    return [(-e, I) for e, I in reversed(expr)]


@lru_cache(maxsize=None)
def _express(J: Subset, m: int) -> Expression:
    # s_{I(J)} with I(J) the complement of J carries phi_{[r-1]} to a word ending in +phi_J
    I = tuple(i for i in range(m) if i not in J)
    word = degenerate_top(I, len(J), m)
    if not word.letters or word.letters[-1] != (1, J):
        raise NearRingError(f"s_{I}(phi_top) does not end in phi_{J}")
    out: List[Tuple[int, Subset]] = []
    for sign, K in reversed(word.letters[:-1]):
        sub = list(_express(K, m))
        out.extend(_invert(sub) if sign > 0 else sub)
    out.append((1, I))
    return tuple(_reduce(out))


def express_by_degeneracies(J: Subset, m: int) -> List[Tuple[int, Subset]]:
    """Ordered (sign, I) with phi_J = sum of sign s_I(phi_{[|J|-1]}), exact in the free word model"""
    try:
        J = check_subset(J, m)
    except SimplicialMapError as e:
        raise NearRingError(str(e)) from e
    return list(_express(J, m))


def expand_expression(expr: Sequence[Tuple[int, Subset]], r: int, m: int) -> NearRingWord:
    out = NearRingWord.zero(m)
    for sign, I in expr:
        w = degenerate_top(I, r, m)
        out = out + (w if sign > 0 else -w)
    return out


def certify_expression(J: Subset, m: int) -> bool:
    """The expression re-expands to exactly phi_J"""
    expr = express_by_degeneracies(J, m)
    return expand_expression(expr, len(J), m) == NearRingWord.monomial(m, tuple(J))


def abelian_coefficients(J: Subset, m: int) -> Dict[Subset, int]:
    """Net coefficient of each s_I in the expression of phi_J"""
    out: Dict[Subset, int] = {}
    for sign, I in express_by_degeneracies(J, m):
        add_into(out, I, sign)
    return out


def format_expression(expr: Sequence[Tuple[int, Subset]]) -> str:
    if not expr:
        return "0"
    out = ""
    for k, (sign, I) in enumerate(expr):
        name = "s_" + "".join(str(i) for i in I) if I else "id"
        if k:
            out += (" − " if sign < 0 else " + ") + name
        else:
            out += ("−" if sign < 0 else "") + name
    return out
