"""
Maps of the simplicial category and of finite ordinals.

A map [m] -> [n] is stored as its value table. Operators act contravariantly:
a face d_i on level n is the pullback along the coface delta^i: [n-1] -> [n],
a degeneracy s_i on level n is the pullback along sigma^i: [n+1] -> [n].
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, List, Sequence, Tuple

Subset = Tuple[int, ...]


class SimplicialMapError(Exception):
    """Invalid simplicial map or operator"""
    pass


@dataclass(frozen=True)
class SimplicialMap:
    """Set map [source_dim] -> [target_dim]"""
    source_dim: int
    target_dim: int
    values: Tuple[int, ...]
    monotone: bool = field(default=True)

    def __post_init__(self):
        if len(self.values) != self.source_dim + 1:
            raise SimplicialMapError(
                f"map [{self.source_dim}] -> [{self.target_dim}] needs "
                f"{self.source_dim + 1} values, got {len(self.values)}"
            )
        if any(v < 0 or v > self.target_dim for v in self.values):
            raise SimplicialMapError(f"values {self.values} leave [0, {self.target_dim}]")
        if self.monotone and any(a > b for a, b in zip(self.values, self.values[1:])):
            raise SimplicialMapError(f"values {self.values} are not weakly increasing")

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_identity(self) -> bool:
        return self.source_dim == self.target_dim and self.values == tuple(range(self.source_dim + 1))

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_dim + 1))


@dataclass(frozen=True)
class Operator:
    """A face or degeneracy operator acting on level `level`"""
    kind: str
    level: int
    index: int

    def __post_init__(self):
        if self.kind not in ('d', 's'):
            raise SimplicialMapError(f"unknown operator kind {self.kind!r}")
        if self.level < 0 or not 0 <= self.index <= self.level:
            raise SimplicialMapError(f"{self.kind}_{self.index} undefined on level {self.level}")
        if self.kind == 'd' and self.level == 0:
            raise SimplicialMapError("level 0 has no faces")

    @property
    def target_level(self) -> int:
        return self.level - 1 if self.kind == 'd' else self.level + 1

    @property
    def is_last_face(self) -> bool:
        return self.kind == 'd' and self.index == self.level

    def delta_map(self) -> SimplicialMap:
        """The map of finite ordinals this operator pulls back along"""
        if self.kind == 'd':
            return coface(self.level, self.index)
        return codegeneracy(self.level, self.index)

    def __str__(self) -> str:
        return f"{self.kind}_{self.index}@{self.level}"


def identity(n: int) -> SimplicialMap:
    return SimplicialMap(n, n, tuple(range(n + 1)))


def coface(n: int, i: int) -> SimplicialMap:
    """delta^i: [n-1] -> [n], skipping i"""
    if n < 1 or not 0 <= i <= n:
        raise SimplicialMapError(f"coface delta^{i} into [{n}] is undefined")
    return SimplicialMap(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))


def codegeneracy(n: int, i: int) -> SimplicialMap:
    """sigma^i: [n+1] -> [n], hitting i twice"""
    if n < 0 or not 0 <= i <= n:
        raise SimplicialMapError(f"codegeneracy sigma^{i} onto [{n}] is undefined")
    return SimplicialMap(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """g after f: apply f first"""
    if f.target_dim != g.source_dim:
        raise SimplicialMapError(
            f"cannot compose [{f.source_dim}]->[{f.target_dim}] with "
            f"[{g.source_dim}]->[{g.target_dim}]"
        )
    return SimplicialMap(
        f.source_dim,
        g.target_dim,
        tuple(g.values[v] for v in f.values),
        f.monotone and g.monotone,
    )


def fin_maps(m: int, n: int, monotone: bool = False) -> Iterator[SimplicialMap]:
    """All maps [m] -> [n]; only the monotone ones when asked"""
    for values in product(range(n + 1), repeat=m + 1):
        is_mono = all(a <= b for a, b in zip(values, values[1:]))
        if monotone and not is_mono:
            continue
        yield SimplicialMap(m, n, values, is_mono)


def factor(alpha: SimplicialMap) -> List[Operator]:
    """Face/degeneracy operators, in application order, whose composite pullback is alpha^*.

    Faces for the points missed by alpha come first, largest index first;
    then degeneracies at the repeat positions, smallest first.
    """
    if not alpha.monotone:
        raise SimplicialMapError("only monotone maps factor through faces and degeneracies")
    ops: List[Operator] = []
    level = alpha.target_dim
    image = set(alpha.values)
    for j in sorted((j for j in range(alpha.target_dim + 1) if j not in image), reverse=True):
        ops.append(Operator('d', level, j))
        level -= 1
    for i in range(alpha.source_dim):
        if alpha.values[i] == alpha.values[i + 1]:
            ops.append(Operator('s', level, i))
            level += 1
    return ops


def operators_map(ops: Sequence[Operator], start_level: int) -> SimplicialMap:
    """The map of ordinals whose pullback is the operator sequence applied left to right"""
    alpha = identity(start_level)
    level = start_level
    for op in ops:
        if op.level != level:
            raise SimplicialMapError(f"{op} applied on level {level}")
        alpha = compose(op.delta_map(), alpha)
        level = op.target_level
    return alpha


def canonical_operators(I: Subset, kind: str, base: int) -> List[Operator]:
    """s_I = s_{i_r}...s_{i_1} or d_I = d_{i_1}...d_{i_r}, in application order.

    For degeneracies `base` is the source level and s_{i_1} acts first;
    for faces `base` is the source level and d_{i_r} acts first.
    """
    members = tuple(I)
    if list(members) != sorted(set(members)):
        raise SimplicialMapError(f"index subset {I} is not strictly increasing")
    if kind == 'degeneracy':
        return [Operator('s', base + k, i) for k, i in enumerate(members)]
    if kind == 'face':
        return [Operator('d', base - k, i) for k, i in enumerate(reversed(members))]
    raise SimplicialMapError(f"unknown composite kind {kind!r}")


def canonical_composite(I: Subset, kind: str, base: int) -> SimplicialMap:
    """The map of ordinals realizing s_I or d_I (identity when I is empty)"""
    return operators_map(canonical_operators(I, kind, base), base)


def degeneracy_subset(alpha: SimplicialMap) -> Subset:
    """Repeat positions of a monotone surjection, i.e. the I with alpha^* = s_I"""
    if not (alpha.monotone and alpha.is_surjective):
        raise SimplicialMapError("degeneracy subsets exist only for monotone surjections")
    return tuple(i for i in range(alpha.source_dim) if alpha.values[i] == alpha.values[i + 1])


def surjection_from_subset(I: Subset, source: int) -> SimplicialMap:
    """Inverse of degeneracy_subset: the surjection out of [source] repeating at I"""
    values = [0]
    for i in range(source):
        values.append(values[-1] if i in I else values[-1] + 1)
    return SimplicialMap(source, values[-1], tuple(values))


# ---------- index subsets ----------

def all_subsets(n: int) -> List[Subset]:
    """Subsets of [n-1] = {0, ..., n-1}, ordered by bitmask"""
    return [tuple(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def check_subset(I: Subset, ambient: int) -> Subset:
    members = tuple(I)
    if list(members) != sorted(set(members)) or any(i < 0 or i >= ambient for i in members):
        raise SimplicialMapError(f"{members} is not a subset of [{ambient - 1}]")
    return members


def product_order(n: int) -> List[Subset]:
    """Factor order of the Moore decomposition of an element of level n"""
    if n < 0:
        raise SimplicialMapError("product_order needs n >= 0")
    order: List[Subset] = [()]
    for _ in range(n):
        shifted = [tuple(i + 1 for i in I) for I in order]
        order = [(0,) + I for I in shifted] + shifted
    return order


@dataclass(frozen=True)
class SubsetTuple:
    """(I_1, ..., I_p) with every part inside [ambient-1]"""
    ambient: int
    parts: Tuple[Subset, ...]

    @property
    def covering(self) -> bool:
        return set().union(*map(set, self.parts)) == set(range(self.ambient)) if self.parts else self.ambient == 0

    @property
    def union(self) -> Subset:
        return tuple(sorted(set().union(*map(set, self.parts)))) if self.parts else ()

    def __len__(self) -> int:
        return len(self.parts)


def covering_tuples(m: int, p: int, allow_empty: bool = False, proper: bool = False) -> List[SubsetTuple]:
    """p-tuples of subsets of [m-1] whose union is [m-1].

    `allow_empty` keeps empty parts; `proper` additionally drops parts equal to [m-1].
    """
    if m < 0 or p < 0:
        raise SimplicialMapError("covering_tuples needs m, p >= 0")
    full = tuple(range(m))
    parts = [I for I in all_subsets(m)
             if (allow_empty or I) and not (proper and I == full)]
    result = []
    for choice in product(parts, repeat=p):
        candidate = SubsetTuple(m, tuple(choice))
        if candidate.covering:
            result.append(candidate)
    return result


# ---------- simplicial identities ----------

@dataclass(frozen=True)
class Violation:
    """First failing identity found by a validator"""
    identity: str
    level: int
    indices: Tuple[int, ...]
    detail: str = ''

    def to_dict(self) -> dict:
        return {'identity': self.identity, 'level': self.level,
                'indices': list(self.indices), 'detail': self.detail}

    def __str__(self) -> str:
        extra = f" ({self.detail})" if self.detail else ''
        return f"{self.identity} fails on level {self.level} at {self.indices}{extra}"


@dataclass(frozen=True)
class SimplicialIdentity:
    """lhs and rhs operator sequences starting on the same level"""
    name: str
    level: int
    indices: Tuple[int, int]
    lhs: Tuple[Operator, ...]
    rhs: Tuple[Operator, ...]


def simplicial_identities(top: int) -> Iterator[SimplicialIdentity]:
    """Every simplicial identity whose operators stay within levels 0..top"""
    for n in range(2, top + 1):
        for j in range(1, n + 1):
            for i in range(j):
                yield SimplicialIdentity(
                    f"d_{i} d_{j} = d_{j - 1} d_{i}", n, (i, j),
                    (Operator('d', n, j), Operator('d', n - 1, i)),
                    (Operator('d', n, i), Operator('d', n - 1, j - 1)),
                )
    for n in range(0, top):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = (Operator('s', n, j), Operator('d', n + 1, i))
                if i < j:
                    rhs = (Operator('d', n, i), Operator('s', n - 1, j - 1))
                    name = f"d_{i} s_{j} = s_{j - 1} d_{i}"
                elif i in (j, j + 1):
                    rhs = ()
                    name = f"d_{i} s_{j} = id"
                else:
                    rhs = (Operator('d', n, i - 1), Operator('s', n - 1, j))
                    name = f"d_{i} s_{j} = s_{j} d_{i - 1}"
                yield SimplicialIdentity(name, n, (i, j), lhs, rhs)
    for n in range(0, top - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                yield SimplicialIdentity(
                    f"s_{i} s_{j} = s_{j + 1} s_{i}", n, (i, j),
                    (Operator('s', n, j), Operator('s', n + 1, i)),
                    (Operator('s', n, i), Operator('s', n + 1, j + 1)),
                )
