"""
Finite groups as Cayley tables.

Elements are indices 0..order-1 with 0 the identity. Tables are numpy integer
arrays, so closures and homomorphism checks run as vectorized lookups.
"""
from collections import deque
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.combinatorics import PermutationGroup

Word = List[Tuple[int, int]]


class GroupError(Exception):
    """Invalid group, homomorphism or subgroup operation"""
    pass


class FiniteGroup:
    """Group on 0..order-1 given by its multiplication table"""

    def __init__(self, table, labels: Optional[Sequence[str]] = None, name: str = "group",
                 check: bool = True):
        self.table = np.asarray(table, dtype=np.int64)
        self.name = name
        n = self.order
        if self.table.shape != (n, n):
            raise GroupError(f"{name}: Cayley table must be square, got {self.table.shape}")
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise GroupError(f"{name}: {len(self.labels)} labels for {n} elements")
        if check:
            self._check_axioms()
        inv = np.zeros(n, dtype=np.int64)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        self.inverses = inv

    @property
    def order(self) -> int:
        return len(self.table)

    def _check_axioms(self) -> None:
        n = self.order
        T = self.table
        if n == 0:
            raise GroupError(f"{self.name}: empty table")
        if T.min() < 0 or T.max() >= n:
            raise GroupError(f"{self.name}: table entries leave 0..{n - 1}")
        ident = np.arange(n)
        if not (np.array_equal(T[0], ident) and np.array_equal(T[:, 0], ident)):
            raise GroupError(f"{self.name}: element 0 is not the identity")
        for row in T:
            if len(np.unique(row)) != n:
                raise GroupError(f"{self.name}: table is not a Latin square")
        for a in range(n):
            if not np.array_equal(T[T[a], :], T[a][T]):
                raise GroupError(f"{self.name}: multiplication is not associative at {self.labels[a]}")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def product(self, elements: Iterable[int]) -> int:
        x = 0
        for e in elements:
            x = int(self.table[x, e])
        return x

    def power(self, a: int, k: int) -> int:
        base = a if k >= 0 else self.inv(a)
        x = 0
        for _ in range(abs(k)):
            x = int(self.table[x, base])
        return x

    def conj(self, a: int, x: int) -> int:
        """a x a^-1"""
        return int(self.table[self.table[a, x], self.inverses[a]])

    def commutator(self, h: int, k: int) -> int:
        """[h, k] = h k h^-1 k^-1"""
        return int(self.table[self.table[self.table[h, k], self.inverses[h]], self.inverses[k]])

    def conjugates(self, x: int) -> np.ndarray:
        """a x a^-1 for every a"""
        return self.table[self.table[:, x], self.inverses]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, a: int) -> str:
        return self.labels[a]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    @staticmethod
    def from_func(elements: Sequence[Hashable], mult: Callable, name: str = "group",
                  labels: Optional[Sequence[str]] = None) -> 'FiniteGroup':
        """Table from a list of elements (identity first) and a multiplication function"""
        index: Dict[Hashable, int] = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        table = np.zeros((n, n), dtype=np.int64)
        for (i, a), (j, b) in product(enumerate(elements), repeat=2):
            try:
                table[i, j] = index[mult(a, b)]
            except KeyError:
                raise GroupError(f"{name}: product of {a!r} and {b!r} leaves the element list")
        return FiniteGroup(table, labels or [str(e) for e in elements], name)

    @staticmethod
    def from_sympy(pgroup: PermutationGroup, name: str = "perm", cap: Optional[int] = None) -> 'FiniteGroup':
        """Identity first, remaining permutations sorted by array form"""
        if cap is not None and pgroup.order() > cap:
            raise GroupError(f"{name}: order {pgroup.order()} exceeds the cap {cap}")
        identity = tuple(range(pgroup.degree))
        elements = sorted((tuple(p.array_form) for p in pgroup.elements),
                          key=lambda a: (a != identity, a))
        index = {a: i for i, a in enumerate(elements)}
        n = len(elements)
        arr = np.array(elements, dtype=np.int64)
        table = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            # sympy composes left to right: (p*q)(x) = q(p(x))
            for j, row in enumerate(arr[:, arr[i]]):
                table[i, j] = index[tuple(row.tolist())]
        labels = [str(list(a)) for a in elements]
        return FiniteGroup(table, labels, name)

    @staticmethod
    def cyclic(n: int) -> 'FiniteGroup':
        return FiniteGroup.from_func(list(range(n)), lambda a, b: (a + b) % n, name=f"Z/{n}")


class GroupHom:
    """images[x] is the image of source element x"""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images, check: bool = True):
        self.source = source
        self.target = target
        self.images = np.asarray(images, dtype=np.int64)
        if self.images.shape != (source.order,):
            raise GroupError(f"homomorphism needs {source.order} images, got {self.images.shape}")
        if check and not self.is_multiplicative():
            raise GroupError(f"map {source.name} -> {target.name} is not multiplicative")

    def is_multiplicative(self) -> bool:
        im = self.images
        if im.min() < 0 or im.max() >= self.target.order:
            return False
        return bool(np.array_equal(im[self.source.table], self.target.table[im[:, None], im[None, :]]))

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def then(self, other: 'GroupHom') -> 'GroupHom':
        """other after self"""
        if self.target != other.source:
            raise GroupError("composition across different groups")
        return GroupHom(self.source, other.target, other.images[self.images], check=False)

    def same_as(self, other: 'GroupHom') -> bool:
        return bool(np.array_equal(self.images, other.images))

    def is_trivial(self) -> bool:
        return not self.images.any()

    @staticmethod
    def identity(group: FiniteGroup) -> 'GroupHom':
        return GroupHom(group, group, np.arange(group.order), check=False)

    @staticmethod
    def trivial(source: FiniteGroup, target: FiniteGroup) -> 'GroupHom':
        return GroupHom(source, target, np.zeros(source.order, dtype=np.int64), check=False)

    @staticmethod
    def from_generators(source: FiniteGroup, target: FiniteGroup,
                        assignment: Dict[int, int]) -> 'GroupHom':
        """Extend generator images along a breadth-first walk; raise if inconsistent"""
        images = {0: 0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g, tg in assignment.items():
                y = source.mul(x, g)
                ty = target.mul(images[x], tg)
                if y not in images:
                    images[y] = ty
                    queue.append(y)
                elif images[y] != ty:
                    raise GroupError("generator assignment does not extend to a homomorphism")
        if len(images) != source.order:
            raise GroupError("assigned elements do not generate the source")
        return GroupHom(source, target, [images[x] for x in range(source.order)])


class Subgroup:
    """Subgroup of `ambient`, members kept sorted"""

    def __init__(self, ambient: FiniteGroup, members: Iterable[int]):
        self.ambient = ambient
        self.members: Tuple[int, ...] = tuple(sorted(set(int(m) for m in members)))
        self._set = frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.ambient == other.ambient and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: 'Subgroup') -> bool:
        return self._set <= other._set

    def __lt__(self, other: 'Subgroup') -> bool:
        return self._set < other._set

    def is_trivial(self) -> bool:
        return self.members == (0,)

    def is_whole(self) -> bool:
        return len(self.members) == self.ambient.order

    def is_closed(self) -> bool:
        T = self.ambient.table
        idx = np.array(self.members, dtype=np.int64)
        return 0 in self._set and set(T[np.ix_(idx, idx)].ravel().tolist()) <= self._set

    def is_normal(self) -> bool:
        return all(set(self.ambient.conjugates(x).tolist()) <= self._set for x in self.members)

    def labels(self) -> List[str]:
        return [self.ambient.label(x) for x in self.members]

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} in {self.ambient.name})"


def _check_ambient(ambient: FiniteGroup, *subs: Subgroup) -> None:
    for s in subs:
        if s.ambient != ambient:
            raise GroupError("subgroups live in different ambient groups")


def generate(ambient: FiniteGroup, seed: Iterable[int], mode: str = 'subgroup') -> Subgroup:
    """Subgroup or normal closure generated by seed"""
    gens = set(int(s) for s in seed) - {0}
    if any(g < 0 or g >= ambient.order for g in gens):
        raise GroupError(f"seed leaves 0..{ambient.order - 1}")
    if mode == 'normal_closure':
        conj = set()
        for g in gens:
            conj.update(ambient.conjugates(g).tolist())
        gens = conj - {0}
    elif mode != 'subgroup':
        raise GroupError(f"unknown closure mode {mode!r}")
    gens_arr = np.array(sorted(gens), dtype=np.int64)
    seen = np.zeros(ambient.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while len(frontier) and len(gens_arr):
        nxt = np.unique(ambient.table[np.ix_(frontier, gens_arr)].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return Subgroup(ambient, np.nonzero(seen)[0].tolist())


def trivial_subgroup(ambient: FiniteGroup) -> Subgroup:
    return Subgroup(ambient, [0])


def whole(ambient: FiniteGroup) -> Subgroup:
    return Subgroup(ambient, range(ambient.order))


def commutator_subgroup(H: Subgroup, K: Subgroup) -> Subgroup:
    _check_ambient(H.ambient, K)
    return generate(H.ambient, commutator_generators(H, K))


def commutator_generators(H: Subgroup, K: Subgroup) -> List[int]:
    """Distinct nontrivial [h, k], in increasing order"""
    G = H.ambient
    T, inv = G.table, G.inverses
    h = np.array(H.members, dtype=np.int64)[:, None]
    k = np.array(K.members, dtype=np.int64)[None, :]
    comms = T[T[T[h, k], inv[h]], inv[k]]
    return [int(c) for c in np.unique(comms) if c]


def kernel_meet_join(items: Sequence, op: str) -> Subgroup:
    """kernel of one GroupHom | intersect | product_span of subgroups"""
    if op == 'kernel':
        if len(items) != 1 or not isinstance(items[0], GroupHom):
            raise GroupError("kernel takes exactly one homomorphism")
        f = items[0]
        return Subgroup(f.source, np.nonzero(f.images == 0)[0].tolist())
    if not items:
        raise GroupError(f"{op} of an empty family")
    ambient = items[0].ambient
    _check_ambient(ambient, *items)
    if op == 'intersect':
        members = set(items[0].members)
        for s in items[1:]:
            members &= set(s.members)
        return Subgroup(ambient, members)
    if op == 'product_span':
        members = set()
        for s in items:
            members.update(s.members)
        return generate(ambient, members)
    raise GroupError(f"unknown operation {op!r}")


def image(f: GroupHom, H: Optional[Subgroup] = None) -> Subgroup:
    src = H.members if H is not None else range(f.source.order)
    return Subgroup(f.target, (f(x) for x in src))


def setwise_product(H: Subgroup, K: Subgroup) -> Subgroup:
    """{hk}, which may fail to be a subgroup"""
    _check_ambient(H.ambient, K)
    T = H.ambient.table
    h = np.array(H.members, dtype=np.int64)
    k = np.array(K.members, dtype=np.int64)
    return Subgroup(H.ambient, np.unique(T[np.ix_(h, k)].ravel()).tolist())


def express_as_word(ambient: FiniteGroup, target: int, generators: Sequence[int]) -> Optional[Word]:
    """Shortest word (generator position, +1|-1) evaluating to target, or None"""
    if target == 0:
        return []
    letters = []
    for pos, g in enumerate(generators):
        letters.append((pos, 1, g))
        if ambient.inv(g) != g:
            letters.append((pos, -1, ambient.inv(g)))
    parent: Dict[int, Tuple[int, int, int]] = {0: (-1, 0, 0)}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for pos, sign, g in letters:
            y = ambient.mul(x, g)
            if y in parent:
                continue
            parent[y] = (x, pos, sign)
            if y == target:
                word: Word = []
                while y != 0:
                    prev, p, s = parent[y]
                    word.append((p, s))
                    y = prev
                return word[::-1]
            queue.append(y)
    return None


def evaluate_word(ambient: FiniteGroup, word: Word, generators: Sequence[int]) -> int:
    return ambient.product(generators[p] if s > 0 else ambient.inv(generators[p]) for p, s in word)
