"""
Finitely generated modules over Z and Z/q with canonical submodule arithmetic.

A module is Z^rank modulo the row lattice of its relations; Z/q is the
quotient by q*I, so one integer engine serves both rings. Submodules are
stored as the Hermite normal form of (generators + relations), which makes
equality a comparison of matrices.
"""
from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import smith_normal_form

from simplicial import lattice
from simplicial.lattice import Matrix, Row


class ModuleError(Exception):
    """Invalid module, map or submodule operation"""
    pass


@dataclass(frozen=True)
class ScalarRing:
    """Z when modulus is None, else Z/modulus"""
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ModuleError(f"Z/{self.modulus} is not a valid scalar ring")

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None and bool(isprime(self.modulus))

    @property
    def name(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}"

    def to_json(self):
        return "Z" if self.modulus is None else {"mod": self.modulus}

    @classmethod
    def from_json(cls, data) -> 'ScalarRing':
        if data == "Z":
            return cls()
        if isinstance(data, dict) and isinstance(data.get("mod"), int):
            return cls(data["mod"])
        raise ModuleError(f"unknown ring {data!r}")


Z = ScalarRing()


def _freeze(rows: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class ExactModule:
    """Z^rank / rowspan(relations), relations kept in Hermite normal form"""
    ring: ScalarRing
    rank: int
    relations: Tuple[Tuple[int, ...], ...] = ()

    @classmethod
    def free(cls, ring: ScalarRing, rank: int) -> 'ExactModule':
        return cls.quotient(ring, rank, [])

    @classmethod
    def quotient(cls, ring: ScalarRing, rank: int, relations: Sequence[Sequence[int]]) -> 'ExactModule':
        if rank < 0:
            raise ModuleError("rank must be non-negative")
        rows = [list(r) for r in relations]
        if any(len(r) != rank for r in rows):
            raise ModuleError(f"relation rows must have length {rank}")
        if ring.modulus is not None:
            rows += [[ring.modulus if i == j else 0 for j in range(rank)] for i in range(rank)]
        return cls(ring, rank, _freeze(lattice.hnf(rows, rank)))

    @property
    def relation_rows(self) -> Matrix:
        return [list(r) for r in self.relations]

    def reduce(self, vec: Sequence[int]) -> Row:
        if len(vec) != self.rank:
            raise ModuleError(f"vector of length {len(vec)} in a rank-{self.rank} module")
        return lattice.reduce_vector(vec, self.relation_rows)

    def is_zero(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def basis_vector(self, k: int) -> Row:
        return [1 if j == k else 0 for j in range(self.rank)]

    def add(self, u: Sequence[int], v: Sequence[int]) -> Row:
        return self.reduce([a + b for a, b in zip(u, v)])

    def scale(self, c: int, u: Sequence[int]) -> Row:
        return self.reduce([c * a for a in u])

    @property
    def is_finite(self) -> bool:
        return len(self.relations) == self.rank

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        n = 1
        for k, row in enumerate(self.relations):
            n *= row[k]
        return n

    def elements(self) -> Iterator[Row]:
        """Canonical representatives of a finite module, in lexicographic order"""
        if not self.is_finite:
            raise ModuleError("cannot enumerate an infinite module")
        ranges = [range(row[k]) for k, row in enumerate(self.relations)]
        for vec in product(*ranges):
            yield list(vec)

    def invariants(self) -> Tuple[int, List[int]]:
        """(free rank, torsion invariant factors > 1)"""
        rows = self.relation_rows
        if not rows:
            return self.rank, []
        snf = smith_normal_form(DM(rows, ZZ)).to_Matrix()
        diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
        nonzero = [d for d in diag if d]
        return self.rank - len(nonzero), [d for d in nonzero if d > 1]

    def describe(self) -> str:
        free, torsion = self.invariants()
        parts = [f"Z/{d}" for d in torsion] + (["Z^" + str(free)] if free else [])
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ModuleMap:
    """x -> x @ matrix, rows indexed by the source basis"""
    source: ExactModule
    target: ExactModule
    matrix: Tuple[Tuple[int, ...], ...]

    @classmethod
    def make(cls, source: ExactModule, target: ExactModule, matrix: Sequence[Sequence[int]],
             check: bool = True) -> 'ModuleMap':
        rows = [list(r) for r in matrix]
        if len(rows) != source.rank or any(len(r) != target.rank for r in rows):
            raise ModuleError(
                f"matrix shape does not fit rank {source.rank} -> rank {target.rank}"
            )
        rows = [target.reduce(r) for r in rows]
        f = cls(source, target, _freeze(rows))
        if check and not f.is_well_defined():
            raise ModuleError("matrix does not send source relations into target relations")
        return f

    @classmethod
    def zero(cls, source: ExactModule, target: ExactModule) -> 'ModuleMap':
        return cls.make(source, target, lattice.zeros(source.rank, target.rank), check=False)

    @classmethod
    def identity(cls, module: ExactModule) -> 'ModuleMap':
        return cls.make(module, module, lattice.eye(module.rank), check=False)

    @property
    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def is_well_defined(self) -> bool:
        return all(
            self.target.is_zero(lattice.vec_mat(r, self.rows, self.target.rank))
            for r in self.source.relations
        )

    def __call__(self, vec: Sequence[int]) -> Row:
        if len(vec) != self.source.rank:
            raise ModuleError(f"vector of length {len(vec)} fed to a rank-{self.source.rank} source")
        return self.target.reduce(lattice.vec_mat(vec, self.rows, self.target.rank))

    def then(self, other: 'ModuleMap') -> 'ModuleMap':
        """other after self"""
        if self.target != other.source:
            raise ModuleError("composition across different modules")
        m = lattice.mat_mul(self.rows, other.rows, inner=self.target.rank, width=other.target.rank)
        return ModuleMap.make(self.source, other.target, m, check=False)

    def same_as(self, other: 'ModuleMap') -> bool:
        if self.source != other.source or self.target != other.target:
            return False
        return all(
            self.target.is_zero([a - b for a, b in zip(r, s)])
            for r, s in zip(self.matrix, other.matrix)
        )

    def is_zero(self) -> bool:
        return all(self.target.is_zero(r) for r in self.matrix)


@dataclass(frozen=True)
class Subspan:
    """Submodule of `ambient`, stored as HNF of its lift in the free cover"""
    ambient: ExactModule
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def span(cls, ambient: ExactModule, generators: Sequence[Sequence[int]]) -> 'Subspan':
        rows = [list(g) for g in generators]
        if any(len(r) != ambient.rank for r in rows):
            raise ModuleError(f"generators must have length {ambient.rank}")
        return cls(ambient, _freeze(lattice.hnf(rows + ambient.relation_rows, ambient.rank)))

    @classmethod
    def zero(cls, ambient: ExactModule) -> 'Subspan':
        return cls.span(ambient, [])

    @classmethod
    def whole(cls, ambient: ExactModule) -> 'Subspan':
        return cls.span(ambient, lattice.eye(ambient.rank))

    @property
    def rows(self) -> Matrix:
        return [list(r) for r in self.basis]

    def generators(self) -> Matrix:
        """Basis rows that survive in the quotient"""
        return [r for r in (self.ambient.reduce(b) for b in self.basis) if any(r)]

    def contains_vector(self, vec: Sequence[int]) -> bool:
        return lattice.contains(self.rows, vec)

    def is_zero(self) -> bool:
        return self.basis == self.ambient.relations

    def order(self) -> Optional[int]:
        """Number of elements of a finite submodule"""
        if not self.ambient.is_finite:
            return None
        return _covolume(self.ambient.relation_rows) // _covolume(self.rows)


def _covolume(h: Matrix) -> int:
    n = 1
    for row, c in zip(h, lattice.pivot_columns(h)):
        n *= row[c]
    return n


def _check_same(a: Subspan, b: Subspan) -> None:
    if a.ambient != b.ambient:
        raise ModuleError("submodules live in different ambient modules")


def span_ops(a: Subspan, b: Subspan, op: str):
    """sum | intersect | equal | contains (a contains b)"""
    _check_same(a, b)
    n = a.ambient.rank
    if op == 'sum':
        return Subspan(a.ambient, _freeze(lattice.hnf(a.rows + b.rows, n)))
    if op == 'intersect':
        return Subspan(a.ambient, _freeze(lattice.intersect(a.rows, b.rows, n)))
    if op == 'equal':
        return a.basis == b.basis
    if op == 'contains':
        return all(a.contains_vector(r) for r in b.basis)
    raise ModuleError(f"unknown submodule operation {op!r}")


def span_sum(spans: Sequence[Subspan], ambient: ExactModule) -> Subspan:
    rows: Matrix = []
    for s in spans:
        if s.ambient != ambient:
            raise ModuleError("submodules live in different ambient modules")
        rows.extend(s.rows)
    return Subspan.span(ambient, rows)


def image_preimage(f: ModuleMap, s: Optional[Subspan], mode: str) -> Subspan:
    """image of s, kernel of f, or preimage of s"""
    if mode == 'image':
        src = s if s is not None else Subspan.whole(f.source)
        if src.ambient != f.source:
            raise ModuleError("image of a submodule outside the map's source")
        images = lattice.mat_mul(src.rows, f.rows, inner=f.source.rank, width=f.target.rank)
        return Subspan.span(f.target, images)
    if mode == 'kernel':
        return image_preimage(f, Subspan.zero(f.target), 'preimage')
    if mode == 'preimage':
        if s is None or s.ambient != f.target:
            raise ModuleError("preimage of a submodule outside the map's target")
        k = f.source.rank
        stacked = f.rows + [[-a for a in r] for r in s.rows]
        kern = lattice.left_kernel(stacked, f.target.rank)
        return Subspan.span(f.source, [r[:k] for r in kern])
    raise ModuleError(f"unknown mode {mode!r}")


def kernel_of_all(maps: Sequence[ModuleMap], ambient: ExactModule) -> Subspan:
    """Intersection of the kernels of maps out of ambient (whole module if none)"""
    result = Subspan.whole(ambient)
    for f in maps:
        if f.source != ambient:
            raise ModuleError("kernel of a map out of a different module")
        result = span_ops(result, image_preimage(f, None, 'kernel'), 'intersect')
    return result


def subspan_module(s: Subspan) -> Tuple[ExactModule, ModuleMap]:
    """Present a submodule as a module of its own with its inclusion map"""
    basis = s.rows
    k = len(basis)
    rels = []
    for r in s.ambient.relations:
        c = lattice.solve(basis, r, s.ambient.rank)
        if c is None:
            raise ModuleError("submodule lift does not contain the relations")
        rels.append(c)
    module = ExactModule(s.ambient.ring, k, _freeze(lattice.hnf(rels, k)))
    return module, ModuleMap.make(module, s.ambient, basis, check=False)


def coordinates_in(s: Subspan, vec: Sequence[int]) -> Row:
    """Coordinates of a member of s with respect to s's basis rows"""
    c = lattice.solve(s.rows, vec, s.ambient.rank)
    if c is None:
        raise ModuleError("vector is not in the submodule")
    return c
