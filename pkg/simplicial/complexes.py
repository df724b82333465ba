"""
Chain complexes, truncated simplicial modules and the Moore functor.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from simplicial import lattice
from simplicial.maps import (
    Operator, SimplicialMap, Subset, Violation, canonical_operators, factor,
    simplicial_identities,
)
from simplicial.modules import (
    ExactModule, ModuleMap, ScalarRing, Subspan, coordinates_in,
    kernel_of_all, subspan_module,
)


class ComplexError(Exception):
    """Malformed chain complex or simplicial module"""
    pass


@dataclass(frozen=True)
class ChainComplex:
    """C_0 <- C_1 <- ... <- C_top; boundaries[i] : C_i -> C_{i-1} for i >= 1"""
    ring: ScalarRing
    levels: Tuple[ExactModule, ...]
    boundaries: Tuple[Optional[ModuleMap], ...]

    def __post_init__(self):
        if len(self.boundaries) != len(self.levels):
            raise ComplexError("one boundary slot per level is required (slot 0 unused)")
        for i in range(1, len(self.levels)):
            d = self.boundaries[i]
            if d is None or d.source != self.levels[i] or d.target != self.levels[i - 1]:
                raise ComplexError(f"boundary d_{i} does not map C_{i} to C_{i - 1}")

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def level(self, i: int) -> ExactModule:
        if 0 <= i <= self.top:
            return self.levels[i]
        return ExactModule.free(self.ring, 0)

    def boundary(self, i: int) -> ModuleMap:
        """d : C_i -> C_{i-1}, zero outside the stored range"""
        if 1 <= i <= self.top:
            return self.boundaries[i]
        return ModuleMap.zero(self.level(i), self.level(i - 1))

    @classmethod
    def from_matrices(cls, ring: ScalarRing, ranks: Sequence[int],
                      matrices: Sequence[Sequence[Sequence[int]]],
                      relations: Optional[Sequence[Sequence[Sequence[int]]]] = None) -> 'ChainComplex':
        """Build from ranks and boundary matrices d_1..d_top (row convention)"""
        rels = relations or [[] for _ in ranks]
        levels = tuple(ExactModule.quotient(ring, r, rel) for r, rel in zip(ranks, rels))
        if len(matrices) != len(levels) - 1:
            raise ComplexError(f"{len(levels)} levels need {len(levels) - 1} boundary matrices")
        maps: List[Optional[ModuleMap]] = [None]
        for i, m in enumerate(matrices, start=1):
            maps.append(ModuleMap.make(levels[i], levels[i - 1], m))
        return cls(ring, levels, tuple(maps))

    @classmethod
    def zero(cls, ring: ScalarRing, top: int = 0) -> 'ChainComplex':
        return cls.from_matrices(ring, [0] * (top + 1), [[] for _ in range(top)])


@dataclass(frozen=True)
class SimplicialModule:
    """Levels 0..top with faces[n][i] : A_n -> A_{n-1} and degeneracies[n][i] : A_n -> A_{n+1}"""
    ring: ScalarRing
    levels: Tuple[ExactModule, ...]
    faces: Tuple[Tuple[ModuleMap, ...], ...]
    degeneracies: Tuple[Tuple[ModuleMap, ...], ...]
    cache: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        top = len(self.levels) - 1
        if len(self.faces) != top + 1 or len(self.degeneracies) != top + 1:
            raise ComplexError("faces and degeneracies need one slot per level")
        for n in range(top + 1):
            if len(self.faces[n]) != (n + 1 if n else 0):
                raise ComplexError(f"level {n} needs {n + 1 if n else 0} faces")
            if len(self.degeneracies[n]) != (n + 1 if n < top else 0):
                raise ComplexError(f"level {n} needs {n + 1 if n < top else 0} degeneracies")

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def operator(self, op: Operator) -> ModuleMap:
        if op.level > self.top or op.target_level > self.top:
            raise ComplexError(f"{op} leaves levels 0..{self.top}")
        if op.kind == 'd':
            return self.faces[op.level][op.index]
        return self.degeneracies[op.level][op.index]

    def operators(self, ops: Sequence[Operator], level: int) -> ModuleMap:
        """Composite of operators applied left to right, starting on `level`"""
        result = ModuleMap.identity(self.levels[level])
        for op in ops:
            result = result.then(self.operator(op))
        return result

    def pullback(self, alpha: SimplicialMap) -> ModuleMap:
        """alpha^* : A_n -> A_m for monotone alpha : [m] -> [n]"""
        return self.operators(factor(alpha), alpha.target_dim)

    def degeneracy(self, I: Subset, base: int) -> ModuleMap:
        """s_I out of level base"""
        return self.operators(canonical_operators(I, 'degeneracy', base), base)

    def k_subspan(self, n: int, I: Subset) -> Subspan:
        """K_I = intersection of ker d_i (i in I) inside A_n"""
        key = ('K', n, tuple(I))
        if key not in self.cache:
            self.cache[key] = kernel_of_all([self.faces[n][i] for i in I], self.levels[n])
        return self.cache[key]

    def moore_subspan(self, n: int) -> Subspan:
        return self.k_subspan(n, tuple(range(n)))


def validate(obj: Union[ChainComplex, SimplicialModule]) -> Optional[Violation]:
    """None when obj is valid, else the first failing identity"""
    if isinstance(obj, ChainComplex):
        for i in range(2, obj.top + 1):
            if not obj.boundary(i).then(obj.boundary(i - 1)).is_zero():
                return Violation("d∘d = 0", i, (i - 1, i))
        return None
    for n in range(obj.top + 1):
        for group in (obj.faces[n], obj.degeneracies[n]):
            for k, f in enumerate(group):
                if not f.is_well_defined():
                    return Violation("well-defined", n, (k,), "matrix ignores relations")
    for ident in simplicial_identities(obj.top):
        lhs = obj.operators(ident.lhs, ident.level)
        if ident.rhs:
            rhs = obj.operators(ident.rhs, ident.level)
        else:
            rhs = ModuleMap.identity(obj.levels[ident.level])
        if not lhs.same_as(rhs):
            return Violation(ident.name, ident.level, ident.indices)
    return None


@dataclass(frozen=True)
class MooreComplex:
    """Normalized complex together with the inclusions N_m -> A_m"""
    chain: ChainComplex
    inclusions: Tuple[ModuleMap, ...]
    spans: Tuple[Subspan, ...]


def moore_complex(A: SimplicialModule, check: bool = True) -> MooreComplex:
    """N_m A = intersection of ker d_i for i < m, boundary induced by d_m"""
    if check:
        bad = validate(A)
        if bad is not None:
            raise ComplexError(f"not a simplicial module: {bad}")
    spans = [A.moore_subspan(m) for m in range(A.top + 1)]
    presented = [subspan_module(s) for s in spans]
    levels = tuple(p[0] for p in presented)
    inclusions = tuple(p[1] for p in presented)
    boundaries: List[Optional[ModuleMap]] = [None]
    for m in range(1, A.top + 1):
        d = A.faces[m][m]
        rows = []
        for b in spans[m].rows:
            image = lattice.vec_mat(b, d.rows, A.levels[m - 1].rank)
            rows.append(coordinates_in(spans[m - 1], image))
        boundaries.append(ModuleMap.make(levels[m], levels[m - 1], rows))
    chain = ChainComplex(A.ring, levels, tuple(boundaries))
    if check and validate(chain) is not None:
        raise ComplexError("induced Moore boundary squares to a nonzero map")
    return MooreComplex(chain, inclusions, tuple(spans))


def constant(module: ExactModule, top: int) -> SimplicialModule:
    """Every level `module`, every operator the identity"""
    ident = ModuleMap.identity(module)
    faces = tuple(tuple(ident for _ in range(n + 1)) if n else () for n in range(top + 1))
    degs = tuple(tuple(ident for _ in range(n + 1)) if n < top else () for n in range(top + 1))
    return SimplicialModule(module.ring, tuple(module for _ in range(top + 1)), faces, degs)
