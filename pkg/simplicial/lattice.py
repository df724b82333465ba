"""
Integer lattice arithmetic on plain Python lists.

Row convention throughout: a matrix is a list of rows and a lattice is the
integer row span. Entries are unbounded ints, so every result is exact.
hnf goes through sympy; kernels and solves keep the row transforms of the
local echelon routine.
"""
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import hermite_normal_form

Row = List[int]
Matrix = List[Row]


class LatticeError(Exception):
    """Shape error in lattice arithmetic"""
    pass


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0"""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def eye(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: Optional[int] = None,
            width: Optional[int] = None) -> Matrix:
    """a @ b; `inner` and `width` fix the shapes when a or b has no rows"""
    if width is None:
        width = len(b[0]) if b else 0
    inner = len(b) if inner is None else inner
    out = []
    for row in a:
        if len(row) != inner:
            raise LatticeError(f"row of length {len(row)} against {inner} rows")
        acc = [0] * width
        for k, c in enumerate(row):
            if c:
                bk = b[k]
                for j in range(width):
                    acc[j] += c * bk[j]
        out.append(acc)
    return out


def vec_mat(v: Sequence[int], m: Sequence[Sequence[int]], width: int) -> Row:
    """row vector v times matrix m (m has len(v) rows and `width` columns)"""
    if len(v) != len(m):
        raise LatticeError(f"vector of length {len(v)} against {len(m)} rows")
    acc = [0] * width
    for k, c in enumerate(v):
        if c:
            mk = m[k]
            for j in range(width):
                acc[j] += c * mk[j]
    return acc


def _echelon(rows: Matrix, width: int, cols: Optional[int] = None) -> Tuple[Matrix, int]:
    """Unimodular row reduction of the first `cols` columns.

    Returns (reduced rows, rank). Pivots are positive, strictly increasing in
    column, and entries above each pivot are reduced into [0, pivot).
    Columns past `cols` are carried along untouched by pivot choice.
    """
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != width:
            raise LatticeError(f"row of length {len(r)} in a width-{width} matrix")
    cols = width if cols is None else cols
    rank = 0
    pivots = []
    for c in range(cols):
        while True:
            live = [i for i in range(rank, len(m)) if m[i][c]]
            if not live:
                break
            best = min(live, key=lambda i: abs(m[i][c]))
            m[rank], m[best] = m[best], m[rank]
            p = m[rank][c]
            done = True
            for i in range(rank + 1, len(m)):
                e = m[i][c]
                if e:
                    q = e // p
                    m[i] = [a - q * b for a, b in zip(m[i], m[rank])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if rank < len(m) and m[rank][c]:
            if m[rank][c] < 0:
                m[rank] = [-a for a in m[rank]]
            p = m[rank][c]
            for i in range(rank):
                q = m[i][c] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[rank])]
            pivots.append(c)
            rank += 1
    return m, rank


def hnf(rows: Sequence[Sequence[int]], width: int) -> Matrix:
    """Row Hermite normal form of the lattice spanned by rows (zero rows dropped)"""
    for r in rows:
        if len(r) != width:
            raise LatticeError(f"row of length {len(r)} in a width-{width} matrix")
    nonzero = [list(r) for r in rows if any(r)]
    if not nonzero or not width:
        return []
    # sympy reduces columns with pivots at the bottom right; transposing with the
    # coordinates reversed turns that into pivots increasing left to right
    t = [[row[j] for row in nonzero] for j in reversed(range(width))]
    h = hermite_normal_form(DM(t, ZZ)).to_Matrix()
    rank = h.shape[1]
    return [[int(h[width - 1 - c, j]) for c in range(width)] for j in reversed(range(rank))]


def pivot_columns(h: Matrix) -> List[int]:
    return [next(j for j, a in enumerate(r) if a) for r in h]


def reduce_vector(v: Sequence[int], h: Matrix) -> Row:
    """Canonical representative of v modulo the lattice with HNF h"""
    out = list(v)
    for row, c in zip(h, pivot_columns(h)):
        q = out[c] // row[c]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return out


def contains(h: Matrix, v: Sequence[int]) -> bool:
    return not any(reduce_vector(v, h))


def left_kernel(rows: Sequence[Sequence[int]], width: int) -> Matrix:
    """HNF basis of {c : c @ rows = 0}"""
    k = len(rows)
    if k == 0:
        return []
    aug = [list(r) + e for r, e in zip(rows, eye(k))]
    m, rank = _echelon(aug, width + k, cols=width)
    return hnf([r[width:] for r in m[rank:]], k)


def solve(rows: Sequence[Sequence[int]], target: Sequence[int], width: int) -> Optional[Row]:
    """Some c with c @ rows = target, or None when target is outside the row lattice"""
    k = len(rows)
    if k == 0:
        return [] if not any(target) else None
    aug = [list(r) + e for r, e in zip(rows, eye(k))]
    m, rank = _echelon(aug, width + k, cols=width)
    rest = list(target)
    coeffs = [0] * k
    for row in m[:rank]:
        c = next(j for j in range(width) if row[j])
        q, r = divmod(rest[c], row[c])
        if r:
            return None
        if q:
            rest = [a - q * b for a, b in zip(rest, row[:width])]
            coeffs = [a + q * b for a, b in zip(coeffs, row[width:])]
    if any(rest):
        return None
    return coeffs


def intersect(h1: Matrix, h2: Matrix, width: int) -> Matrix:
    """HNF of the intersection of two row lattices"""
    if not h1 or not h2:
        return []
    kern = left_kernel(h1 + [[-a for a in r] for r in h2], width)
    return hnf(mat_mul([r[:len(h1)] for r in kern], h1, inner=len(h1), width=width), width)
