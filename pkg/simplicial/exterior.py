"""
The Fin^op module Z(n) and its exterior powers.

Z(n) has basis phi_0..phi_{n-1}. A map alpha : [m] -> [n] pulls phi_i back to
sum over j < m of ([alpha(j) = i] - [alpha(m) = i]) phi_j. Exterior elements
are dicts {J: coefficient} with J a strictly increasing tuple; phi_() = 1.
"""
from itertools import combinations
from typing import Dict, List, Sequence

from simplicial.maps import SimplicialMap, Subset

Exterior = Dict[Subset, int]


class ExteriorError(Exception):
    """Vector or monomial outside the level it is pulled back from"""
    pass


def pullback_matrix(alpha: SimplicialMap) -> List[List[int]]:
    """Row i holds the coordinates of alpha^*(phi_i) in Z(m)"""
    m, n = alpha.source_dim, alpha.target_dim
    last = alpha.values[m]
    return [
        [(1 if alpha.values[j] == i else 0) - (1 if last == i else 0) for j in range(m)]
        for i in range(n)
    ]


def zn_pullback(alpha: SimplicialMap, phi: Sequence[int]) -> List[int]:
    """alpha^* on a vector of Z(n) given in the phi basis"""
    if len(phi) != alpha.target_dim:
        raise ExteriorError(f"Z({alpha.target_dim}) vector expected, got length {len(phi)}")
    rows = pullback_matrix(alpha)
    out = [0] * alpha.source_dim
    for c, row in zip(phi, rows):
        if c:
            for j, a in enumerate(row):
                out[j] += c * a
    return out


def wedge_insert(J: Subset, k: int):
    """(sign, J with k appended then sorted), or (0, None) on a repeat"""
    if k in J:
        return 0, None
    larger = sum(1 for j in J if j > k)
    return (-1 if larger % 2 else 1), tuple(sorted(J + (k,)))


def add_into(target: Exterior, key: Subset, c: int) -> None:
    v = target.get(key, 0) + c
    if v:
        target[key] = v
    else:
        target.pop(key, None)


def wedge(x: Exterior, y: Exterior) -> Exterior:
    out: Exterior = {}
    for J, a in x.items():
        for K, b in y.items():
            term: Exterior = {J: a * b}
            for k in K:
                nxt: Exterior = {}
                for L, c in term.items():
                    sign, L2 = wedge_insert(L, k)
                    if sign:
                        add_into(nxt, L2, sign * c)
                term = nxt
            for L, c in term.items():
                add_into(out, L, c)
    return out


def monomial_image(rows: List[List[int]], J: Subset) -> Exterior:
    """Wedge of the images of phi_j, j in J, in increasing order of j"""
    term: Exterior = {(): 1}
    for j in J:
        nxt: Exterior = {}
        for L, c in term.items():
            for k, a in enumerate(rows[j]):
                if a:
                    sign, L2 = wedge_insert(L, k)
                    if sign:
                        add_into(nxt, L2, sign * a * c)
        term = nxt
    return term


def lambda_action(alpha: SimplicialMap, x: Exterior) -> Exterior:
    """alpha^* extended multiplicatively to the exterior algebra"""
    rows = pullback_matrix(alpha)
    out: Exterior = {}
    for J, c in x.items():
        if any(j >= alpha.target_dim for j in J):
            raise ExteriorError(f"monomial {J} does not live in level {alpha.target_dim}")
        for L, a in monomial_image(rows, J).items():
            add_into(out, L, c * a)
    return out


def delta_derivation(alpha: SimplicialMap, x: Exterior) -> Exterior:
    """The alpha-derivation: remove phi_{alpha(m)} with sign (-1)^(r-k), then pull back"""
    m = alpha.source_dim
    hit = alpha.values[m]
    rows = pullback_matrix(alpha)
    out: Exterior = {}
    for J, c in x.items():
        if hit not in J:
            continue
        k = J.index(hit) + 1
        sign = -1 if (len(J) - k) % 2 else 1
        rest = tuple(j for j in J if j != hit)
        for L, a in monomial_image(rows, rest).items():
            add_into(out, L, sign * c * a)
    return out


def monomials(n: int, degree: int) -> List[Subset]:
    """Degree-`degree` monomials of Lambda Z(n), lexicographic"""
    return list(combinations(range(n), degree))


def top_monomial(n: int) -> Subset:
    return tuple(range(n))
