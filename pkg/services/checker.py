"""
Runs validators and theorem checks, and turns their results into report dicts
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config import Config
from services.loader import Loaded, LoaderError
from simplicial.algebras import (
    SimplicialOperadAlgebra, comm_collapse_rhs, quadratic_collapse_rhs, theorem1_sides,
    validate_algebra,
)
from simplicial.box import (
    box_identity_check, moore_chain, otimes_identity_check, phi_commutation, phi_is_onto,
    phi_map, surjectivity_witness,
)
from simplicial.complexes import ChainComplex, SimplicialModule, validate
from simplicial.dold_kan import roundtrip_check
from simplicial.maps import Violation
from simplicial.modules import span_ops
from simplicial.near_ring import (
    abelian_coefficients, certify_expression, express_by_degeneracies, format_expression,
)
from simplicial.operads import TruncatedOperad, validate_operad
from simplicial.sgroups import (
    TruncatedSimplicialGroup, moore, moore_subgroup, pc2_counts_match, pc2_decompose, pc2_recompose,
    theorem2_check, theta_normality, validate_sgroup,
)
from utils.logger import logger


@dataclass
class CheckResult:
    """One named check: ok flag plus its report payload"""
    name: str
    ok: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'name': self.name, 'ok': self.ok, **self.detail}


def _violation_dict(v: Optional[Violation]) -> Optional[dict]:
    return None if v is None else v.to_dict()


def _expect(obj: Loaded, kind: type, check: str):
    if not isinstance(obj, kind):
        raise LoaderError(f"{check} needs a {kind.__name__}, got {type(obj).__name__}")
    return obj


class Checker:
    """Check runner; independent checks run on a thread pool, results keep submission order"""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs or Config.JOBS
        logger.info(f"✅ Checker initialized with {self.jobs} job(s)")

    def run(self, tasks: Sequence[Tuple[str, Callable[[], CheckResult]]]) -> List[CheckResult]:
        if self.jobs <= 1 or len(tasks) <= 1:
            return [task() for _, task in tasks]
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            futures = [pool.submit(task) for _, task in tasks]
            return [f.result() for f in futures]

    # ---------- validate ----------

    @staticmethod
    def validate(obj: Loaded) -> CheckResult:
        """First violated identity of whatever the document described"""
        if isinstance(obj, (ChainComplex, SimplicialModule)):
            bad = validate(obj)
        elif isinstance(obj, TruncatedSimplicialGroup):
            bad = validate_sgroup(obj)
        elif isinstance(obj, TruncatedOperad):
            bad = validate_operad(obj)
        elif isinstance(obj, SimplicialOperadAlgebra):
            bad = validate_algebra(obj)
        else:
            raise LoaderError(f"nothing to validate on {type(obj).__name__}")
        if bad is not None:
            logger.warning(f"⚠️ Validation failed: {bad}")
        return CheckResult('validate', bad is None,
                           {'object': type(obj).__name__, 'violation': _violation_dict(bad)})

    # ---------- dold-kan ----------

    @staticmethod
    def dold_kan(obj: Loaded, top: Optional[int] = None) -> CheckResult:
        if isinstance(obj, SimplicialOperadAlgebra):
            obj = obj.carrier
        if not isinstance(obj, (ChainComplex, SimplicialModule)):
            raise LoaderError(f"dold-kan needs a complex or simplicial module, got {type(obj).__name__}")
        report = roundtrip_check(obj, top)
        detail = report.to_dict()
        detail['verdict'] = 'iso verified' if report.ok else 'iso failed'
        return CheckResult(f"dold-kan ({report.kind})", report.ok, detail)

    # ---------- theorem 1 ----------

    def theorem1(self, obj: Loaded, levels: Sequence[int], certify: bool = True) -> List[CheckResult]:
        A = _expect(obj, SimplicialOperadAlgebra, 'theorem1')
        return self.run([(f"theorem1 m={m}", lambda m=m: self._theorem1_level(A, m, certify))
                         for m in levels])

    @staticmethod
    def _theorem1_level(A: SimplicialOperadAlgebra, m: int, certify: bool) -> CheckResult:
        report = theorem1_sides(A, m, certify=certify)
        detail = report.to_dict()
        if A.operad.rank(2):
            collapse = quadratic_collapse_rhs(A, m)
            detail['collapse_agrees'] = span_ops(collapse, report.rhs, 'equal')
            if A.operad.name == 'comm':
                detail['product_collapse_agrees'] = span_ops(comm_collapse_rhs(A, m), report.rhs, 'equal')
        ok = report.inclusion_ok and not report.uncertified and detail.get('collapse_agrees', True)
        if report.hypothesis:
            ok = ok and report.verdict in ('equal', 'truncated')
        return CheckResult(f"theorem1 m={m}", ok, detail)

    # ---------- theorem 2 ----------

    def theorem2(self, obj: Loaded, levels: Sequence[int]) -> List[CheckResult]:
        G = _expect(obj, TruncatedSimplicialGroup, 'theorem2')
        return self.run([(f"theorem2 n={n}", lambda n=n: self._theorem2_level(G, n)) for n in levels])

    @staticmethod
    def _theorem2_level(G: TruncatedSimplicialGroup, n: int) -> CheckResult:
        report = theorem2_check(G, n)
        detail = report.to_dict()
        detail['hypothesis'] = 'holds' if report.degenerate else 'fails'
        theta = theta_normality(G, n)
        detail['theta_normality'] = _violation_dict(theta)
        ok = report.inclusion_ok and not report.uncertified and theta is None
        if report.degenerate:
            ok = ok and report.verdict == 'equal'
        return CheckResult(f"theorem2 n={n}", ok, detail)

    # ---------- Phi and the box construction ----------

    @staticmethod
    def phi(obj: Loaded, correction: str = 'last') -> CheckResult:
        G = _expect(obj, TruncatedSimplicialGroup, 'phi')
        chain = moore_chain(G)
        commutes = phi_commutation(G, chain, correction=correction)
        onto = {m: phi_is_onto(G, m) for m in range(G.top + 1)}
        top = min(4, G.top)
        identities = box_identity_check(chain, top, max_degree=top, G=G, correction=correction)
        counts = {n: pc2_counts_match(G, n) for n in range(G.top + 1)}
        detail = {
            'correction': correction,
            'commutation': _violation_dict(commutes),
            'onto': onto,
            'box_identities': _violation_dict(identities),
            'pc2_counts': counts,
            'moore': moore(G).to_dict(),
        }
        ok = commutes is None and identities is None and all(onto.values()) and all(counts.values())
        return CheckResult('phi', ok, detail)

    @staticmethod
    def otimes(obj: Loaded) -> CheckResult:
        G = _expect(obj, TruncatedSimplicialGroup, 'otimes')
        N1 = list(moore_subgroup(G, 1))
        failures = []
        for g, h in product(N1, repeat=2):
            report = otimes_identity_check(G, g, h)
            if not report.ok:
                failures.append({'g': G.levels[1].label(g), 'h': G.levels[1].label(h),
                                 'degree_two': report.degree_two_ok, 'degree_one': report.degree_one_ok})
        return CheckResult('otimes', not failures, {'pairs': len(N1) ** 2, 'failures': failures})

    # ---------- decompositions ----------

    @staticmethod
    def decompose(obj: Loaded, level: int, element: int) -> CheckResult:
        """pc2 components of one element, with the recomposition and the Phi witness"""
        G = _expect(obj, TruncatedSimplicialGroup, 'decompose')
        parts = pc2_decompose(G, level, element)
        back = pc2_recompose(G, level, parts)
        witness = surjectivity_witness(G, level, element)
        detail = {
            'level': level,
            'element': G.levels[level].label(element),
            'components': [
                {'I': list(I), 'x_I': G.levels[level - len(I)].label(x), 'trivial': x == 0}
                for I, x in parts
            ],
            'recomposed': G.levels[level].label(back),
            'phi_witness': witness.to_list(moore_chain(G)),
            'phi_value': G.levels[level].label(phi_map(G, witness)),
        }
        return CheckResult('decompose', back == element, detail)

    @staticmethod
    def express_degeneracies(J: Sequence[int], m: int) -> CheckResult:
        expr = express_by_degeneracies(tuple(J), m)
        ok = certify_expression(tuple(J), m)
        detail = {
            'J': list(J),
            'm': m,
            'expression': format_expression(expr),
            'terms': [[sign, list(I)] for sign, I in expr],
            'abelian': {format_expression([(1, I)]): c
                        for I, c in sorted(abelian_coefficients(tuple(J), m).items())},
        }
        return CheckResult('express-degeneracies', ok, detail)
