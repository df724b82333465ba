"""
Flag validators
"""
import os
import re
from typing import Any, Dict, List, Optional, Tuple

from sympy import isprime


class Validators:
    """Flag validation methods; each returns (ok, parsed value or error message)"""

    @staticmethod
    def validate_ring(ring: str, mod: Optional[int]) -> Tuple[bool, Optional[str]]:
        if ring not in ('Z', 'Zmod'):
            return False, f"--ring must be Z or Zmod, got {ring}"
        if ring == 'Zmod':
            if mod is None:
                return False, "--ring Zmod needs --mod q"
            if mod < 2:
                return False, f"--mod must be at least 2, got {mod}"
        elif mod is not None:
            return False, "--mod only applies with --ring Zmod"
        return True, None

    @staticmethod
    def validate_prime(q: Optional[int]) -> Tuple[bool, Optional[str]]:
        if q is None or not isprime(q):
            return False, f"a prime modulus is required, got {q}"
        return True, None

    @staticmethod
    def validate_top(top: int) -> Tuple[bool, Optional[str]]:
        if not 0 <= top <= 6:
            return False, f"--top must lie in 0..6, got {top}"
        return True, None

    @staticmethod
    def validate_arity(arity: int) -> Tuple[bool, Optional[str]]:
        if not 1 <= arity <= 4:
            return False, f"--arity must lie in 1..4, got {arity}"
        return True, None

    @staticmethod
    def validate_jobs(jobs: int) -> Tuple[bool, Optional[str]]:
        if not 1 <= jobs <= (os.cpu_count() or 1) * 4:
            return False, f"--jobs must lie in 1..{(os.cpu_count() or 1) * 4}, got {jobs}"
        return True, None

    @staticmethod
    def validate_levels(levels: List[int], lowest: int = 0) -> Tuple[bool, Optional[str]]:
        bad = [n for n in levels if n < lowest]
        if bad:
            return False, f"levels must be at least {lowest}, got {bad}"
        return True, None

    @staticmethod
    def parse_subset(text: str) -> Tuple[bool, Any]:
        """'0,2' or '{0,2}' or '' -> (0, 2)"""
        body = text.strip().strip('{}[]() ')
        if not body:
            return True, ()
        if not re.match(r'^\d+(\s*,\s*\d+)*$', body):
            return False, f"subset must be comma-separated integers, got {text!r}"
        values = [int(v) for v in body.split(',')]
        if values != sorted(set(values)):
            return False, f"subset entries must be strictly increasing, got {values}"
        return True, tuple(values)

    @staticmethod
    def parse_group(text: str) -> Tuple[bool, Any]:
        """'symmetric:3', 'cyclic:4', ... -> loader group description"""
        match = re.match(r'^(cyclic|symmetric|alternating|dihedral):(\d+)$', text.strip())
        if not match:
            return False, f"group must look like cyclic:4 or symmetric:3, got {text!r}"
        kind, n = match.group(1), int(match.group(2))
        if n < 1:
            return False, "group size parameter must be positive"
        return True, {kind: n}

    @staticmethod
    def validate_input(spec: str) -> Tuple[bool, Optional[str]]:
        """A readable file, or lib:NAME"""
        if spec.startswith('lib:'):
            return True, None
        if not os.path.isfile(spec):
            return False, f"cannot read input {spec}"
        return True, None

    @staticmethod
    def collect(checks: List[Tuple[bool, Any]]) -> Dict[str, Any]:
        """{'ok': bool, 'errors': [...]} over a list of validator results"""
        errors = [msg for ok, msg in checks if not ok]
        return {'ok': not errors, 'errors': errors}
