"""
Commands and run configuration for the batch front door
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from simplicial.modules import ScalarRing


class Command(Enum):
    """Subcommands"""
    VALIDATE = 'validate'
    CHECK = 'check'
    GENERATE = 'generate'
    DECOMPOSE = 'decompose'
    EXPRESS_DEGENERACIES = 'express-degeneracies'
    LIBRARY = 'library'


class CheckKinds:
    """Values accepted by `check`"""
    DOLD_KAN = 'dold-kan'
    THEOREM1 = 'theorem1'
    THEOREM2 = 'theorem2'
    PHI = 'phi'
    OTIMES = 'otimes'

    ALL = (DOLD_KAN, THEOREM1, THEOREM2, PHI, OTIMES)


class GenerateKinds:
    ALL = ('kc', 'crossed-module', 'symmetric-algebra', 'random')


class ExitCode:
    OK = 0
    MALFORMED = 1
    VIOLATION = 2


@dataclass
class RunConfig:
    """Everything a run depends on; echoed at the top of every report"""
    command: Command
    kind: Optional[str] = None
    inputs: List[str] = field(default_factory=list)
    ring: str = 'Z'
    mod: Optional[int] = None
    top: int = 3
    arity: int = 3
    seed: int = 42
    jobs: int = 1
    format: str = 'text'
    out: Optional[str] = None
    levels: List[int] = field(default_factory=list)
    timing: bool = False
    params: Dict[str, Any] = field(default_factory=dict)

    def scalar_ring(self) -> ScalarRing:
        return ScalarRing(self.mod) if self.ring == 'Zmod' else ScalarRing()

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dict for reports"""
        return {
            'command': self.command.value,
            'kind': self.kind,
            'inputs': list(self.inputs),
            'ring': self.scalar_ring().name,
            'top': self.top,
            'arity': self.arity,
            'seed': self.seed,
            'jobs': self.jobs,
            'format': self.format,
            'levels': list(self.levels),
            'params': dict(self.params),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        ring = data.get('ring', 'Z')
        mod = None
        if ring != 'Z':
            mod = int(str(ring).split('/')[-1]) if '/' in str(ring) else data.get('mod')
            ring = 'Zmod'
        return cls(
            command=Command(data['command']),
            kind=data.get('kind'),
            inputs=list(data.get('inputs', [])),
            ring=ring,
            mod=mod,
            top=data.get('top', 3),
            arity=data.get('arity', 3),
            seed=data.get('seed', 42),
            jobs=data.get('jobs', 1),
            format=data.get('format', 'text'),
            out=data.get('out'),
            levels=list(data.get('levels', [])),
            timing=data.get('timing', False),
            params=dict(data.get('params', {})),
        )
