"""Command handlers for the batch front door"""
import json
import os
import time
from typing import Any, Callable, Dict, List, Tuple

from cli.messages import Messages
from cli.states import CheckKinds, Command, ExitCode, RunConfig
from cli.validators import Validators
from config import Config
from services.checker import Checker, CheckResult
from services.generator import Generator, GeneratorError
from services.library import Library, LibraryError
from services.loader import DOMAIN_ERRORS, Loaded, LoaderError, load_file, load_object
from simplicial.box import BoxError
from simplicial.near_ring import NearRingError
from utils.logger import logger

Report = Dict[str, Any]

# errors that mean "the input or the request is bad", mapped to exit 1
INPUT_ERRORS = DOMAIN_ERRORS + (LoaderError, LibraryError, GeneratorError, BoxError, NearRingError)


class CommandHandlers:
    """Runs one command and renders its report"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.checker = Checker(config.jobs)
        self.generator = Generator(config.seed)

        self.command_handlers: Dict[Command, Callable[[], Tuple[int, List[Dict]]]] = {
            Command.VALIDATE: self.handle_validate,
            Command.CHECK: self.handle_check,
            Command.GENERATE: self.handle_generate,
            Command.DECOMPOSE: self.handle_decompose,
            Command.EXPRESS_DEGENERACIES: self.handle_express,
            Command.LIBRARY: self.handle_library,
        }
        self.check_handlers: Dict[str, Callable[[], List[CheckResult]]] = {
            CheckKinds.DOLD_KAN: self.check_dold_kan,
            CheckKinds.THEOREM1: self.check_theorem1,
            CheckKinds.THEOREM2: self.check_theorem2,
            CheckKinds.PHI: self.check_phi,
            CheckKinds.OTIMES: self.check_otimes,
        }

    def execute(self) -> Tuple[int, Report]:
        """Run the configured command; never raises"""
        started = time.perf_counter()
        try:
            status, results = self.command_handlers[self.config.command]()
            error = None
        except INPUT_ERRORS as e:
            logger.error(f"❌ {self.config.command.value}: {e}")
            status, results, error = ExitCode.MALFORMED, [], str(e)
        except Exception as e:
            logger.error(f"Unexpected error in {self.config.command.value}: {e}", exc_info=True)
            status, results, error = ExitCode.MALFORMED, [], f"{type(e).__name__}: {e}"
        report: Report = {'config': self.config.to_dict(), 'results': results, 'exit_status': status}
        if error is not None:
            report['error'] = error
        if self.config.timing:
            report['timing'] = time.perf_counter() - started
        return status, report

    # ---------- inputs ----------

    def load(self, spec: str) -> Loaded:
        if spec.startswith('lib:'):
            return Library.get(spec[4:])
        return load_file(spec)

    def _inputs(self, at_least: int = 1) -> List[str]:
        if len(self.config.inputs) < at_least:
            raise LoaderError(f"{self.config.command.value} needs an input file or lib:NAME")
        return self.config.inputs

    @staticmethod
    def _status(results: List[CheckResult]) -> int:
        return ExitCode.OK if all(r.ok for r in results) else ExitCode.VIOLATION

    # ---------- commands ----------

    def handle_validate(self) -> Tuple[int, List[Dict]]:
        results = []
        for spec in self._inputs():
            result = self.checker.validate(self.load(spec))
            result.detail['input'] = spec
            results.append(result)
        return self._status(results), [r.to_dict() for r in results]

    def handle_check(self) -> Tuple[int, List[Dict]]:
        handler = self.check_handlers.get(self.config.kind)
        if handler is None:
            raise LoaderError(f"unknown check {self.config.kind!r}, expected one of {CheckKinds.ALL}")
        results = handler()
        return self._status(results), [r.to_dict() for r in results]

    def handle_generate(self) -> Tuple[int, List[Dict]]:
        params = dict(self.config.params)
        kind = self.config.kind
        if kind in ('kc', 'random'):
            params.setdefault('ring', self.config.scalar_ring())
            params.setdefault('top', self.config.top)
        elif kind == 'symmetric-algebra':
            params.setdefault('q', self.config.mod or 2)
            params.setdefault('top', self.config.top)
        elif kind == 'crossed-module':
            params.setdefault('top', self.config.top)
        doc = self.generator.generate(kind, **params)
        path = self.config.out or os.path.join(Config.DATA_DIR, f"{kind}-{self.config.seed}.json")
        if os.path.dirname(path):
            os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, 'w', encoding='utf-8') as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
        result = self.checker.validate(load_object(doc))
        result.detail.update({'input': path, 'kind': kind})
        logger.info(f"💾 Wrote {kind} to {path}")
        return self._status([result]), [result.to_dict()]

    def handle_decompose(self) -> Tuple[int, List[Dict]]:
        params = self.config.params
        if 'J' in params:
            result = self.checker.express_degeneracies(params['J'], params['m'])
        else:
            G = self.load(self._inputs()[0])
            result = self.checker.decompose(G, params['level'], self._element(G, params))
        return self._status([result]), [result.to_dict()]

    def handle_express(self) -> Tuple[int, List[Dict]]:
        result = self.checker.express_degeneracies(self.config.params['J'], self.config.params['m'])
        return self._status([result]), [result.to_dict()]

    def handle_library(self) -> Tuple[int, List[Dict]]:
        entries = Library.listing()
        if self.config.params.get('export'):
            os.makedirs(Config.DATA_DIR, exist_ok=True)
            for name in Library.names():
                path = os.path.join(Config.DATA_DIR, f"{name}.json")
                with open(path, 'w', encoding='utf-8') as fh:
                    json.dump(Library.document(name), fh, indent=2, sort_keys=True)
            logger.info(f"💾 Exported {len(Library.names())} entries to {Config.DATA_DIR}")
        return ExitCode.OK, entries

    # ---------- checks ----------

    def check_dold_kan(self) -> List[CheckResult]:
        if not self.config.inputs:
            ring = self.config.scalar_ring()
            C = self.generator.chain_complex(ring, self.config.top)
            A = self.generator.simplicial_module(ring, self.config.top)
            return [self.checker.dold_kan(C), self.checker.dold_kan(A)]
        return [self.checker.dold_kan(self.load(spec), None) for spec in self.config.inputs]

    def check_theorem1(self) -> List[CheckResult]:
        results = []
        for spec in self._inputs():
            A = self.load(spec)
            top = getattr(A, 'top', 0)
            levels = self.config.levels or list(range(2, min(top, self.config.top) + 1))
            results.extend(self.checker.theorem1(A, levels, certify=self.config.params.get('certify', True)))
        return results

    def check_theorem2(self) -> List[CheckResult]:
        results = []
        for spec in self._inputs():
            G = self.load(spec)
            levels = self.config.levels or list(range(2, getattr(G, 'top', 0) + 1))
            results.extend(self.checker.theorem2(G, levels))
        return results

    def check_phi(self) -> List[CheckResult]:
        correction = self.config.params.get('correction', 'last')
        return [self.checker.phi(self.load(spec), correction) for spec in self._inputs()]

    def check_otimes(self) -> List[CheckResult]:
        return [self.checker.otimes(self.load(spec)) for spec in self._inputs()]

    @staticmethod
    def _element(G, params: Dict[str, Any]) -> int:
        """Element given as an index or as a label on the requested level"""
        level = params['level']
        if not 0 <= level <= G.top:
            raise LoaderError(f"level {level} outside 0..{G.top}")
        group = G.levels[level]
        raw = params['element']
        if isinstance(raw, int) or str(raw).isdigit():
            k = int(raw)
            if not 0 <= k < group.order:
                raise LoaderError(f"element {k} not found on level {level} (order {group.order})")
            return k
        if raw not in group.labels:
            raise LoaderError(f"element {raw!r} not found on level {level}")
        return group.labels.index(raw)


# ---------- rendering ----------

SECTIONS: Dict[str, Callable[[Dict[str, Any]], str]] = {
    'validate': Messages.validate,
    'phi': Messages.phi,
    'otimes': Messages.otimes,
    'decompose': Messages.decompose,
    'express-degeneracies': Messages.express_degeneracies,
}


def _section(result: Dict[str, Any]) -> str:
    name = result['name']
    if name.startswith('dold-kan'):
        return Messages.dold_kan(result)
    if name.startswith('theorem1'):
        return Messages.theorem1(result)
    if name.startswith('theorem2'):
        return Messages.theorem2(result)
    if name == 'validate' and 'kind' in result:
        return Messages.generated(result['input'], result['kind'], result['ok'])
    return SECTIONS[name](result)


def render(report: Report, fmt: str) -> str:
    """Deterministic text or JSON rendering of a report"""
    if fmt == 'json':
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False, default=str)
    config = report['config']
    parts = [Messages.header(config)]
    if 'error' in report:
        parts.append(Messages.error(report['error']))
    elif config['command'] == Command.LIBRARY.value:
        parts.append(Messages.library(report['results']))
    else:
        parts.extend(_section(r) for r in report['results'])
    parts.append(Messages.footer(report['exit_status'], report.get('timing')))
    return "\n".join(parts)
