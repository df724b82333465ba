"""
Batch front door: python -m cli <command> ...
"""
import argparse
import sys
from typing import List, Optional

from cli.handlers import CommandHandlers, render
from cli.states import CheckKinds, Command, ExitCode, GenerateKinds, RunConfig
from cli.validators import Validators
from config import Config, ConfigError
from utils.logger import logger, set_level


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--ring', choices=('Z', 'Zmod'), default='Z')
    common.add_argument('--mod', type=int, default=None, metavar='q')
    common.add_argument('--top', type=int, default=Config.DEFAULT_TOP, metavar='N')
    common.add_argument('--arity', type=int, default=Config.MAX_ARITY, metavar='P')
    common.add_argument('--seed', type=int, default=Config.DEFAULT_SEED, metavar='S')
    common.add_argument('--jobs', type=int, default=Config.JOBS, metavar='J')
    common.add_argument('--format', choices=('text', 'json'), default='text')
    common.add_argument('--out', default=None, metavar='PATH')
    common.add_argument('--timing', action='store_true')
    common.add_argument('--verbose', '-v', action='store_true')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog='python -m cli', description=__doc__.strip())
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser(Command.VALIDATE.value, parents=[common], help="validate JSON objects")
    p.add_argument('inputs', nargs='+', help="files or lib:NAME")

    p = sub.add_parser(Command.CHECK.value, parents=[common], help="run a theorem or round-trip check")
    p.add_argument('kind', choices=CheckKinds.ALL)
    p.add_argument('inputs', nargs='*', help="files or lib:NAME (dold-kan without inputs runs a seeded instance)")
    p.add_argument('--levels', type=int, nargs='+', default=[])
    p.add_argument('--correction', choices=('last', 'first'), default='last')
    p.add_argument('--no-certify', action='store_true')

    p = sub.add_parser(Command.GENERATE.value, parents=[common], help="write a generated instance")
    p.add_argument('kind', choices=GenerateKinds.ALL)
    p.add_argument('--group', default='symmetric:3', help="crossed-module group, e.g. symmetric:3")
    p.add_argument('--max-rank', type=int, default=2)
    p.add_argument('--degree-cap', type=int, default=2)
    p.add_argument('--violate', action='store_true', help="symmetric algebra failing degeneracy generation")

    p = sub.add_parser(Command.DECOMPOSE.value, parents=[common], help="pc2 components or a degeneracy expression")
    p.add_argument('inputs', nargs='*')
    p.add_argument('--level', type=int)
    p.add_argument('--element')
    p.add_argument('--subset', help="J for a degeneracy expression, e.g. 1 or 0,2")
    p.add_argument('-m', type=int)

    p = sub.add_parser(Command.EXPRESS_DEGENERACIES.value, parents=[common],
                       help="phi_J as a signed sum of degenerate top monomials")
    p.add_argument('subset', help="J, e.g. 1 or 0,2")
    p.add_argument('m', type=int)

    p = sub.add_parser(Command.LIBRARY.value, parents=[common], help="list shipped instances")
    p.add_argument('--export', action='store_true', help="write every entry to DATA_DIR")
    return parser


def to_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed flags; raises ValueError with every flag error"""
    command = Command(args.command)
    checks = [
        Validators.validate_ring(args.ring, args.mod),
        Validators.validate_top(args.top),
        Validators.validate_arity(args.arity),
        Validators.validate_jobs(args.jobs),
    ]
    params = {}
    levels: List[int] = []
    inputs = list(getattr(args, 'inputs', []) or [])
    checks += [Validators.validate_input(spec) for spec in inputs]
    if command == Command.CHECK:
        levels = list(args.levels)
        checks.append(Validators.validate_levels(levels, lowest=2 if args.kind != 'dold-kan' else 0))
        if args.kind == CheckKinds.PHI:
            params['correction'] = args.correction
        if args.kind == CheckKinds.THEOREM1:
            params['certify'] = not args.no_certify
    elif command == Command.GENERATE:
        if args.kind in ('kc', 'random'):
            params['max_rank'] = args.max_rank
        elif args.kind == 'crossed-module':
            ok, group = Validators.parse_group(args.group)
            checks.append((ok, group))
            if ok:
                params['M'] = group
        elif args.kind == 'symmetric-algebra':
            checks.append(Validators.validate_prime(args.mod if args.ring == 'Zmod' else 2))
            params.update(degree_cap=args.degree_cap, violate=args.violate)
    elif command in (Command.DECOMPOSE, Command.EXPRESS_DEGENERACIES):
        text = args.subset
        if text is not None:
            ok, J = Validators.parse_subset(text)
            checks.append((ok, J))
            m = args.m
            if m is None:
                checks.append((False, "a subset query needs -m"))
            if ok:
                params.update(J=list(J), m=m)
        elif args.level is None or args.element is None:
            checks.append((False, "decompose needs --level and --element, or --subset and -m"))
        else:
            params.update(level=args.level, element=args.element)
    elif command == Command.LIBRARY:
        params['export'] = args.export
    verdict = Validators.collect(checks)
    if not verdict['ok']:
        raise ValueError("; ".join(verdict['errors']))
    return RunConfig(
        command=command, kind=getattr(args, 'kind', None), inputs=inputs,
        ring=args.ring, mod=args.mod, top=args.top, arity=args.arity, seed=args.seed,
        jobs=args.jobs, format=args.format, out=args.out, levels=levels,
        timing=args.timing, params=params,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_level('INFO')
    try:
        config = to_config(args)
        Config.DEFAULT_TOP = config.top
        Config.MAX_ARITY = config.arity
        Config.JOBS = config.jobs
        Config.validate()
    except (ValueError, ConfigError) as e:
        logger.error(f"Invalid flags: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return ExitCode.MALFORMED
    status, report = CommandHandlers(config).execute()
    text = render(report, config.format)
    if config.out and config.command != Command.GENERATE:
        with open(config.out, 'w', encoding='utf-8') as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == '__main__':
    sys.exit(main())
