"""Command line entry point."""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from ..base.exceptions import ConfigurationError, ReplayMismatchError, TraceError
from ..config.loading import load_fixture, load_scenario
from ..detection.oracle import replay
from ..simkernel.kernel import run
from ..simkernel.metrics import write_metrics
from ..tracing.decoding import read_trace
from ..tracing.writer import write_trace
from .casestudy import check_narrative, failed
from .logging_ import configure_logging
from .sweep import parse_seeds, parse_vary, run_sweep, write_rows

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_CONFIGURATION = 2
EXIT_ELECTION = 3
EXIT_MISMATCH = 4

TRACE_FILE = 'trace.jsonl'


def cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    result = run(scenario, detection_enabled=False if args.no_detect else None, seed=args.seed)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    trace_path = write_trace(result.trace, out / TRACE_FILE)

    if result.metrics is None:
        print(f'election failed: {result.error}', file=sys.stderr)
        return EXIT_ELECTION

    metrics_path, energy_path = write_metrics(result.metrics, out)
    LOGGER.info('wrote %s, %s and %s', trace_path, metrics_path, energy_path)

    return EXIT_OK


def cmd_casestudy(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario) if args.scenario else load_fixture('casestudy')
    result = run(scenario)

    if not result.ok:
        print(f'election failed: {result.error}', file=sys.stderr)
        return EXIT_ELECTION

    outcomes = check_narrative(result, scenario)

    for outcome in outcomes:
        print(outcome.line())

    return EXIT_VERIFICATION if failed(outcomes) else EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    report = replay(read_trace(args.trace), scenario)

    print(f'checked {report.checked} verdicts, skipped {report.skipped}, '
          f'{len(report.divergences)} divergences')

    for divergence in report.divergences:
        print(divergence)

    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    vary = parse_vary(args.vary)
    rows = run_sweep(scenario, parse_seeds(args.seeds), vary, args.workers)

    if args.out is None:
        write_rows(rows, list(vary), sys.stdout)

    else:
        with open(args.out, 'w', encoding='UTF-8', newline='') as handle:
            write_rows(rows, list(vary), handle)

    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'run': cmd_run,
    'casestudy': cmd_casestudy,
    'replay': cmd_replay,
    'sweep': cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='segnet', description='Secure geo-sensor network simulator')
    commands = parser.add_subparsers(dest='command', required=True)

    run_parser = commands.add_parser('run', help='simulate one scenario')
    run_parser.add_argument('--scenario', required=True, help='scenario file (.toml or .json)')
    run_parser.add_argument('--seed', type=int, default=None, help='override the scenario seed')
    run_parser.add_argument('--out', default='.', help='output directory')
    run_parser.add_argument('--no-detect', action='store_true', help='disable every detection module')

    casestudy_parser = commands.add_parser('casestudy', help='check the worked example narrative')
    casestudy_parser.add_argument('--scenario', default=None, help='variant of the shipped case-study fixture')

    replay_parser = commands.add_parser('replay', help='re-evaluate the detection verdicts of a trace')
    replay_parser.add_argument('--trace', required=True)
    replay_parser.add_argument('--scenario', required=True)

    sweep_parser = commands.add_parser('sweep', help='run seeds x parameter combinations')
    sweep_parser.add_argument('--scenario', required=True)
    sweep_parser.add_argument('--seeds', required=True, help='a..b, inclusive')
    sweep_parser.add_argument('--vary', action='append', default=[], help='key=v1,v2,... (repeatable)')
    sweep_parser.add_argument('--workers', type=int, default=1)
    sweep_parser.add_argument('--out', default=None, help='aggregate CSV path, standard output if omitted')

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)

    try:
        return COMMANDS[args.command](args)

    except ConfigurationError as e:
        print(f'configuration error: {e}', file=sys.stderr)
        return EXIT_CONFIGURATION

    except (ReplayMismatchError, TraceError) as e:
        print(f'trace error: {e}', file=sys.stderr)
        return EXIT_MISMATCH
