"""
Command-line entry point.

    pylattice run --config <path> [--out <path>] [--format json|csv] [--threads N]
    pylattice simulate --config <path> [--out <path>]
    pylattice validate --config <path>

Exit codes: 0 when every report passes, 1 when some report fails, 2 for an invalid
configuration and 3 for any other error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from .base import ConfigError
from .cli import (
    Experiment,
    ExperimentConfig,
    OutputFormat,
    parse_suite,
    render_field,
    render_reports,
    run_suite,
    write_atomic,
)
from .settings import RuntimeParameters

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _read_suite(path: str) -> List[ExperimentConfig]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError("config", f"cannot read {path}: {e}") from e
    return parse_suite(text)


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        write_atomic(path, text)


def _run(args: argparse.Namespace, settings: RuntimeParameters) -> int:
    configs = _read_suite(args.config)
    results = run_suite(configs, settings.worker_count(args.threads))

    reports = []
    for result in results:
        if result.artifact is not None and result.config.output.path is not None:
            write_atomic(result.config.output.path, render_field(result.artifact))
        for report in result.reports:
            status = "PASS" if report.passed else "FAIL"
            print(
                f"{status} {report.name} {report.model}: "
                f"{report.statistic_name} = {report.statistic:.6g} (threshold {report.threshold:.6g})",
                file=sys.stderr,
            )
        reports.extend(result.reports)

    fmt = OutputFormat(args.format) if args.format else configs[0].output.format
    out = args.out
    if out is None and len(configs) == 1:
        out = configs[0].output.path
    if reports:
        _emit(render_reports(reports, fmt), out)
    return EXIT_PASS if all(report.passed for report in reports) else EXIT_FAIL


def _simulate(args: argparse.Namespace, settings: RuntimeParameters) -> int:
    configs = _read_suite(args.config)
    for index, config in enumerate(configs):
        if config.experiment is not Experiment.SIMULATE:
            raise ConfigError(f"[{index}].experiment", "simulate needs simulate experiments")
    if len(configs) > 1 and (args.out is not None or any(c.output.path is None for c in configs)):
        raise ConfigError("output.path", "every simulation of a suite needs its own output path")

    for result in run_suite(configs, settings.worker_count(None)):
        _emit(render_field(result.artifact), args.out or result.config.output.path)
    return EXIT_PASS


def _validate(args: argparse.Namespace, settings: RuntimeParameters) -> int:
    configs = _read_suite(args.config)
    for config in configs:
        model = f" {config.model}" if config.model is not None else ""
        print(f"ok {config.experiment.value}{model}", file=sys.stderr)
    return EXIT_PASS


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pylattice",
        description="Simulate integrable lattice systems and verify their invariant measures",
        epilog="""
            Use environment variables LATTICE_THREADS and LATTICE_LOG_LEVEL to set the number of worker
            threads and the log level.
        """,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run the experiments of a configuration or suite")
    run.add_argument("--config", required=True, help="JSON configuration or suite")
    run.add_argument("--out", help="file to write reports to instead of standard output")
    run.add_argument("--format", choices=[f.value for f in OutputFormat], help="report format")
    run.add_argument("--threads", type=int, help="number of experiments to run concurrently")
    run.set_defaults(handler=_run)

    sim = commands.add_parser("simulate", help="write the field of a simulate experiment as CSV")
    sim.add_argument("--config", required=True, help="JSON configuration or suite")
    sim.add_argument("--out", help="file to write the field to instead of standard output")
    sim.set_defaults(handler=_simulate)

    validate = commands.add_parser("validate", help="parse and validate a configuration only")
    validate.add_argument("--config", required=True, help="JSON configuration or suite")
    validate.set_defaults(handler=_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        settings = RuntimeParameters()
        settings.configure_logging()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        return args.handler(args, settings)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        logging.debug("run aborted", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
