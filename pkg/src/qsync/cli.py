"""The qsync command line: parse flags and a flat config, run, serialize.

Exit codes: 0 on success, 2 for configuration and usage errors, 3 for
numeric failures (an aborted integration, a singular solve).  Errors go to
stderr only; the table goes to --out, or to stdout when no path is given.
"""

import argparse
import sys
import time

import numpy as np

from ._version import __version__
from .liouville import IntegrationError
from .sweeps import COMMANDS, ConfigError, RunConfig, RUNNERS

__all__ = ["main", "run", "parse_config_file", "parse_set_item"]

_EXIT_OK = 0
_EXIT_CONFIG = 2
_EXIT_NUMERIC = 3


def parse_config_file(path: str) -> dict:
    """Read a flat key = value file; '#' lines and blank lines are skipped."""
    raw = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(
                    f"{path}:{lineno}: expected 'key = value', got {stripped!r}"
                )
            key, _, value = stripped.partition("=")
            raw[key.strip()] = value.strip()
    return raw


def parse_set_item(item: str) -> tuple[str, str]:
    """Split one --set argument at the first '='."""
    if "=" not in item:
        raise ConfigError(f"--set expects key=value, got {item!r}")
    key, _, value = item.partition("=")
    return key.strip(), value.strip()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsync",
        description=(
            "Steady states, phase-space surfaces and synchronization "
            "diagnostics for driven dissipative two- and three-level systems."
        ),
    )
    parser.add_argument("--version", action="version", version=f"qsync {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "steady": "stationary Bloch vector: closed form next to the nullspace oracle",
        "tongue": "peak synchronization S_max over an (epsilon, delta) grid",
        "smeasure": "phase distribution S(phi), optionally for a family of curves",
        "qsurface": "Husimi function of the stationary state on a sphere grid",
        "evolve": "fixed-step relaxation trajectory of the Bloch vector",
        "spin1": "three-level stationary report: populations and both (m3, m8) routes",
    }
    for command in COMMANDS:
        sub = subparsers.add_parser(command, help=descriptions[command])
        sub.add_argument("--config", metavar="FILE", help="flat key = value file")
        sub.add_argument(
            "--set",
            metavar="KEY=VALUE",
            action="append",
            default=[],
            help="override one config key (repeatable; wins over --config)",
        )
        sub.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        sub.add_argument("--format", choices=("csv", "json"), help="output format")
        sub.add_argument("--jobs", type=int, metavar="N", help="worker count")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        raw = parse_config_file(args.config) if args.config else {}
        for item in args.set:
            key, value = parse_set_item(item)
            raw[key] = value
        if args.out is not None:
            raw["out"] = args.out
        if args.format is not None:
            raw["format"] = args.format
        if args.jobs is not None:
            raw["jobs"] = str(args.jobs)
        config = RunConfig.resolve(args.command, raw)
    except ConfigError as exc:
        print(f"qsync: configuration error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except OSError as exc:
        print(f"qsync: cannot read config: {exc}", file=sys.stderr)
        return _EXIT_CONFIG

    started = time.perf_counter()
    try:
        table = RUNNERS[args.command](config)
    except IntegrationError as exc:
        print(f"qsync: numeric failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except np.linalg.LinAlgError as exc:
        print(f"qsync: numeric failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    table.wall_clock_s = time.perf_counter() - started

    try:
        table.write(config.out, config.format)
    except OSError as exc:
        print(f"qsync: cannot write output: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    return _EXIT_OK


def run():
    """Console entry point."""
    sys.exit(main())
