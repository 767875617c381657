"""Command-line entry point: ``frozencoh {run,builtin,validate}``."""

from __future__ import annotations

import argparse
import sys

from ..qcore import NonPhysicalStateError
from . import scenario as sc
from .export import FORMATS, export
from .runner import NumericalError, run_scenario

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=1, help="worker threads (0 = auto)")
    p.add_argument("--seed", type=int, default=None, help="override the configured seed")
    p.add_argument("--out", default=None, help="output path (overrides config)")
    p.add_argument("--format", choices=FORMATS, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frozencoh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario file and export the sweep")
    p_run.add_argument("config")
    _common(p_run)

    p_builtin = sub.add_parser("builtin", help="run a bundled scenario")
    p_builtin.add_argument("name", choices=sorted(sc.BUILTINS))
    _common(p_builtin)

    p_val = sub.add_parser("validate", help="check a scenario file against the schema")
    p_val.add_argument("config")
    return parser


def _execute(s: sc.Scenario, args) -> int:
    if args.seed is not None:
        s = s.with_seed(args.seed)
    if args.out is not None or args.format is not None:
        s = s.with_output(args.out, args.format)
    path = s.output_path or f"{s.name}.{s.output_format}"
    records = run_scenario(s, threads=args.threads)
    export(records, path, s.output_format, scenario=s)
    print(f"wrote {len(records)} records to {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            s = sc.load(args.config)
            print(f"{args.config}: ok ({s.name}, N={s.num_qubits}, {len(s.times)} grid points)")
            return EXIT_OK
        s = sc.load(args.config) if args.command == "run" else sc.builtin(args.name)
        return _execute(s, args)
    except sc.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, NonPhysicalStateError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
