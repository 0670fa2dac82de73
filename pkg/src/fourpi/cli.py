"""Command-line front end: ``fourpi scan-alpha|scan-field|scan-thickness|scan-detuning|oracle``."""
from __future__ import annotations

import argparse
import sys

from .config import ConfigError, parse_config
from .errors import DomainError, NumericalError
from .scans import run_scan, write_csv, write_svg

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SUBCOMMANDS = {
    "scan-alpha": ("alpha", "intensities of all four beams versus spin rotation angle"),
    "scan-field": ("field", "rotation angle and interfering intensities versus field strength"),
    "scan-thickness": ("thickness", "interfering intensities versus plate thickness d/Delta"),
    "scan-detuning": ("detuning", "plate transmission and diffraction versus detuning y"),
    "oracle": ("oracle", "closed-form square-field T versus the transfer-matrix oracle"),
}

# argparse dests, identical to config keys
OVERRIDE_KEYS = ("points", "from", "to", "out", "svg", "tau", "y", "omega", "a", "l",
                 "energy", "mode", "spin_up_prob")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat 'key = value' configuration file")
    common.add_argument("--out", metavar="PATH", help="CSV destination (default: stdout)")
    common.add_argument("--svg", metavar="PATH", help="also write a static SVG line plot")
    common.add_argument("--points", metavar="N")
    common.add_argument("--from", dest="from", metavar="X")
    common.add_argument("--to", metavar="X")
    for flag in ("tau", "y", "omega", "a", "l", "energy", "mode"):
        common.add_argument(f"--{flag}", metavar="VALUE")
    common.add_argument("--spin-up-prob", dest="spin_up_prob", metavar="P")

    parser = _Parser(prog="fourpi", description="Neutron interferometer 4-pi symmetry simulations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in SUBCOMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    kind = SUBCOMMANDS[args.command][0]
    overrides = {key: getattr(args, key) for key in OVERRIDE_KEYS}
    try:
        cfg = parse_config(kind, args.config, overrides)
    except ConfigError as exc:
        print(f"fourpi: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_scan(cfg)
    except (DomainError, NumericalError, ArithmeticError) as exc:
        print(f"fourpi: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    try:
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
                write_csv(result, fh)
        else:
            write_csv(result, sys.stdout)
        if cfg.svg_path:
            write_svg(result, cfg.svg_path)
    except OSError as exc:
        print(f"fourpi: cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    for key, value in result.summary.items():
        print(f"{key} = {value:.3e}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
