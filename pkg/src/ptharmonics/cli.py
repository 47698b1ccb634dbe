"""Command-line driver: ``pt-harmonics SUITE [--flag value ...]``.

Exit codes: 0 all checks pass, 1 some check failed, 2 bad configuration,
3 gauge not PT-compatible (for suites that need it), 4 report could not be
written.
"""
from __future__ import annotations

import argparse
import logging
import sys
import warnings
from typing import Optional, Sequence

from .gauges import GaugeSpecError
from .pt_core import Incompatible
from .report import FORMATS, Report, ReportIOError, emit, write_report
from .suites import SUITES, ConfigError, RunConfig, run_suite

__all__ = ["build_parser", "run", "main"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_INCOMPATIBLE, EXIT_IO = 0, 1, 2, 3, 4

log = logging.getLogger("ptharmonics")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pt-harmonics", description="Numerical checks for PT-dressed harmonics and the PT-hydrogen atom.")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--gauge", default="zero", help="gauge spec name:param=value, e.g. a_theta:a=0.3")
    p.add_argument("--lmax", "--l-max", dest="l_max", type=int, default=6)
    p.add_argument("--n-theta", "--n_theta", dest="n_theta", type=int, default=None)
    p.add_argument("--n-phi", "--n_phi", dest="n_phi", type=int, default=None)
    p.add_argument("--fd-step", "--fd_step", dest="fd_step", type=float, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--output-format", "--output_format", dest="output_format", choices=FORMATS, default="json")
    p.add_argument("--output-path", "--output_path", dest="output_path", default=None)
    return p


def run(config: RunConfig) -> tuple[Optional[Report], int]:
    """Execute one suite; returns the report (None on early failure) and the exit code."""
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = run_suite(config)
        for w in caught:
            log.warning("%s", w.message)
    except (ConfigError, GaugeSpecError) as exc:
        print(f"pt-harmonics: configuration error: {exc}", file=sys.stderr)
        return None, EXIT_CONFIG
    except Incompatible as exc:
        print(f"pt-harmonics: {exc} (max_deviation={exc.max_deviation:.17g})", file=sys.stderr)
        return None, EXIT_INCOMPATIBLE
    return report, EXIT_OK if report.ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    config = RunConfig(**vars(args))
    report, code = run(config)
    if report is None:
        return code
    try:
        if config.output_path:
            write_report(report, config.output_format, config.output_path)
        else:
            sys.stdout.buffer.write(emit(report, config.output_format))
            sys.stdout.flush()
    except ReportIOError as exc:
        print(f"pt-harmonics: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
