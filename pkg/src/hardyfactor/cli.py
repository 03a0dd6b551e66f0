"""Command line entry point: ``hardyfactor run <config.json> --out <dir>``."""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import ConfigError
from .scenarios import ScenarioConfig, emit_report, run_scenario

EXIT_PASS = 0
EXIT_CHECK_FAILED = 2
EXIT_CONFIG = 3
EXIT_INTERNAL = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hardyfactor", description="Run a declarative scenario and write its report.")
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one scenario config")
    run.add_argument("config", help="path to a scenario config (JSON)")
    run.add_argument("--out", required=True, help="output directory for report.json and artifacts")
    run.add_argument("--seed", type=int, help="override the config seed")
    run.add_argument("--radius", type=float, help="override the deep-zero search radius")
    run.add_argument("--samples", type=int, help="override sample_count")
    run.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub.add_parser("schema", help="print the config JSON schema")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        from importlib import resources

        sys.stdout.write(resources.files("hardyfactor").joinpath("config.schema.json").read_text(encoding="utf-8"))
        return EXIT_PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = ScenarioConfig.from_file(args.config, {"seed": args.seed, "radius": args.radius, "sample_count": args.samples})
    except ConfigError as exc:
        print(f"config error at {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = run_scenario(cfg)
        emit_report(report, args.out)
    except Exception as exc:  # noqa: BLE001 - the exit code contract covers any failure
        logging.getLogger("hardyfactor").exception("internal error")
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    for c in sorted(report.checks, key=lambda c: c.name):
        tag = "PASS" if c.passed else ("FAIL" if c.mandatory else "fail (advisory)")
        print(f"{tag:16s} {c.name}")
    print("overall:", "pass" if report.overall_pass else "FAIL")
    return EXIT_PASS if report.overall_pass else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
