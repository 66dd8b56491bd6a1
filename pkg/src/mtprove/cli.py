"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 no proof found, 3 certificate rejected.
Set MTP_LOG to a logging level name (DEBUG, INFO, WARNING) for stderr verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .errors import MtpError, ProofNotFound
from .exact.constexpr import DEFAULT_LN_TERMS, DEFAULT_PI_DEPTH
from .prover.casestudy import nishizawa_case_study
from .prover.certificate import Certificate
from .prover.checker import check
from .prover.engine import Config, prove
from .prover.problem import parse_problem
from .prover.report import render_report

EXIT_OK, EXIT_INPUT, EXIT_NO_PROOF, EXIT_REJECT = 0, 1, 2, 3
CASE_STUDIES = ("nishizawa",)

log = logging.getLogger("mtprove")


class InputError(Exception):
    pass


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _budget_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--pi-depth", type=_positive, default=DEFAULT_PI_DEPTH, help="starting convergent depth for pi")
    p.add_argument("--ln-terms", type=_positive, default=DEFAULT_LN_TERMS, help="starting series length for ln")
    p.add_argument("--series-order", type=_positive, default=None, help="series order at 0 (default K + 4)")
    p.add_argument("--degree-budget", type=_positive, default=6, help="largest truncation degree")
    p.add_argument("--split-depth", type=_positive, default=4, help="interval split depth in auto mode")
    p.add_argument("--timeout", type=_positive, default=120, help="search time limit in seconds")
    p.add_argument("--jobs", type=_positive, default=1, help="worker count (accepted; search runs in one thread)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtprove", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    budgets = _budget_flags()

    p = sub.add_parser("prove", parents=[budgets], help="prove the statement of a problem file")
    p.add_argument("input", type=Path)
    p.add_argument("--out", type=Path, help="certificate path (default: standard output)")

    c = sub.add_parser("check", help="check a certificate against a problem file")
    c.add_argument("certificate", type=Path)
    c.add_argument("input", type=Path)

    s = sub.add_parser("casestudy", parents=[budgets], help="run a built-in case study")
    s.add_argument("name")
    s.add_argument("--out", type=Path, help="certificate path")
    s.add_argument("--emit-intermediates", type=Path, nargs="?", const=Path("intermediates.json"),
                   metavar="PATH", help="write the named polynomials and constants as exact JSON")
    s.add_argument("--report", type=Path, nargs="?", const=Path("report.md"), metavar="PATH",
                   help="write a markdown walkthrough")

    e = sub.add_parser("explain", help="print a certificate as an indented tree")
    e.add_argument("certificate", type=Path)
    return parser


def _config(args) -> Config:
    if args.jobs > 1:
        log.info("--jobs %d ignored: proof search runs in one thread", args.jobs)
    return Config(pi_depth=args.pi_depth, ln_terms=args.ln_terms, series_order=args.series_order,
                  degree_budget=args.degree_budget, split_depth=args.split_depth,
                  timeout_seconds=args.timeout)


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_problem(path: Path):
    try:
        return parse_problem(_read(path))
    except MtpError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_certificate(path: Path) -> dict:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict) or "schema" not in data:
        raise InputError(f"{path}: not a certificate")
    return data


def _write(path: Path, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    log.info("wrote %s", path)


def cmd_prove(args) -> int:
    pf = _load_problem(args.input)
    log.info("proving %s", pf.problem.render())
    start = time.monotonic()
    try:
        cert = prove(pf.problem, pf.strategy, _config(args))
    except ProofNotFound as exc:
        print(f"no proof found: {exc}", file=sys.stderr)
        for item in exc.frontier:
            print(f"  open: {item}", file=sys.stderr)
        return EXIT_NO_PROOF
    log.info("proof found in %.2f s", time.monotonic() - start)
    _write(args.out, cert.dumps())
    return EXIT_OK


def cmd_check(args) -> int:
    data = _load_certificate(args.certificate)
    pf = _load_problem(args.input)
    verdict = check(data, pf.problem)
    print(verdict)
    return EXIT_OK if verdict else EXIT_REJECT


def cmd_casestudy(args) -> int:
    if args.name not in CASE_STUDIES:
        raise InputError(f"unknown case study {args.name!r}; available: {', '.join(CASE_STUDIES)}")
    start = time.monotonic()
    cert, inter = nishizawa_case_study(_config(args))
    verdict = check(cert, cert.problem)
    elapsed = time.monotonic() - start
    print(f"{args.name}: {verdict} in {elapsed:.2f} s")
    if args.out is not None:
        _write(args.out, cert.dumps())
    if args.emit_intermediates is not None:
        _write(args.emit_intermediates, json.dumps(inter.to_json(), sort_keys=True, indent=1) + "\n")
    if args.report is not None:
        _write(args.report, render_report(cert, inter, verdict, elapsed))
    return EXIT_OK if verdict else EXIT_REJECT


def _summary(node) -> str:
    d = node.data
    bits = []
    if "atom" in d:
        bits.append(d["atom"])
    if "certificate" in d:
        c = d["certificate"]
        bits.append(f"{c['tactic']} ({c['claimed']}{'' if c['strict'] else ', non-strict'})")
    if "sign" in d:
        lo, hi = d["enclosure"]
        bits.append(f"{d['sign']}, in [{float(Fraction(lo)):.6g}, {float(Fraction(hi)):.6g}]")
    if "K" in d:
        bits.append(f"K = {d['K']}, derivative {d['derivative_order']}")
    if "level" in d:
        bits.append(f"level {d['level']}, {len(d['pieces'])} pieces")
    if "base_side" in d:
        bits.append(d["base_side"].replace("_", " "))
    return "; ".join(bits)


def cmd_explain(args) -> int:
    try:
        cert = Certificate.from_json(_load_certificate(args.certificate))
    except (KeyError, TypeError, ValueError, MtpError) as exc:
        raise InputError(f"{args.certificate}: {exc}") from None
    print(cert.problem.render())
    for path, node in cert.root.walk():
        summary = _summary(node)
        print(f"{'  ' * len(path)}{node.kind}" + (f": {summary}" if summary else ""))
    return EXIT_OK


COMMANDS = {"prove": cmd_prove, "check": cmd_check, "casestudy": cmd_casestudy, "explain": cmd_explain}


def main(argv=None) -> int:
    level = os.environ.get("MTP_LOG", "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s", force=True)
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
