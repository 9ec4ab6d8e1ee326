"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 invalid input.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .bundles import cohomology_table, make_bundle, rr_chi_p2, rr_chi_p3
from .errors import InvalidBundleData, WindowTooSmall
from .exact_linalg import FieldSpec
from .ideals import betti_summary
from .schemes import SchemeSpec, ZeroDimScheme, random_scheme
from .verifier import (
    EnsembleConfig,
    dumps_summary,
    summarize,
    summary_failed,
    run_trial,
    verify_remarks,
    verify_ten_cases,
    trial_rng,
)

DEFAULT_SEED = 20240601
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None


def _field(args) -> FieldSpec:
    if args.field == "q":
        return FieldSpec.rationals()
    return FieldSpec.default()


def _load_scheme(path: str) -> ZeroDimScheme:
    with open(path) as fh:
        return ZeroDimScheme.from_json(json.load(fh))


def _emit(args, data, text: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_cohomology(args) -> int:
    Z = _load_scheme(args.scheme)
    E = make_bundle(Z, args.c1, args.r)
    table = cohomology_table(E, args.range)
    head = f"c1={E.c1} c2={E.c2} r={E.r} stable={str(E.stable).lower()}"
    _emit(args, table.to_json(E), head + "\n" + table.format_text())
    return EXIT_OK


def cmd_classify(args) -> int:
    Z = _load_scheme(args.scheme)
    if Z.degree == 0:
        raise InvalidBundleData("the empty scheme has no resolution to classify")
    data = betti_summary(Z)
    text = "\n".join([
        f"u          {data['u']}",
        f"label      {data['label'] or '-'}",
        f"generators {' '.join(map(str, data['generators']))}",
        f"syzygies   {' '.join(map(str, data['syzygies']))}",
        f"hilbert    {' '.join(map(str, data['hilbert']))}",
    ])
    _emit(args, data, text)
    return EXIT_OK


def cmd_rr(args) -> int:
    if args.space == "p2":
        value = rr_chi_p2(args.c1, args.c2, args.k)
    else:
        value = rr_chi_p3(args.c1, args.c2, args.k)
        value = int(value) if value.denominator == 1 else str(value)
    data = {"space": args.space, "c1": args.c1, "c2": args.c2, "k": args.k, "chi": value}
    _emit(args, data, str(value))
    return EXIT_OK


def cmd_random(args) -> int:
    spec = SchemeSpec.parse(args.u, args.constraint)
    Z = random_scheme(spec, random.Random(args.seed), _field(args))
    print(Z.dumps())
    return EXIT_OK


def cmd_verify(args) -> int:
    F = _field(args)
    config = EnsembleConfig(
        trials=args.trials, u_range=(args.u_min, args.u_max),
        stability_mix=args.stable_fraction, field=F, seed=args.seed,
    )
    reports = []
    if args.suite in ("all", "tcv2"):
        for i in range(config.trials):
            reports.extend(run_trial(config, i)[1])
    if args.suite in ("all", "resolutions"):
        reports.extend(verify_ten_cases(trial_rng(args.seed, -1), F))
    if args.suite in ("all", "remarks"):
        reports.extend(verify_remarks(trial_rng(args.seed, -2), F))
    cfg = config.to_json()
    cfg["suite"] = args.suite
    summary = summarize(cfg, reports)
    if args.format == "text":
        for c in summary["checks"]:
            print(f"{c['id']:<24} pass={c['pass']:<5} fail={c['fail']:<3} flag={c['flag']}")
    else:
        print(dumps_summary(summary))
    if summary_failed(summary):
        print(f"verification failed: {len(summary['failures'])} failing checks", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planebundles", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None,
                        help="output format (default: json for verify, text otherwise)")
    common.add_argument("--field", choices=("fp", "q"), default="fp",
                        help="scalar field for generated data (fp modulus from PLANEBUNDLES_PRIME)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology table of a Serre bundle")
    p.add_argument("--scheme", required=True)
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--range", type=_parse_range, default=None, help="twist window a..b (use --range=-4..2)")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("classify", parents=[common], help="Betti numbers and resolution class of I_Z")
    p.add_argument("--scheme", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--suite", choices=("all", "tcv2", "resolutions", "remarks"), default="all")
    p.add_argument("--stable-fraction", type=float, default=0.3)
    p.add_argument("--u-min", type=int, default=1)
    p.add_argument("--u-max", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rr", parents=[common], help="Riemann-Roch Euler characteristic")
    p.add_argument("--space", choices=("p2", "p3"), default="p2")
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_rr)

    p = sub.add_parser("random", parents=[common], help="emit a random scheme file")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--constraint", default="generic",
                   help="generic | on_conic | collinear_subset(k) | with_arc(l)")
    p.set_defaults(func=cmd_random)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.format is None:
        args.format = "json" if args.command == "verify" else "text"
    try:
        return args.func(args)
    except (InvalidBundleData, WindowTooSmall) as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
