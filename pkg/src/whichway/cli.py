"""Command-line front end: ``sweep``, ``verify`` and ``inspect``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import correlations as corr
from . import interferometer as mzi
from .qlinalg import DomainError, ValidationError
from .verification import format_report, run_properties

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2
QUANTITIES = ("cc", "qd", "mi", "d")
KINDS = {"entangled": ("entangled",), "dephased": ("dephased",), "both": ("entangled", "dephased")}
CSV_FIELDS = ("V", "quantity", "kind", "method", "value")


class UsageError(Exception):
    pass


def _fmt(x):
    return f"{x + 0.0:.12g}"


def sweep_records(v_start, v_end, steps, kinds, quantities):
    """Analytic and numeric values on an inclusive visibility grid.

    Returns ``(records, max_abs_diff)``. Numeric CC and QD are skipped at
    ``V = 1`` where the measurement family is singular.
    """
    if not (0.0 <= v_start <= v_end <= 1.0):
        raise UsageError("need 0 <= v-start <= v-end <= 1")
    if steps < 2:
        raise UsageError("steps must be at least 2")
    records = []
    max_diff = 0.0
    for v in np.linspace(v_start, v_end, steps):
        v = float(v)
        for kind_name in kinds:
            kind = corr.JointStateKind(corr.StateKind(kind_name), v)
            rho = corr.build_joint_state(kind)
            numeric_cc = _once(lambda: corr.classical_correlations(rho, v).cc)
            for q in quantities:
                analytic, numeric = _quantity(q, kind, rho, v, numeric_cc)
                records.append({"V": v, "quantity": q, "kind": kind_name, "method": "analytic", "value": analytic})
                if numeric is not None:
                    records.append({"V": v, "quantity": q, "kind": kind_name, "method": "numeric", "value": numeric})
                    max_diff = max(max_diff, abs(numeric - analytic))
    return records, max_diff


def _once(fn):
    cache = []

    def wrapper():
        if not cache:
            cache.append(fn())
        return cache[0]

    return wrapper


def _quantity(q, kind, rho, v, numeric_cc):
    entangled = kind.kind is corr.StateKind.ENTANGLED
    singular = v >= 1.0

    if q == "cc":
        analytic = corr.cc_pure_analytic(v) if entangled else corr.cc_dephased_analytic(v)
        return analytic, None if singular else numeric_cc()
    if q == "qd":
        analytic = corr.qd_pure_analytic(v) if entangled else corr.qd_dephased_analytic(v)
        if singular:
            return analytic, None
        qd = corr.mutual_information(rho) - numeric_cc()
        return analytic, 0.0 if -corr.DISCORD_CLAMP <= qd < 0.0 else qd
    if q == "mi":
        return corr.mi_analytic(kind), corr.mutual_information(rho)
    if q == "d":
        d = mzi.distinguishability(mzi.BlochVector(0.0, 0.0, 1.0), mzi.DetectorModel(v))
        return math.sqrt(1.0 - v * v), d
    raise UsageError(f"unknown quantity {q!r}")


def render_csv(records, max_diff):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in records:
        writer.writerow([_fmt(r["V"]), r["quantity"], r["kind"], r["method"], _fmt(r["value"])])
    buf.write(f"# max_abs_diff={_fmt(max_diff)}\n")
    return buf.getvalue()


def render_json(records):
    rows = [{**r, "V": float(_fmt(r["V"])), "value": float(_fmt(r["value"]))} for r in records]
    return json.dumps(rows, indent=1) + "\n"


def cmd_sweep(args):
    quantities = QUANTITIES if args.quantity == "all" else (args.quantity,)
    try:
        records, max_diff = sweep_records(args.v_start, args.v_end, args.steps, KINDS[args.kind], quantities)
    except UsageError as exc:
        args.parser.error(str(exc))
    text = render_csv(records, max_diff) if args.format == "csv" else render_json(records)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if args.format == "json":
        print(f"# max_abs_diff={_fmt(max_diff)}", file=sys.stderr)
    if args.verify and max_diff > args.tolerance:
        print(f"verification failed: max |analytic - numeric| = {max_diff:.3e} > {args.tolerance:g}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args):
    if not args.tolerance > 0:
        args.parser.error("tolerance must be positive")
    if args.trials < 1:
        args.parser.error("trials must be positive")
    if args.seed < 0:
        args.parser.error("seed must be non-negative")
    results = run_properties(args.tolerance, args.trials, args.seed)
    print(format_report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_inspect(args):
    try:
        bloch = mzi.BlochVector(*args.bloch)
        det = mzi.DetectorModel(complex(args.overlap_re, args.overlap_im))
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = mzi.Configuration(bloch, det, args.phi)
    report = mzi.duality_check(bloch, det)
    lines = [
        ("V", mzi.fringe_visibility(bloch, det)),
        ("D", mzi.distinguishability(bloch, det)),
        ("P", bloch.predictability),
        ("V0", bloch.a_priori_visibility),
        ("P_a", mzi.output_probability(cfg)),
        ("duality_lhs", report.lhs),
        ("duality_holds", report.holds),
        ("preparation_lhs", report.preparation_lhs),
        ("preparation_holds", report.preparation_holds),
    ]
    for key, value in lines:
        if value is None:
            text = "undefined"
        elif isinstance(value, bool):
            text = str(value).lower()
        else:
            text = _fmt(value)
        print(f"{key}={text}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="whichway", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="tabulate correlations against fringe visibility")
    p.add_argument("--v-start", type=float, default=0.0)
    p.add_argument("--v-end", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--kind", choices=sorted(KINDS), default="both")
    p.add_argument("--quantity", choices=QUANTITIES + ("all",), default="all")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--verify", action="store_true", help="exit 1 if analytic and numeric rows disagree")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.set_defaults(func=cmd_sweep, parser=p)

    p = sub.add_parser("verify", help="run the randomized property suite")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify, parser=p)

    p = sub.add_parser("inspect", help="duality quantities for one configuration")
    p.add_argument("--bloch", type=float, nargs=3, metavar=("SX", "SY", "SZ"), required=True)
    p.add_argument("--overlap-re", type=float, required=True)
    p.add_argument("--overlap-im", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.set_defaults(func=cmd_inspect, parser=p)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
