"""Command line: ``recordlaws {extract,law,simulate,verify,table}``.

Exit codes: 0 success, 1 verification failure, 2 bad flags or inputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import laws
from .acceptance import SUITES, run_suite, suite_summary, suite_table_rows
from .dist import parse_distribution
from .errors import RecordLawsError
from .extract import extract_all
from .io import read_sequence, records_to_csv, records_to_json
from .mc.estimators import proportion_report
from .mc.simulate import McConfig, simulate_record_batch
from .order import OrderedSpace, RecordKind

DIST_HELP = """\
distribution, as JSON or shorthand:
  exp:THETA            exponential with rate THETA
  unif:A,B             uniform on [A, B]
  geom:P               geometric on 1, 2, ... with success probability P
  dunif:M              uniform on {1, ..., M}
  finite:X1,X2@P1,P2   finite support with the given masses
numbers may be written as fractions (geom:1/3) to keep discrete laws exact.
JSON examples: {"dist":"exponential","theta":1.0}, {"dist":"finite","support":[1,2],"probs":[0.4,0.6]}
"""


class UsageError(Exception):
    pass


def _ints(values) -> list[int]:
    out = []
    for v in values or []:
        for part in str(v).split(","):
            if part.strip():
                try:
                    out.append(int(part))
                except ValueError:
                    raise UsageError(f"expected integers, got {part!r}") from None
    return out


def _floats(values) -> list[float]:
    out = []
    for v in values or []:
        for part in str(v).split(","):
            if part.strip():
                try:
                    out.append(float(Fraction(part.strip())) if "/" in part else float(part))
                except ValueError:
                    raise UsageError(f"expected numbers, got {part!r}") from None
    return out


def _count(text: str) -> int:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v != int(v) or v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(v)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _jsonable(v):
    if isinstance(v, Fraction):
        return float(v)
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    raise TypeError(f"not JSON serializable: {v!r}")


# -- subcommands ---------------------------------------------------------------


def cmd_extract(args) -> int:
    source = sys.stdin if args.input in (None, "-") else args.input
    rows, dim = read_sequence(source, args.input_format)
    space = OrderedSpace(dim)
    rs = extract_all(rows, RecordKind.parse(args.kind), space)
    _emit(records_to_csv(rs) if args.format == "csv" else records_to_json(rs), args.output)
    return 0


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) in (None, [])]
    if missing:
        raise UsageError(f"formula {args.formula} needs {' '.join(missing)}")


def _evaluate_formula(args) -> dict:
    fid = args.formula
    if fid not in laws.FORMULAS:
        raise UsageError(f"unknown formula {fid!r}; see --list")
    spec = laws.FORMULAS[fid]
    d = None
    if spec.needs_dist:
        if args.dist is None:
            raise UsageError(f"formula {fid} needs --dist")
        d = parse_distribution(args.dist)
    inputs: dict = {}
    truncation = None
    if fid == "interRecords":
        _need(args, "k")
        inputs["k"] = _ints(args.k)
        res = laws.interrecord_joint_pmf(inputs["k"])
    elif fid == "lawRtimes":
        _need(args, "ell")
        inputs["ell"] = _ints(args.ell)
        res = laws.record_times_joint_pmf(inputs["ell"])
    elif fid == "lrecMarkov":
        _need(args, "k", "j")
        ks = _ints(args.k)
        if len(ks) != 1:
            raise UsageError("lrecMarkov takes a single --k")
        inputs.update(k=ks[0], j=args.j)
        res = laws.record_time_transition_pmf(ks[0], args.j)
    elif fid == "gamma":
        _need(args, "k")
        inputs["k"] = _ints(args.k)
        g = laws.gamma_integral(inputs["k"])
        res = laws.LawValue(float(g), "gamma", True, g)
    elif fid in ("ADR3", "DDR3"):
        _need(args, "n", "x")
        inputs.update(n=args.n, x=_number_for(d, args.x))
        fn = laws.record_value_marginal_pdf if fid == "ADR3" else laws.discrete_record_pmf
        res = fn(d, args.n, inputs["x"])
    elif fid in ("ADR1", "DDR2", "PEX1"):
        _need(args, "y")
        ys = [_number_for(d, v) for v in _raw_list(args.y)]
        inputs["y"] = ys
        fn = {"ADR1": laws.record_value_joint_pdf, "DDR2": laws.discrete_record_joint_pmf,
              "PEX1": laws.joint_max_cdf}[fid]
        res = fn(d, ys)
    elif fid == "ADR2":
        _need(args, "idx", "y")
        inputs.update(idx=_ints(args.idx), y=_floats(args.y))
        res = laws.record_value_subvector_pdf(d, inputs["idx"], inputs["y"])
    elif fid == "GRDMR":
        _need(args, "y", "horizon")
        inputs.update(y=_floats(args.y), horizon=args.horizon)
        res, truncation = laws.record_joint_cdf_truncated(d, inputs["y"], args.horizon)
    elif fid == "nrec03":
        res = laws.prob_no_further_record(d)
    elif fid == "gs.21":
        _need(args, "n", "x")
        inputs.update(n=args.n, z=args.z, y=float(args.x))
        v = laws.hazard_simplex_integral(d, args.n, args.z, float(args.x))
        res = laws.LawValue(v, "gs.21", True, None)
    else:  # pragma: no cover - registry and dispatch are kept in sync by tests
        raise UsageError(f"no dispatcher for {fid}")
    out = {"formula": fid, "inputs": inputs, "value": res.value, "support": res.support_flag}
    if d is not None:
        out["dist"] = d.to_dict()
    if res.exact is not None:
        out["exact"] = str(Fraction(res.exact))
    if truncation is not None:
        out["truncation_mass"] = truncation
    return out


def _raw_list(values) -> list[str]:
    return [p.strip() for v in values for p in str(v).split(",") if p.strip()]


def _number_for(d, text):
    """Keep discrete inputs exact (ints / fractions); continuous ones become floats."""
    text = str(text).strip()
    if d is not None and d.is_discrete:
        try:
            return int(text)
        except ValueError:
            return Fraction(text)
    return float(Fraction(text)) if "/" in text else float(text)


def cmd_law(args) -> int:
    if args.list:
        lines = [f"{f.formula_id:<13} {f.summary}" for f in laws.FORMULAS.values()]
        _emit("\n".join(lines), args.output)
        return 0
    if not args.formula:
        raise UsageError("law needs --formula or --list")
    _emit(json.dumps(_evaluate_formula(args), sort_keys=True, default=_jsonable), args.output)
    return 0


def cmd_simulate(args) -> int:
    d = parse_distribution(args.dist)
    n = args.n or 2
    kind = RecordKind.parse(args.kind)
    cfg = McConfig(args.trials, args.horizon, args.seed, target_records=n, workers=args.workers)
    batch = simulate_record_batch(d, n, cfg, kind)
    if args.k:
        ks = _ints(args.k)
        if len(ks) != n - 1:
            raise UsageError(f"--k needs n-1 = {n - 1} gaps")
        hit = np.all(batch.deltas == np.asarray(ks)[None, :], axis=1) & batch.decided
        event = {"gaps": ks}
    elif args.x is not None:
        x = float(args.x)
        hit = batch.decided & (batch.values[:, -1] <= x)
        event = {"record_value_at_most": x, "n": n}
    else:
        hit = batch.decided
        event = {"nth_record_within_horizon": n}
    rep = proportion_report(hit, args.seed, batch.truncation_mass)
    out = {"event": event, "dist": d.to_dict(), "kind": kind.value, "report": rep.to_dict()}
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "n", "t", "value"])
        for i in range(batch.trials):
            for m in range(n):
                if batch.times[i, m]:
                    w.writerow([i, m + 1, int(batch.times[i, m]), repr(float(batch.values[i, m]))])
        _emit(buf.getvalue(), args.output)
    else:
        _emit(json.dumps(out, sort_keys=True, default=_jsonable), args.output)
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.seed, args.only)
    summary = suite_summary(results, args.suite, args.seed)
    _emit(json.dumps(summary, sort_keys=True, indent=2), args.output)
    if args.verbose:
        for r in results:
            print(r.line(), file=sys.stderr)
    return 0 if summary["pass"] else 1


def cmd_table(args) -> int:
    results = run_suite(args.suite, args.seed, args.only)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(suite_table_rows(results))
    _emit(buf.getvalue(), args.output)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="recordlaws",
        description="Record values and record times: extraction, closed-form laws, simulation and verification.",
        epilog=DIST_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in RecordKind]

    e = sub.add_parser("extract", help="extract records from a sequence file (CSV or JSON)")
    e.add_argument("--input", help="path, or - for stdin")
    e.add_argument("--input-format", choices=["csv", "json"])
    e.add_argument("--kind", default="strong-upper", choices=kinds)
    e.add_argument("--format", default="json", choices=["json", "csv"])
    e.add_argument("--output")
    e.set_defaults(func=cmd_extract)

    law = sub.add_parser("law", help="evaluate a closed-form law", epilog=DIST_HELP,
                         formatter_class=argparse.RawDescriptionHelpFormatter)
    law.add_argument("--list", action="store_true", help="list formula ids")
    law.add_argument("--formula")
    law.add_argument("--dist")
    law.add_argument("--n", type=int)
    law.add_argument("--k", nargs="+", help="gaps, exponents, or the current record time")
    law.add_argument("--j", type=int, help="next record time (lrecMarkov)")
    law.add_argument("--ell", nargs="+", help="record times l_2 < ... < l_n")
    law.add_argument("--idx", nargs="+", help="record ordinals n_1 < ... < n_k")
    law.add_argument("--x", help="point of evaluation")
    law.add_argument("--y", nargs="+", help="vector of values or thresholds")
    law.add_argument("--z", type=float, help="lower bound (gs.21); default lep")
    law.add_argument("--horizon", type=int)
    law.add_argument("--output")
    law.set_defaults(func=cmd_law)

    s = sub.add_parser("simulate", help="Monte-Carlo estimate from simulated iid streams", epilog=DIST_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("--dist", required=True)
    s.add_argument("--kind", default="strong-upper", choices=kinds)
    s.add_argument("--n", type=int, help="records to wait for (default 2)")
    s.add_argument("--k", nargs="+", help="estimate P(gaps = k_2..k_n)")
    s.add_argument("--x", help="estimate P(X^(n) <= x)")
    s.add_argument("--trials", type=_count, default=10_000)
    s.add_argument("--horizon", type=_count, default=10_000)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--format", default="json", choices=["json", "csv"])
    s.add_argument("--output")
    s.set_defaults(func=cmd_simulate)

    for name, fn, helptext in (("verify", cmd_verify, "run the acceptance suite; exit 1 on any failure"),
                               ("table", cmd_table, "acceptance checks as CSV")):
        v = sub.add_parser(name, help=helptext)
        v.add_argument("--suite", default="core", choices=sorted(SUITES))
        v.add_argument("--seed", type=int, required=True)
        v.add_argument("--only", type=int, nargs="+", help="criterion numbers")
        v.add_argument("--output")
        if name == "verify":
            v.add_argument("--verbose", action="store_true", help="one status line per criterion on stderr")
        v.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RecordLawsError, ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"recordlaws {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
