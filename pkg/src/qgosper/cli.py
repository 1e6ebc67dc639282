"""Command-line front end.

Exit codes: 0 all checks pass (sweeps: and at most 10% skipped), 1 any
failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import re
import sys

from mpmath import mp

from .errors import AssumptionError, QSeriesError
from .gosperq import (
    theorem1_cases,
    verify_eq_1_2,
    verify_eq_1_3,
    verify_gosper_classical,
    verify_q_limit,
    verify_remark5,
)
from .qcore import EvalConfig, num
from .qpoly import theorem1_violations
from .report import summarize, to_csv, to_json_line
from .suites import SUITES, SweepConfig, run_sweep
from .threeterm import RelationParams, check_assumptions, verify_relation

MAX_SKIP_FRACTION = 0.10

_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?P<re>{_NUMBER})?\s*(?:(?P<im>[+-]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$"
)


class UsageError(Exception):
    pass


def parse_complex(text):
    """Validate a ``re[+im i]`` string and return it in mpmath syntax."""
    m = _COMPLEX_RE.match(text)
    if not m or not text.strip() or (m.group("re") is None and "i" not in text
                                       and "j" not in text):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    re_part = m.group("re")
    im_part = m.group("im")
    if text.strip().endswith(("i", "j")) and im_part is None:
        # bare imaginary like "2i"
        return f"{re_part or '1'}j"
    if im_part is None:
        return re_part
    return f"{re_part or '0'}{im_part.replace(' ', '')}j"


def _positive(text):
    try:
        ok = float(text) > 0
    except ValueError:
        ok = False
    if not ok:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return text


def _range(cast):
    def parse(text):
        try:
            lo, hi = text.split(":")
            return cast(lo), cast(hi)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return parse


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision", type=int, default=32, help="working digits")
    p.add_argument("--tol", type=_positive, default="1e-12", help="pass tolerance")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="qgosper", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-theorem1", parents=[common],
                       help="check both strange-evaluation forms at every root")
    for name in ("q", "a", "c"):
        p.add_argument(f"--{name}", type=parse_complex, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("verify-threeterm", parents=[common],
                       help="check the three-term relation at shift (1, m, m, 0)")
    for name in ("q", "a", "b", "c", "x"):
        p.add_argument(f"--{name}", type=parse_complex, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("verify-remark5", parents=[common],
                       help="check the (1, l, 1, 0) expression at every root")
    for name in ("q", "a", "c"):
        p.add_argument(f"--{name}", type=parse_complex, required=True)
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("sweep", parents=[common], help="seeded randomized sweep")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--m-range", type=_range(int), default=(2, 4))
    p.add_argument("--q-range", type=_range(float), default=(0.05, 0.95))
    p.add_argument("--radius", type=_range(float), default=(0.1, 0.9),
                   help="modulus range for a, b, c")
    p.add_argument("--x-max", type=float, default=0.5)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("gosper-limit", parents=[common],
                       help="q -> 1 study of the q-analogue of the 2F1 identity")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--k-range", type=_range(int), default=(3, 10))
    return parser


def _eval_config(args):
    try:
        return EvalConfig(precision_digits=args.precision)
    except ValueError as exc:
        raise UsageError(str(exc))


def _write(reports, args):
    if args.format == "json":
        text = "".join(to_json_line(r) + "\n" for r in reports)
    else:
        text = to_csv(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(reports, max_skip=None):
    counts = summarize(reports)
    total = sum(counts.values())
    print(f"pass={counts['pass']} skip={counts['skip']} fail={counts['fail']}",
          file=sys.stderr)
    if counts["fail"]:
        return 1
    if max_skip is not None and total and counts["skip"] / total > max_skip:
        return 1
    return 0


def cmd_verify_theorem1(args):
    cfg = _eval_config(args)
    if args.m < 2:
        raise UsageError("m must be >= 2")
    bad = theorem1_violations(args.a, args.c, args.q, args.m, cfg)
    if bad:
        raise UsageError("assumption violated: " + "; ".join(bad))
    reports = []
    for case in theorem1_cases(args.q, args.a, args.c, args.m, cfg):
        reports.append(verify_eq_1_2(case, cfg, args.tol))
        reports.append(verify_eq_1_3(case, cfg, args.tol))
    _write(reports, args)
    return _exit_code(reports)


def cmd_verify_threeterm(args):
    cfg = _eval_config(args)
    if args.m < 2:
        raise UsageError("m must be >= 2")
    p = RelationParams(args.a, args.b, args.c, args.x, args.q)
    with cfg.workdps():
        if num(args.x) == 0:
            raise UsageError("x must be nonzero (x = 0 is a pole of R)")
        if abs(num(args.x)) > cfg.radius_guard:
            raise UsageError(f"|x| must be <= {cfg.radius_guard}")
    bad = check_assumptions(p, cfg=cfg)
    if bad:
        raise UsageError("assumption violated: " + "; ".join(bad))
    reports = [verify_relation(args.m, p, cfg, args.tol)]
    _write(reports, args)
    return _exit_code(reports)


def cmd_verify_remark5(args):
    cfg = _eval_config(args)
    if args.l < 2:
        raise UsageError("l must be >= 2")
    bad = theorem1_violations(args.a, args.c, args.q, args.l, cfg)
    if bad:
        raise UsageError("assumption violated: " + "; ".join(bad))
    reports = [verify_remark5(args.q, args.a, args.c, args.l, case.lam, cfg, args.tol)
               for case in theorem1_cases(args.q, args.a, args.c, args.l, cfg)]
    _write(reports, args)
    return _exit_code(reports)


def cmd_sweep(args):
    try:
        cfg = SweepConfig(
            suite=args.suite, seed=args.seed, cases=args.cases, m_range=args.m_range,
            q_range=args.q_range, radius=args.radius, x_max=args.x_max,
            precision_digits=args.precision, tol=args.tol, jobs=args.jobs,
        )
        cfg.eval_config
    except ValueError as exc:
        raise UsageError(str(exc))
    reports = run_sweep(cfg)
    _write(reports, args)
    return _exit_code(reports, MAX_SKIP_FRACTION)


def cmd_gosper_limit(args):
    cfg = _eval_config(args)
    if float(args.alpha).is_integer():
        raise UsageError("alpha must not be an integer (a/c = q^(alpha-1) ∈ q^Z)")
    k_lo, k_hi = args.k_range
    if not 1 <= k_lo <= k_hi:
        raise UsageError("k range must satisfy 1 <= lo <= hi")
    alpha, beta = repr(args.alpha), repr(args.beta)
    ks = list(range(k_lo, k_hi + 1))
    try:
        classical = verify_gosper_classical(alpha, beta, cfg, args.tol)
        with cfg.workdps():
            qs = [1 - mp.mpf(2) ** -k for k in ks]
            limit = verify_q_limit(alpha, beta, qs, cfg, args.tol)
    except AssumptionError as exc:
        raise UsageError(str(exc))
    reports = [classical] + limit
    _write(reports, args)
    d = 12
    print(f"classical: lhs={mp.nstr(classical.lhs, d)} rhs={mp.nstr(classical.rhs, d)}",
          file=sys.stderr)
    print(f"{'k':>3} {'q':>16} {'lambda_q':>18} {'LHS_q':>18} {'E(q)':>12}", file=sys.stderr)
    errs = []
    for k, q, r in zip(ks, qs, limit):
        e = r.extras.get("E")
        errs.append(e)
        lhs = mp.nstr(r.lhs, d) if r.lhs is not None else "skipped"
        print(f"{k:>3} {mp.nstr(q, 12):>16} {mp.nstr(r.lam, d):>18} {lhs:>18} "
              f"{mp.nstr(e, 4) if e is not None else '-':>12}", file=sys.stderr)
    code = _exit_code(reports)
    tail = [e for k, e in zip(ks, errs) if k >= 4]
    decreasing = all(e is not None for e in tail) and all(
        x > y for x, y in zip(tail, tail[1:]))
    if not decreasing:
        print("E(q) is not strictly decreasing for k >= 4", file=sys.stderr)
        code = max(code, 1)
    return code


COMMANDS = {
    "verify-theorem1": cmd_verify_theorem1,
    "verify-threeterm": cmd_verify_threeterm,
    "verify-remark5": cmd_verify_remark5,
    "sweep": cmd_sweep,
    "gosper-limit": cmd_gosper_limit,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssumptionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QSeriesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
