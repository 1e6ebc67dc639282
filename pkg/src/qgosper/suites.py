"""
Seeded randomized sweeps.

Each case draws its parameters from ``numpy.random.default_rng([seed, index])``
so a case depends only on (seed, index) and the sweep can be run in any
order or in parallel worker processes.  Drawn values are rounded to 12
decimals and passed on as decimal strings.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from mpmath import mp

from .errors import QSeriesError
from .gosperq import theorem1_cases, verify_eq_1_2, verify_eq_1_3, verify_remark5
from .qcore import EvalConfig, QBase, SeriesSpec, heine_transform, num, phi_sum, qpoch_infinite
from .qpoly import theorem1_violations
from .report import VerificationReport, make_report
from .threeterm import RelationParams, check_assumptions, verify_relation

SUITES = ("theorem1", "threeterm", "remark5", "heine", "qbinomial")

_MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class SweepConfig:
    suite: str
    seed: int
    cases: int = 100
    m_range: tuple = (2, 4)
    q_range: tuple = (0.05, 0.95)
    radius: tuple = (0.1, 0.9)
    x_max: float = 0.5
    z_max: float = 0.9
    precision_digits: int = 32
    tol: object = "1e-12"
    jobs: int = 1

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {SUITES}")
        if self.cases < 0:
            raise ValueError("cases must be >= 0")
        lo, hi = self.m_range
        if not 2 <= lo <= hi:
            raise ValueError("m range must satisfy 2 <= lo <= hi")
        lo, hi = self.q_range
        if not 0 < lo <= hi < 1:
            raise ValueError("q range must lie inside (0, 1)")
        lo, hi = self.radius
        if not 0 < lo <= hi:
            raise ValueError("radius range must satisfy 0 < lo <= hi")
        if not 0 < self.x_max < 1 or not 0 < self.z_max < 1:
            raise ValueError("x and z bounds must lie in (0, 1)")

    @property
    def eval_config(self):
        return EvalConfig(precision_digits=self.precision_digits)


def _dec(v):
    s = f"{v:.12f}".rstrip("0")
    return s + "0" if s.endswith(".") else s


class _Draw:
    def __init__(self, cfg: SweepConfig, index: int):
        self.rng = np.random.default_rng([cfg.seed, index])
        self.cfg = cfg

    def q(self):
        return _dec(self.rng.uniform(*self.cfg.q_range))

    def signed(self, lo, hi):
        v = self.rng.uniform(lo, hi)
        return _dec(-v if self.rng.random() < 0.5 else v)

    def param(self):
        return self.signed(*self.cfg.radius)

    def m(self):
        lo, hi = self.cfg.m_range
        return int(self.rng.integers(lo, hi + 1))


def _error_report(suite, params, exc, cfg, **kw):
    return VerificationReport(
        identity=suite, params=params, lhs=None, rhs=None, abs_err=None,
        rel_err=None, tol=mp.mpf(cfg.tol), method="direct", terms_used=0,
        precision_digits=cfg.precision_digits, passed=False,
        extras={"error": f"{type(exc).__name__}: {exc}"}, **kw,
    )


def _case_theorem1(d: _Draw, ecfg, tol, kw):
    for _ in range(_MAX_REJECTIONS):
        m, q, a, c = d.m(), d.q(), d.param(), d.param()
        if not theorem1_violations(a, c, q, m, ecfg):
            break
    params = {"q": q, "a": a, "c": c, "m": m}
    try:
        out = []
        for case in theorem1_cases(q, a, c, m, ecfg):
            out.append(verify_eq_1_2(case, ecfg, tol, **kw))
            out.append(verify_eq_1_3(case, ecfg, tol, **kw))
        return out
    except QSeriesError as exc:
        return [_error_report("theorem1", params, exc, d.cfg, **kw)]


def _case_remark5(d: _Draw, ecfg, tol, kw):
    for _ in range(_MAX_REJECTIONS):
        l, q, a, c = d.m(), d.q(), d.param(), d.param()
        if not theorem1_violations(a, c, q, l, ecfg):
            break
    params = {"q": q, "a": a, "c": c, "l": l}
    try:
        return [verify_remark5(q, a, c, l, case.lam, ecfg, tol, **kw)
                for case in theorem1_cases(q, a, c, l, ecfg)]
    except QSeriesError as exc:
        return [_error_report("remark5", params, exc, d.cfg, **kw)]


def _case_threeterm(d: _Draw, ecfg, tol, kw):
    for _ in range(_MAX_REJECTIONS):
        m, q = d.m(), d.q()
        a, b, c = d.param(), d.param(), d.param()
        x = d.signed(0.01, d.cfg.x_max)
        p = RelationParams(a, b, c, x, q)
        if not check_assumptions(p, cfg=ecfg):
            break
    try:
        return [verify_relation(m, p, ecfg, tol, **kw)]
    except QSeriesError as exc:
        params = {"q": q, "a": a, "b": b, "c": c, "x": x, "m": m}
        return [_error_report("threeterm", params, exc, d.cfg, **kw)]


def _case_heine(d: _Draw, ecfg, tol, kw):
    zmax = d.cfg.z_max
    with ecfg.workdps():
        for _ in range(_MAX_REJECTIONS):
            q, a, b, c = d.q(), d.param(), d.param(), d.param()
            x = d.signed(0.0, zmax)
            if not check_assumptions(RelationParams(a, b, c, x, q), cfg=ecfg) and \
                    abs(num(a) * num(b) * num(x) / num(c)) < zmax:
                break
        params = {"q": q, "a": a, "b": b, "c": c, "x": x}
        try:
            lhs, t1 = phi_sum(SeriesSpec((a, b), (c,), q, x), ecfg)
            pre, spec = heine_transform(a, b, c, q, x, ecfg)
            rhs, t2 = phi_sum(spec, ecfg)
            return [make_report("heine", params, lhs, pre * rhs, tol, "direct", t1 + t2,
                                ecfg.precision_digits, scale=abs(pre * rhs), **kw)]
        except QSeriesError as exc:
            return [_error_report("heine", params, exc, d.cfg, **kw)]


def _case_qbinomial(d: _Draw, ecfg, tol, kw):
    q, a = d.q(), d.param()
    z = d.signed(0.0, d.cfg.z_max)
    params = {"q": q, "a": a, "z": z}
    with ecfg.workdps():
        try:
            s, terms = phi_sum(SeriesSpec((a,), (), q, z), ecfg)
            lhs = s * qpoch_infinite(z, q, ecfg)
            rhs = qpoch_infinite(num(a) * num(z), q, ecfg)
            return [make_report("q-binomial", params, lhs, rhs, tol, "direct", terms,
                                ecfg.precision_digits, scale=abs(rhs), **kw)]
        except QSeriesError as exc:
            return [_error_report("qbinomial", params, exc, d.cfg, **kw)]


_RUNNERS = {
    "theorem1": _case_theorem1,
    "remark5": _case_remark5,
    "threeterm": _case_threeterm,
    "heine": _case_heine,
    "qbinomial": _case_qbinomial,
}


def run_case(cfg: SweepConfig, index: int):
    """All reports of case ``index`` (deterministic in ``(cfg, index)``)."""
    ecfg = cfg.eval_config
    kw = {"case_index": index, "seed": cfg.seed}
    return _RUNNERS[cfg.suite](_Draw(cfg, index), ecfg, cfg.tol, kw)


def _run_case_args(args):
    return run_case(*args)


def run_sweep(cfg: SweepConfig):
    """Reports for every case, in case-index order."""
    args = [(cfg, i) for i in range(cfg.cases)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_run_case_args, args, chunksize=4))
    else:
        chunks = [run_case(*a) for a in args]
    return [r for chunk in chunks for r in chunk]
