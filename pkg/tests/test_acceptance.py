"""Acceptance criteria, one test each, at the stated tolerances."""

import subprocess
import sys
import time

import numpy as np
from mpmath import mp

from qgosper import (
    EvalConfig,
    RelationParams,
    build_f,
    coeff_R,
    find_roots,
    theorem1_cases,
    theorem1_poly,
    verify_eq_1_2,
    verify_eq_1_3,
    verify_gosper_classical,
    verify_m2_closed_forms,
    verify_q_limit,
    verify_relation,
    verify_remark5,
)
from qgosper.qpoly import theorem1_violations
from qgosper.suites import SweepConfig, run_sweep
from qgosper.threeterm import check_assumptions, lemma3_poly, q_terms

CFG32 = EvalConfig(precision_digits=32)
CFG64 = EvalConfig(precision_digits=64)


def _signed(rng, lo=0.1, hi=0.9):
    v = rng.uniform(lo, hi)
    return f"{-v if rng.random() < 0.5 else v:.12f}"


def _q(rng, lo=0.05, hi=0.95):
    return f"{rng.uniform(lo, hi):.12f}"


def _draw_qac(rng, m, cfg):
    while True:
        q, a, c = _q(rng), _signed(rng), _signed(rng)
        if not theorem1_violations(a, c, q, m, cfg):
            return q, a, c


def _m2_draws():
    rng = np.random.default_rng(101)
    return [_draw_qac(rng, 2, CFG32) for _ in range(200)]


def _relative(r):
    return r.abs_err / abs(r.rhs) if r.rhs else r.abs_err


def test_criterion_01_m2_value(record):
    t0 = time.perf_counter()
    reports = [verify_m2_closed_forms(q, a, c, CFG32, "1e-12")[0] for q, a, c in _m2_draws()]
    elapsed = time.perf_counter() - t0
    done = [r for r in reports if not r.skipped]
    worst = max(_relative(r) for r in done)
    skips = len(reports) - len(done)
    ok = worst <= 1e-12 and skips <= 0.10 * len(reports) and elapsed < 10
    record(1, ok, f"m=2 value form: 200 draws, max rel err {mp.nstr(worst, 3)}, "
                  f"skipped {skips}, {elapsed:.1f} s")
    assert ok


def test_criterion_02_m2_transformed(record):
    reports = [verify_m2_closed_forms(q, a, c, CFG32, "1e-12")[1] for q, a, c in _m2_draws()]
    done = [r for r in reports if not r.skipped]
    worst = max(_relative(r) for r in done)
    r14, r15 = verify_m2_closed_forms("0.5", "0.9", "0.35", CFG32, "1e-12")
    with CFG32.workdps():
        worked = abs(r14.rhs - mp.mpf("1.2")) <= 1e-12 and abs(r14.lhs - mp.mpf("1.2")) <= 1e-12
    ok = worst <= 1e-12 and worked and r15.passed
    record(2, ok, f"m=2 transformed form: {len(done)}/200 inside the disc, max rel err "
                  f"{mp.nstr(worst, 3)}; (0.5, 0.9, 0.35) gives {mp.nstr(r14.lhs, 15)}")
    assert ok


def test_criterion_03_general_m(record):
    rng = np.random.default_rng(303)
    t0 = time.perf_counter()
    worst_err = worst_res = mp.mpf(0)
    bad = roots = 0
    for m in range(2, 7):
        for _ in range(20):
            q, a, c = _draw_qac(rng, m, CFG64)
            for case in theorem1_cases(q, a, c, m, CFG64):
                roots += 1
                worst_res = max(worst_res, case.residual)
                for r in (verify_eq_1_2(case, CFG64, "1e-10"), verify_eq_1_3(case, CFG64, "1e-10")):
                    if r.skipped:
                        bad += 1
                        continue
                    err = _relative(r)
                    worst_err = max(worst_err, err)
                    bad += err > 1e-10
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and worst_res <= 1e-20 and elapsed < 60
    record(3, ok, f"general m=2..6 at 64 digits: {roots} roots, {bad} not passing, max rel err "
                  f"{mp.nstr(worst_err, 3)}, max root residual {mp.nstr(worst_res, 3)}, "
                  f"{elapsed:.1f} s")
    assert ok


def test_criterion_04_three_term(record):
    rng = np.random.default_rng(404)
    worst = mp.mpf(0)
    n = 0
    for m in range(2, 6):
        count = 0
        while count < 15:
            p = RelationParams(_signed(rng), _signed(rng), _signed(rng),
                               _signed(rng, 0.01, 0.5), _q(rng))
            if check_assumptions(p, cfg=CFG32):
                continue
            r = verify_relation(m, p, CFG32, "1e-10")
            worst = max(worst, r.rel_err)
            count += 1
            n += 1
    ok = worst <= 1e-10
    record(4, ok, f"three-term relation m=2..5: {n} draws, max residual {mp.nstr(worst, 3)}")
    assert ok


def test_criterion_05_q_vanishes(record):
    rng = np.random.default_rng(505)
    worst = mp.mpf(0)
    roots = 0
    for shift in [(1, 2, 2, 0), (1, 3, 3, 0), (1, 3, 2, 0), (2, 3, 3, 1)]:
        for _ in range(5):
            q, a, c = _draw_qac(rng, 3, CFG32)
            with CFG32.workdps():
                for lam in find_roots(lemma3_poly(shift, a, c, q, CFG32), cfg=CFG32):
                    t = q_terms(shift, RelationParams(a, "1", c, lam, q), CFG32)
                    worst = max(worst, abs(t.value) / abs(t.lemma3_prefactor))
                    roots += 1
    ok = worst <= 1e-8
    record(5, ok, f"Q vanishes with b=1 at inner roots: {roots} roots over 4 shifts, "
                  f"max |Q|/prefactor {mp.nstr(worst, 3)}")
    assert ok


def test_criterion_06_r_equals_f(record):
    rng = np.random.default_rng(606)
    worst = mp.mpf(0)
    n = 0
    for m in range(2, 6):
        for _ in range(10):
            q, a, c = _draw_qac(rng, m, CFG32)
            with CFG32.workdps():
                qv, av, cv = mp.mpf(q), mp.mpf(a), mp.mpf(c)
                f = build_f(a, c, q, m, CFG32)
                for lam in find_roots(theorem1_poly(a, c, q, m, CFG32), cfg=CFG32):
                    R = coeff_R(m, RelationParams(av / qv, 1, cv * qv**-m, lam, qv), CFG32)
                    ref = lam ** (1 - m) * f(lam)
                    worst = max(worst, abs(R - ref) / abs(ref))
                    n += 1
    ok = worst <= 1e-10
    record(6, ok, f"R at (a/q, 1, c q^-m) equals lam^(1-m) f(lam): {n} roots, "
                  f"max rel err {mp.nstr(worst, 3)}")
    assert ok


def test_criterion_07_shifted_expression(record):
    rng = np.random.default_rng(707)
    worst = worst_second = mp.mpf(0)
    bad = n = 0
    for l in range(2, 6):
        for _ in range(10):
            q, a, c = _draw_qac(rng, l, CFG32)
            for case in theorem1_cases(q, a, c, l, CFG32):
                r = verify_remark5(q, a, c, l, case.lam, CFG32, "1e-10")
                n += 1
                if not r.passed:
                    bad += 1
                    continue
                worst = max(worst, r.rel_err)
                worst_second = max(worst_second, r.extras["second_term_rel"])
    ok = bad == 0 and worst_second <= 1e-15
    record(7, ok, f"(1, l, 1, 0) expression l=2..5: {n} roots, {bad} not passing, max rel err "
                  f"{mp.nstr(worst, 3)}, max second term / scale {mp.nstr(worst_second, 3)}")
    assert ok


def test_criterion_08_property_suites(record):
    out = {}
    for suite in ("qbinomial", "heine"):
        reps = run_sweep(SweepConfig(suite=suite, seed=808, cases=500, tol="1e-12"))
        out[suite] = (sum(r.passed for r in reps), len(reps), max(r.rel_err for r in reps))
    ok = all(p == n for p, n, _ in out.values())
    record(8, ok, "; ".join(f"{s}: {p}/{n} pass, max rel err {mp.nstr(e, 3)}"
                            for s, (p, n, e) in out.items()))
    assert ok


def test_criterion_09_classical(record):
    reps = [verify_gosper_classical(al, be, CFG32, "1e-10")
            for al in ("0.3", "1.5", "2.7") for be in ("0.4", "0.8", "1.9")]
    trivial = verify_gosper_classical("1", "0.8", CFG32, "1e-10")
    spot = verify_gosper_classical("1.5", "0.8", CFG32, "1e-10")
    worst = max(r.rel_err for r in reps)
    ok = all(r.passed for r in reps) and worst <= 1e-10 and trivial.passed \
        and abs(spot.lhs - mp.mpf("0.94800")) <= 5e-5
    record(9, ok, f"classical 2F1 grid: 9 points, max rel err {mp.nstr(worst, 3)}; "
                  f"alpha=1 gives {mp.nstr(trivial.lhs, 5)}; (1.5, 0.8) -> {mp.nstr(spot.lhs, 8)}")
    assert ok


def test_criterion_10_q_limit(record):
    t0 = time.perf_counter()
    with CFG32.workdps():
        qs = [1 - mp.mpf(2) ** -k for k in range(3, 11)]
    reps = verify_q_limit("1.5", "0.8", qs, CFG32, "1e-12")
    elapsed = time.perf_counter() - t0
    E = {k: r.extras["E"] for k, r in zip(range(3, 11), reps)}
    tail = [E[k] for k in range(4, 11)]
    decreasing = all(x > y for x, y in zip(tail, tail[1:]))
    ok = decreasing and E[10] < E[4] / 20 and elapsed < 10
    record(10, ok, f"q -> 1: E(q_4) = {mp.nstr(E[4], 3)}, E(q_10) = {mp.nstr(E[10], 3)}, "
                   f"strictly decreasing for k >= 4: {decreasing}, {elapsed:.1f} s")
    assert ok


def test_criterion_11_degree(record):
    rng = np.random.default_rng(1111)
    wrong = 0
    for m in range(2, 7):
        count = 0
        while count < 20:
            q, a, c = _draw_qac(rng, m, CFG32)
            with CFG32.workdps():
                if min(abs(mp.mpf(a) - mp.mpf(q) ** j) for j in range(1, m)) < 0.05:
                    continue
            wrong += theorem1_poly(a, c, q, m, CFG32).degree != m - 1
            count += 1
    with CFG32.workdps():
        dropped = theorem1_poly(mp.mpf("0.5") ** 2, "0.3", "0.5", 4, CFG32).degree
    ok = wrong == 0 and dropped < 3
    record(11, ok, f"degree m-1 for 100 generic draws ({wrong} wrong); "
                   f"a = q^2, m = 4 gives degree {dropped}")
    assert ok


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "qgosper", *args], capture_output=True)


def test_criterion_12_cli(record):
    sweep = ["sweep", "--suite", "theorem1", "--cases", "100", "--seed", "42"]
    first, second = _cli(*sweep), _cli(*sweep)
    same = first.stdout == second.stdout and len(first.stdout) > 0
    base = ["verify-theorem1", "--q", "0.5", "--a", "0.9", "--c", "0.35", "--m", "2"]
    codes = (_cli(*base).returncode,
             _cli(*base, "--tol", "1e-40").returncode,
             _cli("verify-theorem1", "--q", "0.5", "--a", "0.9", "--c", "0.25", "--m", "2").returncode)
    ok = same and first.returncode == 0 and codes == (0, 1, 2)
    record(12, ok, f"sweep output byte-identical: {same} ({len(first.stdout)} bytes); "
                   f"exit codes pass/forced-fail/invalid = {codes}")
    assert ok
