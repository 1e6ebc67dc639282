import pytest
from hypothesis import assume, given, settings, strategies as st
from mpmath import mp

from qgosper import (
    DivergenceGuard,
    EvalConfig,
    NotEvaluable,
    PoleError,
    QBase,
    SeriesSpec,
    connection_terms,
    heine_first_form,
    heine_transform,
    phi21_continued,
    phi_eval,
    phi_sum,
    qpoch_finite,
    qpoch_infinite,
)
from qgosper.qcore import nearest_power

CFG = EvalConfig()
Q = st.floats(0.05, 0.9)
SMALL = st.floats(-0.9, 0.9).filter(lambda v: abs(v) > 0.05)


def close(x, y, tol=1e-25):
    return abs(x - y) <= tol * max(1, abs(y))


def test_finite_pochhammer_values():
    with CFG.workdps():
        assert close(qpoch_finite("0.5", "0.5", 2), mp.mpf("0.375"))
        assert close(qpoch_finite("0.25", "0.5", -1), 2)
        assert qpoch_finite("0.3", "0.5", 0) == 1


def test_euler_function_at_half():
    with CFG.workdps():
        ref = mp.qp(mp.mpf("0.5"), mp.mpf("0.5"))
        assert close(qpoch_infinite("0.5", "0.5"), ref, 1e-27)
        assert abs(ref - mp.mpf("0.2887880951")) < 1e-10


def test_negative_index_pole():
    with pytest.raises(PoleError):
        qpoch_finite("0.25", "0.5", -2)


def test_bad_base():
    with pytest.raises(ValueError):
        QBase("1.0")
    with pytest.raises(ValueError):
        QBase(0)


def test_tail_tol_floor():
    with pytest.raises(ValueError):
        EvalConfig(precision_digits=32, tail_tol=1e-40)


def test_terminating_sum():
    # 2phi1(q^-1, q^2; q^3; q, 1/2) at q = 1/2 has two terms:
    # 1 + (1 - 2)(1 - 1/4) / ((1 - 1/2)(1 - 1/8)) * 1/2 = 1/7
    with CFG.workdps():
        v, terms = phi_sum(SeriesSpec(("2", "0.25"), ("0.125",), "0.5", "0.5"))
        assert terms == 2
        assert close(v, mp.mpf(1) / 7)


def test_heine_argument():
    with CFG.workdps():
        _, spec = heine_transform("0.5", "0.25", "0.125", "0.5", "0.6")
        assert close(mp.mpf(spec.argument), mp.mpf("0.6"))
        _, spec = heine_transform("0.5", "0.9", "0.35", "0.5", "0.25")
        assert close(mp.mpf(spec.argument), mp.mpf(9) / 28)


def test_divergence_guard():
    with pytest.raises(DivergenceGuard):
        phi_sum(SeriesSpec(("0.3", "0.4"), ("0.7",), "0.5", "0.99"))


def test_denominator_pole():
    with pytest.raises(PoleError):
        phi_sum(SeriesSpec(("0.3", "0.4"), ("4",), "0.5", "0.3"))


def test_routes():
    with CFG.workdps():
        assert phi21_continued("0.3", "0.4", "0.7", "0.5", "0.5")[1] == "direct"
        v, route = phi21_continued("0.5", "0.25", "0.9", "0.5", "1.5")
        assert route == "heine"
        with pytest.raises(NotEvaluable):
            phi21_continued("0.5", "0.25", "0.9", "0.5", "1.5",
                            EvalConfig(continuation_policy="direct-only"))


def test_heine_b_route_against_direct():
    # both routes agree where the direct series also converges
    cfg = EvalConfig(radius_guard=0.95)
    with cfg.workdps():
        direct, _ = phi_sum(SeriesSpec(("0.6", "0.3"), ("-0.4",), "0.7", "0.9"), cfg)
        pre, spec = heine_first_form("0.6", "0.3", "-0.4", "0.7", "0.9", cfg)
        assert close(pre * phi_eval(spec, cfg), direct)


@settings(max_examples=40, deadline=None)
@given(q=Q, a=SMALL, n=st.integers(0, 12), k=st.integers(0, 12))
def test_pochhammer_splitting(q, a, n, k):
    with CFG.workdps():
        lhs = qpoch_finite(a, q, n + k)
        rhs = qpoch_finite(a, q, n) * qpoch_finite(a * mp.mpf(q) ** n, q, k)
        assert close(lhs, rhs)


@settings(max_examples=40, deadline=None)
@given(q=Q, a=SMALL, n=st.integers(1, 15))
def test_pochhammer_against_mpmath(q, a, n):
    with CFG.workdps():
        assert close(qpoch_finite(a, q, n), mp.qp(a, q, n))
        assert close(qpoch_infinite(a, q), mp.qp(a, q), 1e-26)


@settings(max_examples=30, deadline=None)
@given(q=Q, a=SMALL, b=SMALL, c=SMALL, x=SMALL)
def test_symmetric_in_numerators(q, a, b, c, x):
    with CFG.workdps():
        u = phi_eval(SeriesSpec((a, b), (c,), q, x))
        v = phi_eval(SeriesSpec((b, a), (c,), q, x))
        assert close(u, v)


@settings(max_examples=30, deadline=None)
@given(q=Q, a=SMALL, z=SMALL)
def test_q_binomial(q, a, z):
    with CFG.workdps():
        lhs = phi_eval(SeriesSpec((a,), (), q, z)) * qpoch_infinite(z, q)
        assert close(lhs, qpoch_infinite(mp.mpf(a) * z, q), 1e-24)


@settings(max_examples=30, deadline=None)
@given(q=Q, a=SMALL, b=SMALL, c=SMALL, x=st.floats(-0.5, 0.5).filter(lambda v: abs(v) > 0.01))
def test_heine_against_mpmath(q, a, b, c, x):
    with CFG.workdps():
        ref = mp.qhyper([a, b], [c], q, x)
        pre, spec = heine_transform(a, b, c, q, x)
        if abs(mp.mpf(spec.argument)) < 0.9:
            assert close(pre * phi_eval(spec), ref, 1e-22)
        assert close(phi_eval(SeriesSpec((a, b), (c,), q, x)), ref, 1e-22)


@settings(max_examples=20, deadline=None)
@given(q=Q, a=SMALL, b=SMALL, c=SMALL, x=st.floats(-0.5, 0.5).filter(lambda v: abs(v) > 0.01))
def test_heine_involution(q, a, b, c, x):
    with CFG.workdps():
        pre, spec = heine_transform(a, b, c, q, x)
        a2, b2 = spec.numerators
        (c2,) = spec.denominators
        pre2, spec2 = heine_transform(a2, b2, c2, q, spec.argument)
        assert close(pre * pre2, 1)
        assert close(mp.mpf(spec2.argument), mp.mpf(x))


@settings(max_examples=15, deadline=None)
@given(q=Q, b=SMALL, c=SMALL, x=SMALL, n=st.integers(0, 6))
def test_terminating_independent_of_tail_tol(q, b, c, x, n):
    loose = EvalConfig(tail_tol=1e-10)
    with CFG.workdps():
        a = mp.mpf(q) ** (-n)
        u = phi_sum(SeriesSpec((a, b), (c,), q, x), CFG)
        v = phi_sum(SeriesSpec((a, b), (c,), q, x), loose)
        assert u.terms == v.terms == n + 1
        assert u.value == v.value


@settings(max_examples=25, deadline=None)
@given(q=Q, a=SMALL, b=SMALL, c=SMALL, r=st.floats(1.5, 8), t=st.floats(0, 6.28))
def test_connection_route_matches_heine_first_form(q, a, b, c, r, t):
    with CFG.workdps():
        x = mp.mpf(r) * mp.expj(t)
        assume(nearest_power(mp.mpf(a) / b, mp.mpf(q), CFG.delta_param) is None)
        assume(abs(mp.mpf(c) * q / (mp.mpf(a) * b * x)) < 0.9)
        parts = connection_terms(a, b, c, q, x)
        value = sum(pre * phi_eval(spec) for pre, spec in parts)
        pre, spec = heine_first_form(a, b, c, q, x)
        ref = pre * phi_eval(spec)
        assert abs(value - ref) <= 1e-20 * max(abs(ref), abs(parts[0][0]), abs(parts[1][0]))


def test_connection_route_is_chosen():
    with CFG.workdps():
        # both numerators large, |x| and |abx/c| outside the disc
        v, route = phi21_continued("1.3", "2.5", "0.7", "0.6", "4.1")
        assert route == "connection"
        assert phi21_continued("1.3", "2.5", "0.7", "0.6", "0.2")[1] == "direct"
