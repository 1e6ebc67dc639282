import pytest
from hypothesis import assume, given, settings, strategies as st
from mpmath import mp

from qgosper import (
    AssumptionError,
    EvalConfig,
    RelationParams,
    ShiftVector,
    build_f,
    check_assumptions,
    coeff_Q,
    coeff_R,
    find_roots,
    verify_relation,
)
from qgosper.qpoly import theorem1_violations
from qgosper.threeterm import lemma3_poly, q_terms

CFG = EvalConfig()
Q = st.floats(0.1, 0.85)
PARAM = st.floats(-0.9, 0.9).filter(lambda v: abs(v) > 0.1)
X = st.floats(-0.5, 0.5).filter(lambda v: abs(v) > 0.02)


def test_assumption_messages():
    bad = check_assumptions(RelationParams("0.3", "0.4", "0.25", "0.2", "0.5"))
    assert any(v.startswith("c ") for v in bad)
    assert check_assumptions(RelationParams("0.3", "1", "0.7", "0.2", "0.5")) == []
    with pytest.raises(AssumptionError):
        verify_relation(2, RelationParams("0.3", "0.4", "0.25", "0.2", "0.5"))


def test_shift_admissibility():
    assert ShiftVector(1, 3, 3, 0).q_admissible
    assert not ShiftVector(3, 1, 1, 0).q_admissible
    with pytest.raises(ValueError):
        coeff_Q((3, 1, 1, 0), RelationParams("0.3", "0.4", "0.7", "0.2", "0.5"))


def test_b_equal_one_drops_second_product():
    t = q_terms((1, 3, 3, 0), RelationParams("0.3", "1", "0.7", "0.2", "0.5"))
    assert t.second == 0
    assert len(t.methods) == 2


def test_x_zero_is_a_pole_of_r():
    with pytest.raises(Exception):
        coeff_R(2, RelationParams("0.3", "0.4", "0.7", "0", "0.5"))


@settings(max_examples=25, deadline=None)
@given(q=Q, a=PARAM, b=PARAM, c=PARAM, x=X, m=st.integers(2, 5))
def test_relation_against_mpmath_series(q, a, b, c, x, m):
    p = RelationParams(a, b, c, x, q)
    assume(not check_assumptions(p, cfg=CFG))
    with CFG.workdps():
        q, a, b, c, x = (mp.mpf(v) for v in (q, a, b, c, x))
        lhs = mp.qhyper([a * q, b * q**m], [c * q**m], q, x)
        mid = mp.qhyper([a * q, b * q], [c * q], q, x)
        low = mp.qhyper([a, b], [c], q, x)
        Qv, Rv = coeff_Q((1, m, m, 0), p, CFG), coeff_R(m, p, CFG)
        scale = max(abs(lhs), abs(Qv * mid), abs(Rv * low))
        assert abs(lhs - Qv * mid - Rv * low) <= 1e-20 * scale


@settings(max_examples=15, deadline=None)
@given(q=Q, a=PARAM, b=PARAM, c=PARAM, x=X, m=st.integers(2, 5))
def test_verify_relation_passes(q, a, b, c, x, m):
    p = RelationParams(a, b, c, x, q)
    assume(not check_assumptions(p, cfg=CFG))
    r = verify_relation(m, p, CFG, "1e-12")
    assert r.passed, r


@settings(max_examples=15, deadline=None)
@given(q=Q, a=PARAM, c=PARAM, m=st.integers(2, 5), x=st.floats(-2, 2))
def test_r_matches_f_at_shifted_parameters(q, a, c, m, x):
    assume(abs(x) > 0.05)
    assume(not theorem1_violations(a, c, q, m, CFG))
    with CFG.workdps():
        q, a, c, x = (mp.mpf(v) for v in (q, a, c, x))
        # R needs a/q outside q^Z as well
        assume(not check_assumptions(RelationParams(a / q, 1, c * q**-m, x, q), cfg=CFG))
        R = coeff_R(m, RelationParams(a / q, 1, c * q**-m, x, q), CFG)
        f = build_f(a, c, q, m, CFG)
        ref = x ** (1 - m) * f(x)
        assert abs(R - ref) <= 1e-22 * max(abs(ref), 1e-10)


@pytest.mark.parametrize("shift", [(1, 2, 2, 0), (1, 3, 3, 0), (1, 3, 2, 0), (2, 3, 3, 1)])
def test_q_vanishes_at_inner_roots(shift):
    q, a, c = "0.55", "0.37", "-0.62"
    with CFG.workdps():
        roots = find_roots(lemma3_poly(shift, a, c, q, CFG), cfg=CFG)
        for lam in roots:
            t = q_terms(shift, RelationParams(a, "1", c, lam, q), CFG)
            assert abs(t.value) <= 1e-20 * abs(t.lemma3_prefactor)


def test_negative_n_is_flagged():
    with pytest.warns(UserWarning):
        q_terms((1, 2, 1, -1), RelationParams("0.3", "0.4", "0.7", "0.2", "0.5"))
