"""
Numerical checks of a strange evaluation of 2phi1 at polynomial roots

    2phi1(a, q^m; c; lam) = lam^(1-m) f(lam)
    2phi1(c/a, c q^-m; c; a q^m lam / c)
        = (lam;q)_inf / (a q^m lam / c;q)_inf * lam^(1-m) f(lam)

for roots ``lam`` of 2phi1(q/a, q^{1-m}; q^2/c; q, a q^m x / c), its m = 2
closed forms, the (1, l, 1, 0) alternative expression, the classical 2F1
identity and the q -> 1 limit connecting the two.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .errors import (
    AssumptionError,
    DivergenceGuard,
    MaxTermsExceeded,
    NotEvaluable,
    PoleError,
)
from .qcore import (
    QBase,
    SeriesSpec,
    _base,
    _cfg,
    nearest_power,
    num,
    phi21_continued_sum,
    phi_sum,
    qpoch_finite,
    qpoch_infinite,
)
from .qpoly import Poly, RootSet, build_f, find_roots, theorem1_poly, theorem1_violations
from .report import VerificationReport, make_report, skipped_report

__all__ = [
    "Theorem1Case",
    "ClassicalParams",
    "theorem1_cases",
    "verify_eq_1_2",
    "verify_eq_1_3",
    "m2_root",
    "m2_value",
    "verify_m2_closed_forms",
    "verify_remark5",
    "classical_2f1",
    "gosper_rhs",
    "verify_gosper_classical",
    "q_limit_params",
    "verify_q_limit",
]


@dataclass(frozen=True)
class Theorem1Case:
    q: object
    a: object
    c: object
    m: int
    lam: object
    f_at_lambda: object
    residual: object = None
    method: str | None = None

    def params(self):
        return {"q": self.q, "a": self.a, "c": self.c, "m": self.m}


def theorem1_cases(q, a, c, m, cfg=None, root_tol=None):
    """One :class:`Theorem1Case` per root of the degree-(m-1) polynomial."""
    cfg = _cfg(cfg)
    with cfg.workdps():
        q, a, c = _base(q), num(a), num(c)
        poly = theorem1_poly(a, c, q, m, cfg)
        if poly.degree < 1:
            return []
        roots = find_roots(poly, root_tol, cfg)
        f = build_f(a, c, q, m, cfg)
        return [
            Theorem1Case(q, a, c, int(m), lam, f(lam), res)
            for lam, res in zip(roots.roots, roots.residuals)
        ]


def _tol(cfg, tol):
    return cfg.default_verify_tol if tol is None else mp.mpf(tol)


def _routes_extra(*routes):
    return {"routes": ",".join(routes)}


def verify_eq_1_2(case: Theorem1Case, cfg=None, tol=None, **kw) -> VerificationReport:
    """``2phi1(a, q^m; c; lam)`` against ``lam^(1-m) f(lam)``."""
    cfg = _cfg(cfg)
    with cfg.workdps():
        tol = _tol(cfg, tol)
        q, a, c, m, lam = case.q, case.a, case.c, case.m, case.lam
        if lam == 0:
            raise PoleError("lambda = 0")
        rhs = lam ** (1 - m) * case.f_at_lambda
        extras = {"root_residual": case.residual} if case.residual is not None else {}
        try:
            lhs, route, terms = phi21_continued_sum(a, q**m, c, q, lam, cfg)
        except NotEvaluable as exc:
            return skipped_report("strange-eval", case.params(), tol,
                                  cfg.precision_digits, exc, rhs=rhs, lam=lam,
                                  extras=extras, **kw)
        extras.update(_routes_extra(route))
        return make_report("strange-eval", case.params(), lhs, rhs, tol, route,
                           terms, cfg.precision_digits, lam=lam, extras=extras, **kw)


def verify_eq_1_3(case: Theorem1Case, cfg=None, tol=None, **kw) -> VerificationReport:
    """Heine-transformed form against the prefactored f value.

    The series is summed directly when its argument is inside
    ``radius_guard`` and continued by one Heine step otherwise.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        tol = _tol(cfg, tol)
        q, a, c, m, lam = case.q, case.a, case.c, case.m, case.lam
        j = nearest_power(lam, q, cfg.delta_param)
        if j is not None and j <= 0:
            raise PoleError(f"lambda = q^{j} zeroes (lambda;q)_inf")
        z = a * q**m * lam / c
        extras = {"root_residual": case.residual} if case.residual is not None else {}
        extras["argument"] = z
        prefactor = qpoch_infinite(lam, q, cfg) / qpoch_infinite(z, q, cfg)
        rhs = prefactor * lam ** (1 - m) * case.f_at_lambda
        extras["prefactor"] = prefactor
        try:
            if abs(z) <= cfg.radius_guard:
                route = "direct"
                lhs, terms = phi_sum(SeriesSpec((c / a, c * q ** (-m)), (c,), QBase(q), z), cfg)
            else:
                lhs, route, terms = phi21_continued_sum(c / a, c * q ** (-m), c, q, z, cfg)
        except NotEvaluable as exc:
            return skipped_report("strange-eval-transformed", case.params(), tol,
                                  cfg.precision_digits, exc, rhs=rhs, lam=lam,
                                  extras=extras, **kw)
        extras.update(_routes_extra(route))
        return make_report("strange-eval-transformed", case.params(), lhs, rhs, tol, route,
                           terms, cfg.precision_digits, lam=lam, extras=extras, **kw)


def m2_root(q, a, c):
    """Closed-form root ``(q^2 - c) / ((q - a) q)`` of the m = 2 polynomial."""
    return (q**2 - c) / ((q - a) * q)


def m2_value(q, a, c):
    """Closed-form value ``(q - a)(q - c) / ((1 - q)(c - a q))``."""
    return (q - a) * (q - c) / ((1 - q) * (c - a * q))


def verify_m2_closed_forms(q, a, c, cfg=None, tol=None, **kw):
    """The two m = 2 closed forms; returns ``(report_1_4, report_1_5)``."""
    cfg = _cfg(cfg)
    bad = theorem1_violations(a, c, q, 2, cfg)
    if bad:
        raise AssumptionError(bad)
    with cfg.workdps():
        tol = _tol(cfg, tol)
        q, a, c = _base(q), num(a), num(c)
        params = {"q": q, "a": a, "c": c, "m": 2}
        lam = m2_root(q, a, c)
        value = m2_value(q, a, c)
        try:
            lhs, route, terms = phi21_continued_sum(a, q**2, c, q, lam, cfg)
            r14 = make_report("m2-value", params, lhs, value, tol, route, terms,
                              cfg.precision_digits, lam=lam,
                              extras=_routes_extra(route), **kw)
        except NotEvaluable as exc:
            r14 = skipped_report("m2-value", params, tol, cfg.precision_digits, exc,
                                 rhs=value, lam=lam, **kw)
        z = (q**2 - c) * a * q / ((q - a) * c)
        if abs(z) > cfg.radius_guard:
            r15 = skipped_report("m2-transformed", params, tol, cfg.precision_digits,
                                 f"|argument| = {mp.nstr(abs(z), 6)} > radius_guard",
                                 lam=lam, extras={"argument": z}, **kw)
        else:
            prefactor = qpoch_infinite(lam, q, cfg) / qpoch_infinite(a * q**2 * lam / c, q, cfg)
            lhs, terms = phi_sum(SeriesSpec((c / a, c * q**-2), (c,), QBase(q), z), cfg)
            r15 = make_report("m2-transformed", params, lhs, prefactor * value, tol, "direct",
                              terms, cfg.precision_digits, lam=lam,
                              extras={"argument": z, "prefactor": prefactor}, **kw)
        return r14, r15


def _phi10(A, q, x, cfg):
    """1phi0(A; -; q, x): series inside ``radius_guard``, product form outside."""
    if abs(x) <= cfg.radius_guard:
        value, terms = phi_sum(SeriesSpec((A,), (), QBase(q), x), cfg)
        return value, "direct", terms
    return qpoch_infinite(A * x, q, cfg) / qpoch_infinite(x, q, cfg), "product", 0


def verify_remark5(q, a, c, l, lam, cfg=None, tol=None, **kw) -> VerificationReport:
    """The (1, l, 1, 0) alternative expression of 2phi1(a, q^l; c; lam).

    ``lam`` must be a root of ``theorem1_poly(a, c, q, l)``.  The subtracted
    product carries that polynomial at ``lam`` as a factor; its magnitude is
    recorded as ``second_term`` together with ``second_term_rel``, the same
    product with the polynomial replaced by its natural size
    ``max|coeff| * max(1, |lam|)^deg``.
    """
    cfg = _cfg(cfg)
    l = int(l)
    if l < 2:
        raise ValueError("l must be >= 2")
    bad = theorem1_violations(a, c, q, l, cfg)
    if bad:
        raise AssumptionError(bad)
    with cfg.workdps():
        tol = _tol(cfg, tol)
        q, a, c, lam = _base(q), num(a), num(c), num(lam)
        params = {"q": q, "a": a, "c": c, "l": l}
        z = a * q**l * lam / c

        def P(v, n):
            return qpoch_finite(v, q, n, cfg)

        try:
            lhs, r0, t0 = phi21_continued_sum(a, q**l, c, q, lam, cfg)
            s1, r1, t1 = phi21_continued_sum(c / a, c * q ** (-l), c, q, z, cfg)
            s10, r2, t2 = _phi10(a * q / c, q, lam, cfg)
            s3, r3, t3 = phi21_continued_sum(q / a, q ** (1 - l), q**2 / c, q, z, cfg)
            s4, r4, t4 = phi21_continued_sum(a, q, c, q, lam, cfg)
        except NotEvaluable as exc:
            return skipped_report("shift-1l10-expression", params, tol, cfg.precision_digits,
                                  exc, shift=(1, l, 1, 0), lam=lam, **kw)
        d = P(a * q * lam / c, l - 1)
        first = s1 * s10 / d
        coef2 = P(q**2 / c, l - 1) / (d * P(q, l - 1))
        second = coef2 * s3 * s4
        rhs = first - second
        poly = theorem1_poly(a, c, q, l, cfg)
        natural = abs(coef2 * s4) * poly.scale * max(1, abs(lam)) ** poly.degree
        routes = (r0, r1, r2, r3, r4)
        method = "direct" if all(r in ("direct", "product") for r in routes) else "heine"
        extras = {
            "second_term": abs(second),
            "second_term_scale": natural,
            "second_term_rel": abs(second) / natural if natural else mp.mpf(0),
            "routes": ",".join(routes),
        }
        return make_report("shift-1l10-expression", params, lhs, rhs, tol, method,
                           t0 + t1 + t2 + t3 + t4, cfg.precision_digits,
                           shift=(1, l, 1, 0), lam=lam, extras=extras, **kw)


@dataclass(frozen=True)
class ClassicalParams:
    """Parameters of 2F1(alpha, beta; gamma; x)."""

    alpha: object
    beta: object
    gamma: object
    x: object

    @classmethod
    def gosper(cls, alpha, beta):
        """The 2F1(1 - alpha, beta; beta + 2; beta / (alpha + beta)) instance."""
        alpha, beta = num(alpha), num(beta)
        if alpha + beta == 0:
            raise AssumptionError("alpha + beta must be nonzero")
        return cls(1 - alpha, beta, beta + 2, beta / (alpha + beta))


def _nonpositive_int(v, delta):
    r = mp.nint(mp.re(v))
    return r <= 0 and abs(v - r) <= delta, int(-r) if r <= 0 else None


def classical_2f1(p: ClassicalParams, cfg=None):
    """Gauss series 2F1 with rising factorials built by the term ratio."""
    return _classical_sum(p, cfg)[0]


def _classical_sum(p, cfg):
    cfg = _cfg(cfg)
    with cfg.workdps():
        al, be, ga, x = num(p.alpha), num(p.beta), num(p.gamma), num(p.x)
        delta = cfg.delta_param
        tops = [n for hit, n in (_nonpositive_int(al, delta), _nonpositive_int(be, delta))
                if hit]
        top = min(tops) if tops else None
        hit, g = _nonpositive_int(ga, delta)
        if hit and (top is None or g < top):
            raise PoleError(f"gamma = {mp.nstr(ga, 8)} is a nonpositive integer")
        if top is None and abs(x) > cfg.radius_guard:
            raise DivergenceGuard(f"|x| = {mp.nstr(abs(x), 6)} exceeds radius_guard")
        tol = cfg.tol
        total = term = mp.mpf(1)
        n = small = 0
        while top is None or n < top:
            if n >= cfg.max_terms:
                raise MaxTermsExceeded(f"2F1 needs more than {cfg.max_terms} terms")
            term *= (al + n) * (be + n) / ((n + 1) * (ga + n)) * x
            total += term
            n += 1
            if top is None:
                small = small + 1 if abs(term) <= tol * abs(total) else 0
                if small == 3:
                    break
        return total, n + 1


def gosper_rhs(alpha, beta):
    """``(beta + 1) (alpha / (alpha + beta))^alpha`` on the principal branch."""
    alpha, beta = num(alpha), num(beta)
    base = alpha / (alpha + beta)
    return (beta + 1) * mp.exp(alpha * mp.log(base))


def verify_gosper_classical(alpha, beta, cfg=None, tol=None, **kw) -> VerificationReport:
    cfg = _cfg(cfg)
    with cfg.workdps():
        tol = _tol(cfg, tol)
        alpha, beta = num(alpha), num(beta)
        p = ClassicalParams.gosper(alpha, beta)
        if not abs(p.x) < 1:
            raise AssumptionError("beta / (alpha + beta) must lie in (-1, 1)")
        if not mp.re(alpha / (alpha + beta)) > 0 or mp.im(alpha / (alpha + beta)) != 0:
            raise AssumptionError("alpha / (alpha + beta) must be positive")
        lhs, terms = _classical_sum(p, cfg)
        rhs = gosper_rhs(alpha, beta)
        return make_report("gosper-classical", {"alpha": alpha, "beta": beta}, lhs, rhs,
                           tol, "direct", terms, cfg.precision_digits, **kw)


def q_limit_params(alpha, beta, q):
    """``(a, c) = (q^(alpha+beta+1), q^(beta+2))``."""
    return q ** (alpha + beta + 1), q ** (beta + 2)


def verify_q_limit(alpha, beta, q_list, cfg=None, tol=None, **kw):
    """Closed form (1.5)-type check along ``q_list`` plus distance to the 2F1 value.

    Each report checks the q-identity at that q; ``extras["E"]`` holds
    ``|LHS_q - G| / |G|`` where G is the classical Gosper value.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        tol = _tol(cfg, tol)
        alpha, beta = num(alpha), num(beta)
        if abs(alpha - mp.nint(alpha)) <= cfg.delta_param:
            raise AssumptionError("alpha must not be an integer (a/c = q^(alpha-1) ∈ q^Z)")
        G = gosper_rhs(alpha, beta)
        out = []
        for i, qv in enumerate(q_list):
            q = num(qv)
            if not 0 < q < 1:
                raise AssumptionError(f"q = {qv} must lie in (0, 1)")
            a, c = q_limit_params(alpha, beta, q)
            _, r15 = verify_m2_closed_forms(q, a, c, cfg, tol, **kw)
            r15.identity = "q-limit"
            r15.params = {"alpha": alpha, "beta": beta, **r15.params}
            if r15.lhs is not None:
                r15.extras["E"] = abs(r15.lhs - G) / abs(G)
            r15.extras["G"] = G
            out.append(r15)
        return out
