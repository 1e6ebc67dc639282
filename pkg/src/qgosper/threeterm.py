"""
Coefficients of the three-term relation

    2phi1(aq^k, bq^l; cq^m; xq^n) = Q * 2phi1(aq, bq; cq; x) + R * 2phi1(a, b; c; x)

Q is available for ``k <= l`` and ``0 <= m <= k+l+n`` as a sum of products of
two 2phi1 series; R only for the shift ``(1, m, m, 0)``.  ``b = 1`` is a
legal input: the ``(1 - b)`` factor then removes the second product of Q.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

from mpmath import mp

from .errors import AssumptionError, PoleError
from .qcore import (
    EvalConfig,
    QBase,
    SeriesSpec,
    _base,
    _cfg,
    nearest_power,
    num,
    phi21_continued_sum,
    phi_eval,
    qpoch_finite,
)
from .qpoly import Poly, _delta_coeff
from .report import make_report

__all__ = [
    "ShiftVector",
    "RelationParams",
    "QTerms",
    "check_assumptions",
    "q_terms",
    "coeff_Q",
    "coeff_R",
    "lemma3_poly",
    "verify_relation",
]


@dataclass(frozen=True)
class ShiftVector:
    k: int
    l: int
    m: int
    n: int

    @property
    def q_admissible(self):
        return self.k <= self.l and 0 <= self.m <= self.k + self.l + self.n

    def as_tuple(self):
        return (self.k, self.l, self.m, self.n)


@dataclass(frozen=True)
class RelationParams:
    a: object
    b: object
    c: object
    x: object
    base: object

    def values(self):
        """``(a, b, c, x, q)`` as mpmath numbers in the current context."""
        return num(self.a), num(self.b), num(self.c), num(self.x), _base(self.base)


def check_assumptions(p: RelationParams, K_max=60, cfg=None):
    """Violations of ``a, b, c, a/b, c/a, c/b not in q^Z or 0``.

    ``b = 1`` (and therefore ``a/b = a``, ``c/b = c``) is allowed.
    """
    cfg = _cfg(cfg)
    out = []
    with cfg.workdps():
        a, b, c, _, q = p.values()
        delta = cfg.delta_param
        dstr = mp.nstr(delta, 3)
        b_is_one = abs(b - 1) <= delta
        quantities = [("a", a), ("b", b), ("c", c)]
        quantities += [("a/b", a / b if b else None), ("c/a", c / a if a else None),
                       ("c/b", c / b if b else None)]
        for name, v in quantities:
            if name == "b" and b_is_one:
                continue
            if v is None or abs(v) <= delta:
                out.append(f"{name} within {dstr} of 0")
                continue
            j = nearest_power(v, q, delta, K_max)
            if j is not None:
                out.append(f"{name} within {dstr} of q^{j}")
    return out


class QTerms(NamedTuple):
    """Pieces of Q: ``Q = outer * (first_coeff * first_series - second)``."""

    outer: object
    first_coeff: object
    first_series: object
    second: object
    methods: tuple
    terms: int

    @property
    def value(self):
        return self.outer * (self.first_coeff * self.first_series - self.second)

    @property
    def lemma3_prefactor(self):
        return self.outer * self.first_coeff


def _shift(shift):
    return shift if isinstance(shift, ShiftVector) else ShiftVector(*shift)


def q_terms(shift, p: RelationParams, cfg=None) -> QTerms:
    cfg = _cfg(cfg)
    shift = _shift(shift)
    if not shift.q_admissible:
        raise ValueError(
            f"Q is only available for k <= l and 0 <= m <= k+l+n, got {shift.as_tuple()}"
        )
    k, l, m, n = shift.as_tuple()
    if n < 0:
        warnings.warn(f"shift {shift.as_tuple()} has n < 0; Q there is unverified",
                      stacklevel=2)
    with cfg.workdps():
        a, b, c, x, q = p.values()
        if x == 0 and m != 1:
            raise PoleError("x = 0 is a pole of x^(1-m)")

        def P(v, i):
            return qpoch_finite(v, q, i, cfg)

        outer = -(1 - a) * c / ((q - c) * (1 - c))
        outer *= P(x, n) * x ** (1 - m) / P(a * b * q * x / c, k + l - m + n - 1)
        first_coeff = (
            P(a * q / c, k - m) * P(b * q / c, l - m) * P(c, m)
            / (P(q**2 / c, -m) * P(a, k) * P(b * q, l - 1))
            * (c * q ** (m - 1)) ** (-n)
        )
        z = a * b * q ** (k + l - m + n) * x / c
        s1, m1, t1 = phi21_continued_sum(q ** (1 - k) / a, q ** (1 - l) / b,
                                         q ** (2 - m) / c, q, z, cfg)
        s2, m2, t2 = phi21_continued_sum(a, b, c, q, x, cfg)
        methods = [m1, m2]
        terms = t1 + t2
        if b == 1:
            second = mp.mpf(0)
        else:
            s3, m3, t3 = phi21_continued_sum(c * q ** (m - k) / a, c * q ** (m - l) / b,
                                             c * q**m, q, z, cfg)
            s4, m4, t4 = phi21_continued_sum(a * q / c, b * q / c, q**2 / c, q, x, cfg)
            second = (1 - b) * x**m * s3 * s4
            methods += [m3, m4]
            terms += t3 + t4
        return QTerms(outer, first_coeff, s1 * s2, second, tuple(methods), terms)


def coeff_Q(shift, p: RelationParams, cfg=None):
    """Coefficient Q of the three-term relation for a Q-admissible shift."""
    cfg = _cfg(cfg)
    with cfg.workdps():
        return q_terms(shift, p, cfg).value


def lemma3_poly(shift, a, c, base, cfg=None) -> Poly:
    """2phi1(q^{1-k}/a, q^{1-l}; q^{2-m}/c; q, a q^{k+l-m+n} x / c) as a Poly in x.

    With ``b = 1`` this is the only x-dependent series left in Q, so Q
    vanishes at its roots.
    """
    cfg = _cfg(cfg)
    k, l, m, n = _shift(shift).as_tuple()
    with cfg.workdps():
        a, c = num(a), num(c)
        q = _base(base)
        A, B, C = q ** (1 - k) / a, q ** (1 - l), q ** (2 - m) / c
        z = a * q ** (k + l - m + n) / c
        coeffs = [mp.mpf(1)]
        qj = mp.mpf(1)
        for _ in range(l - 1):
            coeffs.append(coeffs[-1] * (1 - A * qj) * (1 - B * qj)
                          / ((1 - q * qj) * (1 - C * qj)) * z)
            qj *= q
        return Poly(tuple(coeffs), _delta_coeff(cfg))


def coeff_R(m, p: RelationParams, cfg=None):
    """Coefficient R of the three-term relation at shift ``(1, m, m, 0)``."""
    cfg = _cfg(cfg)
    m = int(m)
    if m < 2:
        raise ValueError("coeff_R needs m >= 2")
    with cfg.workdps():
        a, b, c, x, q = p.values()
        if x == 0:
            raise PoleError("x = 0 is a pole of x^(1-m)")
        qb = QBase(q)

        def P(v, i):
            return qpoch_finite(v, q, i, cfg)

        den = P(a * q ** (2 - m) / c, m - 1) * P(b * q, m - 1)
        if den == 0:
            raise PoleError("R prefactor denominator vanishes")
        pre = P(q ** (1 - m) / c, m) * P(c * q, m - 2) / den * c * q ** (m - 1)
        pre *= x ** (1 - m)
        total = mp.mpf(0)
        for j in range(m - 1):
            t = (P(1 / a, j) * P(q ** (1 - m) / b, j) / (P(q, j) * P(q ** (2 - m) / c, j))
                 * (a * b * q * x / c) ** j)
            inner = phi_eval(
                SeriesSpec(
                    (q ** (-j), c * q ** (m - j - 1), a * q, b * q),
                    (c * q, a * q ** (1 - j), b * q ** (m - j)),
                    qb,
                    q,
                ),
                cfg,
            )
            total += t * inner
        return pre * total


def verify_relation(m, p: RelationParams, cfg=None, tol=None, **report_kw):
    """Check ``2phi1(aq, bq^m; cq^m; x) = Q 2phi1(aq, bq; cq; x) + R 2phi1(a, b; c; x)``.

    The residual is taken relative to the largest of the three magnitudes
    ``|lhs|, |Q mid|, |R low|``.
    """
    cfg = _cfg(cfg)
    m = int(m)
    if m < 2:
        raise ValueError("verify_relation needs m >= 2")
    bad = check_assumptions(p, cfg=cfg)
    if bad:
        raise AssumptionError(bad)
    with cfg.workdps():
        a, b, c, x, q = p.values()
        if x == 0:
            raise PoleError("x = 0 is a pole of R")
        if abs(x) > cfg.radius_guard:
            raise ValueError("verify_relation needs |x| <= radius_guard")
        tol = cfg.default_verify_tol if tol is None else mp.mpf(tol)
        lhs, ml, tl = phi21_continued_sum(a * q, b * q**m, c * q**m, q, x, cfg)
        mid, mm, tm = phi21_continued_sum(a * q, b * q, c * q, q, x, cfg)
        low, mlow, tlow = phi21_continued_sum(a, b, c, q, x, cfg)
        qt = q_terms((1, m, m, 0), p, cfg)
        Q = qt.value
        R = coeff_R(m, p, cfg)
        rhs = Q * mid + R * low
        scale = max(abs(lhs), abs(Q * mid), abs(R * low))
        routes = (ml, mm, mlow) + qt.methods
        method = "heine" if any(r != "direct" for r in routes) else "direct"
        extras = dict(report_kw.pop("extras", {}) or {})
        extras["Q"] = Q
        extras["R"] = R
        if b == 1:
            extras["branch"] = "b=1 (second Q product vanishes)"
        return make_report(
            "three-term(1,m,m,0)",
            {"q": q, "a": a, "b": b, "c": c, "x": x, "m": m},
            lhs, rhs, tol, method, tl + tm + tlow + qt.terms,
            cfg.precision_digits, scale=scale, shift=(1, m, m, 0),
            extras=extras, **report_kw,
        )
