"""
Polynomials from terminating 2phi1 series, their roots, and the f polynomial
appearing on the right-hand side of the strange evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp

from .errors import AssumptionError, NoConvergence, PoleError
from .qcore import (
    EvalConfig,
    QBase,
    SeriesSpec,
    _base,
    _cfg,
    nearest_power,
    num,
    phi_eval,
    qpoch_finite,
)

__all__ = [
    "Poly",
    "RootSet",
    "theorem1_violations",
    "theorem1_poly",
    "find_roots",
    "build_f",
]

# irrational start angle for the simultaneous iteration
_START_ANGLE = 0.4


@dataclass(frozen=True)
class Poly:
    """Dense polynomial; ``coeffs[j]`` multiplies ``x**j``.

    Trailing coefficients below ``delta_coeff * max|coeff|`` are trimmed on
    construction.
    """

    coeffs: tuple
    delta_coeff: object = None

    def __post_init__(self):
        coeffs = list(self.coeffs)
        if not coeffs:
            raise ValueError("Poly needs at least one coefficient")
        scale = max(abs(c) for c in coeffs)
        if self.delta_coeff is not None and scale > 0:
            while len(coeffs) > 1 and abs(coeffs[-1]) <= self.delta_coeff * scale:
                coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = mp.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        d = [j * c for j, c in enumerate(self.coeffs)][1:] or [mp.mpf(0)]
        return Poly(tuple(d))

    @property
    def scale(self):
        return max(abs(c) for c in self.coeffs)


@dataclass(frozen=True)
class RootSet:
    roots: list
    residuals: list
    poly: Poly
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def _delta_coeff(cfg):
    return mp.mpf(10) ** (-(cfg.precision_digits - 6))


def theorem1_violations(a, c, base, m=None, cfg=None, k_max=60):
    """List the violated hypotheses of the strange evaluation (empty if none).

    Checks ``a != 0``, ``c, a/c`` not in ``q^Z`` or zero, and ``m >= 2``.
    """
    cfg = _cfg(cfg)
    out = []
    if m is not None and int(m) < 2:
        out.append("m must be >= 2")
    with cfg.workdps():
        a, c = num(a), num(c)
        q = _base(base)
        delta = cfg.delta_param
        dstr = mp.nstr(delta, 3)
        if a == 0:
            out.append("a must be nonzero")
        for name, v in (("c", c), ("a/c", a / c if c != 0 else mp.mpf(0))):
            if abs(v) <= delta:
                out.append(f"{name} ∈ q^Z ∪ {{0}} ({name} within {dstr} of 0)")
                continue
            j = nearest_power(v, q, delta, k_max)
            if j is not None:
                out.append(f"{name} ∈ q^Z ({name} within {dstr} of q^{j})")
    return out


def theorem1_poly(a, c, base, m, cfg=None):
    """The terminating 2phi1(q/a, q^{1-m}; q^2/c; q, a q^m x / c) as a Poly in x.

    Coefficients follow the term-ratio recurrence; the constant term is 1.
    """
    cfg = _cfg(cfg)
    m = int(m)
    bad = theorem1_violations(a, c, base, m, cfg)
    if bad:
        raise AssumptionError(bad)
    with cfg.workdps():
        a, c = num(a), num(c)
        q = _base(base)
        A, B, C = q / a, q ** (1 - m), q**2 / c
        z = a * q**m / c
        coeffs = [mp.mpf(1)]
        qj = mp.mpf(1)
        for _ in range(m - 1):
            den = (1 - qj * q) * (1 - C * qj)
            if den == 0:
                raise PoleError("q^2/c lies on a pole")
            coeffs.append(coeffs[-1] * (1 - A * qj) * (1 - B * qj) / den * z)
            qj *= q
        return Poly(tuple(coeffs), _delta_coeff(cfg))


def find_roots(p: Poly, root_tol=None, cfg=None, max_iters=500):
    """All roots of ``p`` by Weierstrass (Durand-Kerner) simultaneous iteration.

    Starting points sit on the circle of radius ``|c_0/c_deg|^(1/deg)`` about
    the root centroid, rotated by a fixed angle.  Iteration stops once every update is below
    ``root_tol`` (relative to ``max(1, |root|)``); each root then gets one
    Newton polish.  Roots are sorted by (real, imag).
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        if root_tol is None:
            root_tol = mp.mpf(10) ** (-mp.mpf(cfg.precision_digits) / 2)
        root_tol = mp.mpf(root_tol)
        deg = p.degree
        if deg < 1:
            raise ValueError("find_roots needs a polynomial of degree >= 1")
        lead = p.coeffs[-1]
        monic = [c / lead for c in p.coeffs]
        if deg == 1:
            z = [-monic[0]]
            iterations = 0
        else:
            radius = abs(monic[0]) ** (mp.mpf(1) / deg)
            if radius == 0:
                radius = mp.mpf(1)
            # centred on the root centroid so real polynomials cannot lock
            # the iterates into conjugate pairs
            centre = -monic[-2] / deg
            z = [
                centre + radius * mp.expj(2 * mp.pi * k / deg + _START_ANGLE)
                for k in range(deg)
            ]
            mono = Poly(tuple(monic))
            for iterations in range(1, max_iters + 1):
                worst = mp.mpf(0)
                new = []
                for i, zi in enumerate(z):
                    denom = mp.mpf(1)
                    for j, zj in enumerate(z):
                        if j != i:
                            denom *= zi - zj
                    if denom == 0:
                        denom = root_tol
                    step = mono(zi) / denom
                    new.append(zi - step)
                    worst = max(worst, abs(step) / max(1, abs(zi)))
                z = new
                if worst < root_tol:
                    break
            else:
                res = [abs(p(r)) / _residual_scale(p, r) for r in z]
                raise NoConvergence(
                    f"root iteration did not converge in {max_iters} steps", res
                )
        dp = p.derivative()
        polished = []
        for r in z:
            d = dp(r)
            if d != 0:
                r = r - p(r) / d
            if isinstance(r, mp.mpc) and abs(r.imag) <= root_tol**2 * max(1, abs(r)):
                r = mp.mpf(r.real)
            polished.append(r)
        polished.sort(key=lambda r: (mp.re(r), mp.im(r)))
        residuals = [abs(p(r)) / _residual_scale(p, r) for r in polished]
        return RootSet(polished, residuals, p, iterations)


def _residual_scale(p, r):
    return p.scale * max(1, abs(r)) ** p.degree


def build_f(a, c, base, m, cfg=None):
    """The polynomial f of degree <= m-2 paired with each root.

    f(x) = -((q/c;q)_{m-1} (cq^{-m};q)_{m-1} / ((aq/c;q)_{m-1} (q;q)_{m-1})) q^{m-1}
           * sum_j t_j (a q^m x / c)^j * 4phi3(q^{-j}, q, a, c q^{-j-1};
                                              q^{m-j}, a q^{-j}, c q^{1-m}; q, q)

    where t_j is the j-th coefficient ratio of :func:`theorem1_poly`.
    """
    cfg = _cfg(cfg)
    m = int(m)
    bad = theorem1_violations(a, c, base, m, cfg)
    if bad:
        raise AssumptionError(bad)
    with cfg.workdps():
        a, c = num(a), num(c)
        q = _base(base)
        qb = QBase(q)

        def P(x, n):
            return qpoch_finite(x, q, n, cfg)

        den = P(a * q / c, m - 1) * P(q, m - 1)
        if den == 0:
            raise PoleError("a q / c lies on a pole")
        lead = -P(q / c, m - 1) * P(c * q ** (-m), m - 1) / den * q ** (m - 1)
        coeffs = []
        for j in range(m - 1):
            t = (
                P(q / a, j) * P(q ** (1 - m), j) / (P(q, j) * P(q**2 / c, j))
                * (a * q**m / c) ** j
            )
            inner = phi_eval(
                SeriesSpec(
                    (q ** (-j), q, a, c * q ** (-j - 1)),
                    (q ** (m - j), a * q ** (-j), c * q ** (1 - m)),
                    qb,
                    q,
                ),
                cfg,
            )
            coeffs.append(lead * t * inner)
        return Poly(tuple(coeffs), _delta_coeff(cfg))
