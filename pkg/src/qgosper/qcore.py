"""
Configurable-precision q-Pochhammer symbols and basic hypergeometric series.

All numbers are mpmath values (``mpf`` or ``mpc``).  Every public function
runs under ``mp.workdps(cfg.precision_digits)``, and string inputs are parsed
inside that context so decimal parameters such as ``"0.9"`` are exact to the
working precision.

The Heine transformations in this module are used as one-step analytic
continuations of 2phi1 when the argument lies outside ``radius_guard``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

from mpmath import mp

from .errors import DivergenceGuard, MaxTermsExceeded, NotEvaluable, PoleError

__all__ = [
    "EvalConfig",
    "QBase",
    "SeriesSpec",
    "SeriesValue",
    "num",
    "nearest_power",
    "qpoch_finite",
    "qpoch_infinite",
    "phi_eval",
    "phi_sum",
    "heine_transform",
    "heine_first_form",
    "connection_terms",
    "phi21_continued",
    "phi21_route",
]

POLICIES = ("direct-only", "heine-allowed")


@dataclass(frozen=True)
class EvalConfig:
    """Numerical knobs shared by every evaluator.

    ``tail_tol`` defaults to ``10**-(precision_digits - 4)``, the smallest
    value allowed.
    """

    precision_digits: int = 32
    tail_tol: float | None = None
    max_terms: int = 200_000
    continuation_policy: str = "heine-allowed"
    radius_guard: float = 0.95

    def __post_init__(self):
        if self.precision_digits < 16:
            raise ValueError("precision_digits must be >= 16")
        floor = 10.0 ** -(self.precision_digits - 4)
        if self.tail_tol is None:
            object.__setattr__(self, "tail_tol", floor)
        elif not self.tail_tol > 0 or self.tail_tol < floor * (1 - 1e-9):
            raise ValueError(
                f"tail_tol must be >= 1e-{self.precision_digits - 4} "
                f"at {self.precision_digits} digits"
            )
        if self.continuation_policy not in POLICIES:
            raise ValueError(f"continuation_policy must be one of {POLICIES}")
        if not 0 < self.radius_guard <= 1:
            raise ValueError("radius_guard must lie in (0, 1]")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")

    def workdps(self):
        return mp.workdps(self.precision_digits)

    @property
    def delta_param(self):
        """Pole-proximity tolerance, ``10**-(precision_digits/2)``."""
        return mp.mpf(10) ** (-mp.mpf(self.precision_digits) / 2)

    @property
    def tol(self):
        return mp.mpf(self.tail_tol)

    @property
    def default_verify_tol(self):
        return mp.mpf(10) ** (-(mp.mpf(self.precision_digits) / 2 - 4))


def _cfg(cfg):
    return EvalConfig() if cfg is None else cfg


def num(x):
    """Convert ``x`` to an mpmath number at the current working precision."""
    if isinstance(x, QBase):
        x = x.q
    if isinstance(x, str):
        return mp.mpmathify(x.replace("i", "j").replace(" ", ""))
    return mp.mpmathify(x)


@dataclass(frozen=True)
class QBase:
    """The base ``q`` of a q-series; requires ``0 < |q| < 1``."""

    q: object

    def __post_init__(self):
        with mp.workdps(40):
            q = num(self.q)
            if q == 0 or abs(q) >= 1:
                raise ValueError(f"base q must satisfy 0 < |q| < 1, got {self.q}")

    @property
    def value(self):
        return num(self.q)


def _base(base):
    """Resolve a QBase or bare number to an mpmath ``q`` (validated)."""
    if not isinstance(base, QBase):
        base = QBase(base)
    return num(base.q)


def nearest_power(x, q, delta, k_max=None):
    """Return ``j`` with ``x`` within ``delta`` of ``q**j``, or None.

    Closeness is measured as ``|x - q**j| <= delta * max(1, |q**j|)`` so the
    test is relative for the large powers ``q**-j``.
    """
    if x == 0:
        return None
    lq = mp.log(abs(q))
    j0 = int(mp.nint(mp.log(abs(x)) / lq))
    for j in (j0, j0 - 1, j0 + 1):
        if k_max is not None and abs(j) > k_max:
            continue
        qj = q**j
        if abs(x - qj) <= delta * max(1, abs(qj)):
            return j
    return None


def qpoch_finite(a, base, n, cfg=None):
    """Finite q-Pochhammer symbol ``(a;q)_n`` for any integer ``n``.

    Negative ``n`` uses ``(a;q)_{-n} = 1 / (a q^{-n}; q)_n``.
    """
    cfg = _cfg(cfg)
    n = int(n)
    with cfg.workdps():
        a = num(a)
        q = _base(base)
        if n >= 0:
            out = mp.mpf(1)
            qj = mp.mpf(1)
            for _ in range(n):
                out *= 1 - a * qj
                qj *= q
            return out
        out = mp.mpf(1)
        delta = cfg.delta_param
        for j in range(1, -n + 1):
            factor = 1 - a * q ** (-j)
            if abs(factor) <= delta:
                raise PoleError(f"(a;q)_{n} has a vanishing factor 1 - a q^-{j}")
            out *= factor
        return 1 / out


def qpoch_infinite(a, base, cfg=None):
    """Infinite product ``(a;q)_inf`` with relative truncation error <= tail_tol.

    Factors with index ``j`` are included while ``|a| |q|^j >= tail_tol (1-|q|)``;
    the omitted tail of ``log`` is then bounded by ``tail_tol``.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        a = num(a)
        q = _base(base)
        if a == 0:
            return mp.mpf(1)
        aq = abs(q)
        threshold = cfg.tol * (1 - aq)
        out = mp.mpf(1)
        term = a
        mag = abs(a)
        j = 0
        while mag >= threshold:
            if j >= cfg.max_terms:
                raise MaxTermsExceeded(
                    f"(a;q)_inf needs more than {cfg.max_terms} factors"
                )
            out *= 1 - term
            term *= q
            mag *= aq
            j += 1
        return out


@dataclass(frozen=True)
class SeriesSpec:
    """An r+1 phi s instance: parameters, base and argument."""

    numerators: Sequence = field(default_factory=tuple)
    denominators: Sequence = field(default_factory=tuple)
    base: object = None
    argument: object = 0

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(self.numerators))
        object.__setattr__(self, "denominators", tuple(self.denominators))
        if not isinstance(self.base, QBase):
            object.__setattr__(self, "base", QBase(self.base))

    def terminating(self, cfg=None):
        """Top index ``N`` if some numerator is ``q**-N`` (N >= 0), else None."""
        cfg = _cfg(cfg)
        with cfg.workdps():
            q = self.base.value
            return _terminating_index([num(a) for a in self.numerators], q, cfg)


def _terminating_index(nums, q, cfg):
    best = None
    delta = cfg.delta_param
    for a in nums:
        j = nearest_power(a, q, delta)
        if j is not None and j <= 0 and (best is None or -j < best):
            best = -j
    return best


class SeriesValue(NamedTuple):
    value: object
    terms: int


def phi_sum(spec: SeriesSpec, cfg=None) -> SeriesValue:
    """Sum ``spec`` and report how many terms were used.

    Terms come from the ratio recurrence.  A terminating series is summed
    exactly over its ``N + 1`` terms; otherwise summation stops after three
    consecutive terms below ``tail_tol * |partial sum|``.

    The sum is accumulated with guard digits.  When the largest term exceeds
    the result by more than the guard allows (cancellation), the sum is
    repeated at a precision raised by the number of digits lost.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        q = spec.base.value
        nums = [num(a) for a in spec.numerators]
        dens = [num(c) for c in spec.denominators]
        x = num(spec.argument)
        delta = cfg.delta_param
        top = _terminating_index(nums, q, cfg)
        for c in dens:
            j = nearest_power(c, q, delta)
            # (c;q)_n vanishes for n > -j when c = q**j, j <= 0
            if j is not None and j <= 0 and (top is None or -j < top):
                raise PoleError(f"denominator parameter {mp.nstr(c, 8)} is q^{j}")
        if top is None and abs(x) > cfg.radius_guard:
            raise DivergenceGuard(
                f"|x| = {mp.nstr(abs(x), 6)} exceeds radius_guard {cfg.radius_guard}"
            )
        dps = cfg.precision_digits + _GUARD_DIGITS
        for _ in range(_MAX_REFINE):
            with mp.workdps(dps):
                total, terms, peak = _ratio_sum(nums, dens, x, q, top, cfg)
                lost = _digits_lost(total, peak)
            if dps - lost >= cfg.precision_digits + 2:
                break
            dps = cfg.precision_digits + int(mp.ceil(lost)) + _GUARD_DIGITS
        return SeriesValue(+total, terms)


_GUARD_DIGITS = 8
_MAX_REFINE = 4


def _digits_lost(total, peak):
    if peak == 0:
        return 0
    if total == 0:
        return mp.inf
    return max(0, mp.log10(peak / abs(total)))


def _ratio_sum(nums, dens, x, q, top, cfg):
    tol = cfg.tol
    total = mp.mpf(1)
    term = mp.mpf(1)
    peak = mp.mpf(1)
    qn = mp.mpf(1)
    small = 0
    n = 0
    while True:
        if top is not None and n == top:
            break
        if top is None and n >= cfg.max_terms:
            raise MaxTermsExceeded(f"series needs more than {cfg.max_terms} terms")
        ratio = x / (1 - qn * q)
        for a in nums:
            ratio *= 1 - a * qn
        for c in dens:
            ratio /= 1 - c * qn
        term *= ratio
        total += term
        mag = abs(term)
        if mag > peak:
            peak = mag
        qn *= q
        n += 1
        if top is None:
            small = small + 1 if mag <= tol * abs(total) else 0
            if small == 3:
                break
    return total, n + 1, peak


def phi_eval(spec: SeriesSpec, cfg=None):
    """Value of the basic hypergeometric series described by ``spec``."""
    return phi_sum(spec, cfg).value


def heine_transform(a, b, c, base, x, cfg=None):
    """Heine's transformation carrying 2phi1 argument ``x`` to ``a b x / c``.

    Returns ``(prefactor, spec)`` with
    ``2phi1(a,b;c;x) = prefactor * phi(spec)``,
    ``prefactor = (abx/c;q)_inf / (x;q)_inf`` and
    ``spec = 2phi1(c/a, c/b; c; abx/c)``.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        a, b, c, x = num(a), num(b), num(c), num(x)
        q = _base(base)
        if a == 0 or b == 0:
            raise PoleError("heine_transform needs a != 0 and b != 0")
        _check_not_pole(c, q, cfg, "c")
        _check_not_pole(x, q, cfg, "x")
        z = a * b * x / c
        prefactor = qpoch_infinite(z, q, cfg) / qpoch_infinite(x, q, cfg)
        return prefactor, SeriesSpec((c / a, c / b), (c,), QBase(q), z)


def heine_first_form(a, b, c, base, x, cfg=None):
    """Heine's transformation that moves ``b`` into the argument slot.

    ``2phi1(a,b;c;x) = (b;q)_inf (ax;q)_inf / ((c;q)_inf (x;q)_inf)
    * 2phi1(c/b, x; ax; b)``; the new series converges for any ``x`` once
    ``|b| < 1``.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        a, b, c, x = num(a), num(b), num(c), num(x)
        q = _base(base)
        if b == 0:
            raise PoleError("heine_first_form needs b != 0")
        _check_not_pole(c, q, cfg, "c")
        _check_not_pole(x, q, cfg, "x")
        prefactor = (
            qpoch_infinite(b, q, cfg)
            * qpoch_infinite(a * x, q, cfg)
            / (qpoch_infinite(c, q, cfg) * qpoch_infinite(x, q, cfg))
        )
        return prefactor, SeriesSpec((c / b, x), (a * x,), QBase(q), b)


def connection_terms(a, b, c, base, x, cfg=None):
    """The two terms of the connection formula for 2phi1 at large ``|x|``.

    ``2phi1(a,b;c;x) = sum over (a,b), (b,a) of
    (b, c/a, ax, q/(ax);q)_inf / (c, b/a, x, q/x;q)_inf
    * 2phi1(a, aq/c; aq/b; cq/(abx))``.

    Returns a list of two ``(prefactor, spec)`` pairs.  Needs ``a/b`` and
    ``x`` outside ``q^Z``.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        a, b, c, x = num(a), num(b), num(c), num(x)
        q = _base(base)
        if a == 0 or b == 0 or x == 0:
            raise PoleError("connection formula needs a, b, x nonzero")
        delta = cfg.delta_param
        if nearest_power(a / b, q, delta) is not None:
            raise PoleError("connection formula needs a/b outside q^Z")
        if nearest_power(x, q, delta) is not None:
            raise PoleError("connection formula needs x outside q^Z")
        _check_not_pole(c, q, cfg, "c")

        def P(v):
            return qpoch_infinite(v, q, cfg)

        w = c * q / (a * b * x)
        theta_x = P(x) * P(q / x)
        out = []
        for u, v in ((a, b), (b, a)):
            pre = P(v) * P(c / u) * P(u * x) * P(q / (u * x)) / (P(c) * P(v / u) * theta_x)
            out.append((pre, SeriesSpec((u, u * q / c), (u * q / v,), QBase(q), w)))
        return out


def _connection_sum(a, b, c, q, x, cfg):
    # the two terms may cancel, so they are formed with guard digits
    wide = replace(cfg, precision_digits=cfg.precision_digits + _GUARD_DIGITS,
                   tail_tol=cfg.tail_tol)
    with wide.workdps():
        total = mp.mpf(0)
        terms = 0
        for pre, spec in connection_terms(a, b, c, q, x, wide):
            value, n = phi_sum(spec, wide)
            total += pre * value
            terms += n
    with cfg.workdps():
        return +total, terms


def _check_not_pole(v, q, cfg, name):
    j = nearest_power(v, q, cfg.delta_param)
    if j is not None and j <= 0:
        raise PoleError(f"{name} = q^{j} lies on a pole of (.;q)_inf")


def phi21_route(a, b, c, base, x, cfg=None):
    """Pick the summation route for 2phi1(a, b; c; x).

    Returns ``"direct"``, ``"heine"`` (argument ``abx/c``), ``"heine-b"``
    (Heine's first form, argument ``b``, after swapping so ``|b| <= |a|``)
    or ``"connection"`` (argument ``cq/(abx)``).  Raises NotEvaluable when
    no route applies.
    """
    cfg = _cfg(cfg)
    with cfg.workdps():
        a, b, c, x = num(a), num(b), num(c), num(x)
        q = _base(base)
        rg = cfg.radius_guard
        if abs(x) <= rg or _terminating_index([a, b], q, cfg) is not None:
            return "direct"
        if cfg.continuation_policy == "heine-allowed":
            if abs(a * b * x / c) <= rg:
                return "heine"
            if min(abs(a), abs(b)) <= rg:
                return "heine-b"
            delta = cfg.delta_param
            if (abs(c * q / (a * b * x)) <= rg
                    and nearest_power(a / b, q, delta) is None
                    and nearest_power(x, q, delta) is None):
                return "connection"
        raise NotEvaluable(
            f"2phi1 at |x| = {mp.nstr(abs(x), 6)}, |abx/c| = "
            f"{mp.nstr(abs(a * b * x / c), 6)} is outside every summation route"
        )


def phi21_continued_sum(a, b, c, base, x, cfg=None):
    """Like :func:`phi21_continued` but also returns the number of terms."""
    cfg = _cfg(cfg)
    with cfg.workdps():
        a, b, c, x = num(a), num(b), num(c), num(x)
        q = _base(base)
        route = phi21_route(a, b, c, q, x, cfg)
        if route == "direct":
            value, terms = phi_sum(SeriesSpec((a, b), (c,), QBase(q), x), cfg)
            return value, route, terms
        if route == "connection":
            value, terms = _connection_sum(a, b, c, q, x, cfg)
            return value, route, terms
        if route == "heine":
            pre, spec = heine_transform(a, b, c, q, x, cfg)
        else:
            if abs(b) > abs(a):
                a, b = b, a
            pre, spec = heine_first_form(a, b, c, q, x, cfg)
        value, terms = phi_sum(spec, cfg)
        return pre * value, route, terms


def phi21_continued(a, b, c, base, x, cfg=None):
    """Evaluate 2phi1(a, b; c; x), continuing analytically if needed.

    Returns ``(value, method)`` with method one of the routes of
    :func:`phi21_route`.
    """
    value, method, _ = phi21_continued_sum(a, b, c, base, x, cfg)
    return value, method
