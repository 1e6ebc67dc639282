"""Verification reports and their JSON-lines / CSV serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from mpmath import mp

__all__ = [
    "VerificationReport",
    "make_report",
    "skipped_report",
    "fmt_num",
    "report_to_dict",
    "to_json_line",
    "CSV_COLUMNS",
    "to_csv",
    "REPORT_SCHEMA",
    "summarize",
]


@dataclass
class VerificationReport:
    identity: str
    params: dict
    lhs: object
    rhs: object
    abs_err: object
    rel_err: object
    tol: object
    method: str
    terms_used: int
    precision_digits: int
    passed: bool
    shift: tuple | None = None
    lam: object = None
    case_index: int = 0
    seed: int | None = None
    extras: dict = field(default_factory=dict)

    @property
    def skipped(self):
        return self.method == "skipped"

    @property
    def status(self):
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "fail"


def make_report(identity, params, lhs, rhs, tol, method, terms_used,
                precision_digits, scale=None, **kw):
    """Compare two sides and build a report.

    Without ``scale`` the pass rule is ``rel_err <= tol`` when ``|rhs| >= 1``
    and ``abs_err <= tol`` otherwise.  With ``scale`` the relative error is
    taken against it and must be ``<= tol``.
    """
    with mp.workdps(precision_digits):
        tol = mp.mpf(tol)
        abs_err = abs(lhs - rhs)
        if scale is not None:
            scale = mp.mpf(scale)
            rel_err = abs_err / scale if scale else mp.inf
            passed = rel_err <= tol
        else:
            mag = abs(rhs)
            rel_err = abs_err / mag if mag else (mp.mpf(0) if abs_err == 0 else mp.inf)
            passed = (abs_err if mag < 1 else rel_err) <= tol
    # every continuation route is reported as "heine"; extras keep the route
    method = method if method in ("direct", "skipped") else "heine"
    return VerificationReport(
        identity=identity, params=params, lhs=lhs, rhs=rhs, abs_err=abs_err,
        rel_err=rel_err, tol=tol, method=method, terms_used=int(terms_used),
        precision_digits=precision_digits, passed=bool(passed), **kw,
    )


def skipped_report(identity, params, tol, precision_digits, reason, rhs=None, **kw):
    extras = dict(kw.pop("extras", {}) or {})
    extras["skip_reason"] = str(reason)
    return VerificationReport(
        identity=identity, params=params, lhs=None, rhs=rhs, abs_err=None,
        rel_err=None, tol=mp.mpf(tol), method="skipped", terms_used=0,
        precision_digits=precision_digits, passed=False, extras=extras, **kw,
    )


def fmt_num(x, digits):
    """Decimal string of a real value at ``digits`` significant digits."""
    if x is None:
        return None
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    with mp.workdps(digits + 5):
        return mp.nstr(mp.mpf(x), digits)


def _cplx(x, digits):
    if x is None:
        return None
    with mp.workdps(digits + 5):
        x = mp.mpmathify(x)
        return {"re": fmt_num(mp.re(x), digits), "im": fmt_num(mp.im(x), digits)}


def _param(v, digits):
    if isinstance(v, (str, bool, int)) or v is None:
        return fmt_num(v, digits)
    with mp.workdps(digits + 5):
        v = mp.mpmathify(v)
        if isinstance(v, mp.mpc) and v.imag != 0:
            return _cplx_str(v, digits)
        return fmt_num(mp.re(v), digits)


def _cplx_str(x, digits):
    re_s = fmt_num(mp.re(x), digits)
    im = mp.im(x)
    im_s = fmt_num(abs(im), digits)
    sign = "-" if im < 0 else "+"
    return f"{re_s}{sign}{im_s}i"


def report_to_dict(r: VerificationReport):
    d = r.precision_digits
    return {
        "identity": r.identity,
        "params": {k: _param(v, d) for k, v in r.params.items()},
        "shift": list(r.shift) if r.shift is not None else None,
        "lambda": _cplx(r.lam, d),
        "lhs": _cplx(r.lhs, d),
        "rhs": _cplx(r.rhs, d),
        "abs_err": fmt_num(r.abs_err, d),
        "rel_err": fmt_num(r.rel_err, d),
        "tol": fmt_num(r.tol, d),
        "method": r.method,
        "terms_used": r.terms_used,
        "precision_digits": d,
        "pass": r.passed,
        "case_index": r.case_index,
        "seed": r.seed,
        "extras": {k: _param(v, d) for k, v in r.extras.items()},
    }


def to_json_line(r: VerificationReport):
    return json.dumps(report_to_dict(r), ensure_ascii=False)


CSV_COLUMNS = [
    "identity", "params", "shift", "lambda", "lhs", "rhs", "abs_err", "rel_err",
    "tol", "method", "terms_used", "precision_digits", "pass", "case_index",
    "seed", "extras",
]


def _csv_cell(key, value):
    if value is None:
        return ""
    if key in ("lambda", "lhs", "rhs"):
        im = value["im"]
        sign = "" if im.startswith("-") else "+"
        return f"{value['re']}{sign}{im}i"
    if key in ("params", "extras"):
        return ";".join(f"{k}={v}" for k, v in value.items())
    if key == "shift":
        return " ".join(str(s) for s in value)
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def to_csv(reports, header=True):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(CSV_COLUMNS)
    for r in reports:
        d = report_to_dict(r)
        w.writerow([_csv_cell(k, d[k]) for k in CSV_COLUMNS])
    return buf.getvalue()


def summarize(reports):
    counts = {"pass": 0, "skip": 0, "fail": 0}
    for r in reports:
        counts[r.status] += 1
    return counts


_COMPLEX = {
    "type": "object",
    "properties": {"re": {"type": "string"}, "im": {"type": "string"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}
_NULLABLE_COMPLEX = {"oneOf": [_COMPLEX, {"type": "null"}]}
_NULLABLE_STR = {"type": ["string", "null"]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "identity": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": "string"}},
        "shift": {
            "oneOf": [
                {"type": "array", "items": {"type": "integer"}, "minItems": 4,
                 "maxItems": 4},
                {"type": "null"},
            ]
        },
        "lambda": _NULLABLE_COMPLEX,
        "lhs": _NULLABLE_COMPLEX,
        "rhs": _NULLABLE_COMPLEX,
        "abs_err": _NULLABLE_STR,
        "rel_err": _NULLABLE_STR,
        "tol": {"type": "string"},
        "method": {"enum": ["direct", "heine", "skipped"]},
        "terms_used": {"type": "integer", "minimum": 0},
        "precision_digits": {"type": "integer", "minimum": 16},
        "pass": {"type": "boolean"},
        "case_index": {"type": "integer", "minimum": 0},
        "seed": {"type": ["integer", "null"]},
        "extras": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "required": [
        "identity", "params", "shift", "lambda", "lhs", "rhs", "abs_err",
        "rel_err", "tol", "method", "terms_used", "precision_digits", "pass",
        "case_index", "seed",
    ],
    "additionalProperties": False,
}
