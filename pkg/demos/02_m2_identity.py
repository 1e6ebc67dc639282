"""The m = 2 strange evaluation in closed form."""

from mpmath import mp

from qgosper import EvalConfig, verify_m2_closed_forms

cfg = EvalConfig()

for q, a, c in [("0.5", "0.9", "0.35"), ("0.5", "0.3", "0.7"), ("0.8", "-0.45", "0.6")]:
    value_form, transformed = verify_m2_closed_forms(q, a, c, cfg, "1e-12")
    print(f"q={q} a={a} c={c}  lambda = {mp.nstr(value_form.lam, 15)}")
    for r in (value_form, transformed):
        if r.skipped:
            print(f"  {r.identity:<9} skipped: {r.extras['skip_reason']}")
            continue
        print(f"  {r.identity:<9} lhs={mp.nstr(r.lhs, 18):<22} rhs={mp.nstr(r.rhs, 18):<22}"
              f" rel err {mp.nstr(r.rel_err, 3)} via {r.extras.get('routes', r.method)}")
