"""Contiguous three-term relation and the vanishing of Q at b = 1."""

from mpmath import mp

from qgosper import EvalConfig, RelationParams, find_roots, verify_relation
from qgosper.threeterm import lemma3_poly, q_terms

cfg = EvalConfig()
p = RelationParams(a="0.3", b="-0.55", c="0.71", x="0.4", base="0.6")

for m in range(2, 6):
    r = verify_relation(m, p, cfg, "1e-12")
    print(f"shift (1,{m},{m},0): Q={mp.nstr(mp.mpf(r.extras['Q']), 12):<18}"
          f" R={mp.nstr(mp.mpf(r.extras['R']), 12):<18} residual {mp.nstr(r.rel_err, 3)}")

# with b = 1, Q is a polynomial times a prefactor; it vanishes at the polynomial's roots
a, c, q = "0.3", "0.71", "0.6"
for shift in [(1, 2, 2, 0), (1, 3, 3, 0), (1, 3, 2, 0), (2, 3, 3, 1)]:
    with cfg.workdps():
        for lam in find_roots(lemma3_poly(shift, a, c, q, cfg), cfg=cfg):
            t = q_terms(shift, RelationParams(a, "1", c, lam, q), cfg)
            print(f"{shift}: x = {mp.nstr(lam, 12):<30} |Q| / prefactor ="
                  f" {mp.nstr(abs(t.value) / abs(t.lemma3_prefactor), 3)}")
