"""The classical 2F1 evaluation as the q -> 1 limit of the m = 2 identity."""

import numpy as np
from mpmath import mp

from qgosper import EvalConfig, verify_gosper_classical, verify_q_limit

cfg = EvalConfig()
alpha, beta = "1.5", "0.8"

classical = verify_gosper_classical(alpha, beta, cfg)
print("2F1(1-alpha, beta; beta+2; beta/(alpha+beta)) =", mp.nstr(classical.lhs, 20))
print("(beta+1) (alpha/(alpha+beta))^alpha          =", mp.nstr(classical.rhs, 20))

ks = np.arange(3, 11)
with cfg.workdps():
    qs = [1 - mp.mpf(2) ** -int(k) for k in ks]
reports = verify_q_limit(alpha, beta, qs, cfg)
E = np.array([float(r.extras["E"]) for r in reports])

print(f"{'k':>3} {'q':>12} {'E(q)':>10} {'ratio':>7}")
for k, q, e, prev in zip(ks, qs, E, np.r_[np.nan, E[:-1]]):
    print(f"{k:>3} {mp.nstr(q, 10):>12} {e:>10.3e} {prev / e:>7.2f}")
# E shrinks roughly like (1 - q)^2
slope = np.polyfit(np.log2(1 - np.array([float(q) for q in qs]))[1:], np.log2(E[1:]), 1)[0]
print("fitted order in (1 - q):", round(slope, 2))
