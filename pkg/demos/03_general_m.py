"""Every root of the degree m-1 polynomial gives an exact evaluation."""

from mpmath import mp

from qgosper import EvalConfig, theorem1_cases, verify_eq_1_2, verify_eq_1_3

cfg = EvalConfig(precision_digits=50)
q, a, c = "0.62", "-0.41", "0.77"

for m in range(2, 7):
    print(f"m = {m}")
    for case in theorem1_cases(q, a, c, m, cfg):
        r2 = verify_eq_1_2(case, cfg, "1e-20")
        r3 = verify_eq_1_3(case, cfg, "1e-20")
        print(f"  lambda = {mp.nstr(case.lam, 12):<34} residual {mp.nstr(case.residual, 2):<8}"
              f" value form {r2.status} ({r2.extras['routes']}),"
              f" transformed {r3.status} ({r3.extras['routes']})")
