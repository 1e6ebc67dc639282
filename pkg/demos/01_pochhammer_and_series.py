"""q-Pochhammer symbols and basic hypergeometric sums at 32 digits."""

from mpmath import mp

from qgosper import EvalConfig, SeriesSpec, phi21_continued, phi_sum, qpoch_finite, qpoch_infinite

cfg = EvalConfig(precision_digits=32)

with cfg.workdps():
    q = mp.mpf("0.5")
    print("(1/2; 1/2)_2       =", qpoch_finite(q, q, 2))
    print("(1/4; 1/2)_-1      =", qpoch_finite("0.25", q, -1))
    print("(1/2; 1/2)_inf     =", qpoch_infinite(q, q))

    # terminating sum: stops after exactly N + 1 terms
    v = phi_sum(SeriesSpec(("2", "0.25"), ("0.125",), q, "0.5"), cfg)
    print("terminating 2phi1  =", v.value, "terms:", v.terms)

    # q-binomial theorem: 1phi0(a; z) = (az;q)_inf / (z;q)_inf
    a, z = mp.mpf("0.3"), mp.mpf("-0.7")
    s = phi_sum(SeriesSpec((a,), (), q, z), cfg).value
    print("q-binomial gap     =", mp.nstr(s - qpoch_infinite(a * z, q) / qpoch_infinite(z, q), 3))

    # outside the unit disc the evaluator picks a continuation
    for x in ("0.5", "1.5", "4.1"):
        value, route = phi21_continued("1.3", "0.25", "0.7", "0.6", x, cfg)
        print(f"2phi1 at x={x:<4} ->", mp.nstr(value, 20), f"({route})")
    value, route = phi21_continued("1.3", "2.5", "0.7", "0.6", "4.1", cfg)
    print("both numerators > 1 ->", mp.nstr(value, 20), f"({route})")
