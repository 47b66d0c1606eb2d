"""Tour of the concentration rate functions.

The posterior over the model dimension overshoots or undershoots the
oracle dimension with probability bounded by exp(-rate * n) / rate.
The rates are suprema of two concave functions of a tilting parameter,
available in closed form; this script shows their shape, the closed-form
optima, and the sign trichotomy around the critical line a = t + 1.
"""

import numpy as np

from effdim import f, f_sup, g, g_sup, penalty_constant

print("penalty constant A = log(kappa+1) + 2*varkappa")
for kappa, varkappa in [(np.e**2 - 1, 2.0), (np.e**2 - 1, 0.5), (1.9, 0.1)]:
    print(f"  kappa={kappa:10.4f} varkappa={varkappa:4.2f} -> A = "
          f"{penalty_constant(kappa, varkappa):.6f}")

print("\noverhoot rate profile f(h, a=6, t=1) over h in [0, 1):")
for h in np.linspace(0.0, 0.9, 10):
    bar = "#" * max(0, int(40 * max(f(h, 6.0, 1.0), 0.0)))
    print(f"  h={h:4.2f}  f={f(h, 6.0, 1.0):+.4f} {bar}")

res = f_sup(6.0, 1.0)
print(f"closed-form optimum: h* = {res.h_star:.6f}, value = {res.value:.6f}")

print("\nsign trichotomy along a for fixed t = 1 (critical line at a = 2):")
for a in (1.2, 1.6, 2.0, 2.5, 4.0, 6.0):
    fo = f_sup(a, 1.0)
    go = g_sup(a, 1.0)
    print(f"  a={a:4.1f}  f_sup={fo.value:9.6f} (positive={fo.positive})   "
          f"g_sup={go.value:9.6f} (positive={go.positive})")

print("\nthe two suprema trade places exactly at a = t + 1;")
print("overshoot control needs f_sup > 0 (A > 1 + tau),")
print("undershoot control needs g_sup > 0 (A < 1 + tau).")

print("\nundershoot rate with a strong energy drop, g_sup(2, 9):")
res = g_sup(2.0, 9.0)
print(f"  stationary point beyond 1, clamped: h* = {res.h_star}, "
      f"value = {res.value:.6f}  (= g(1) = (9/2 + log 2 - 2)/2)")
print(f"  check: g(1, 2, 9) = {g(1.0, 2.0, 9.0):.6f}")
