"""From effective dimension to smoothness.

On self-similar signals the oracle dimension scales like
(tau * eps^-2)^(1/(2s+1)), so the smoothness s can be read off the MAP
dimension: shat = (log(eps^-2)/log(dhat) - 1) / 2.  The sweep tracks the
dimension, the scaling ratio and the recovery error along a noise grid.
"""

import math

from effdim import (
    MCConfig,
    PriorParams,
    SmoothnessClassParams,
    check_membership,
    self_similar_signal,
    smoothness_estimate,
    smoothness_sweep,
)

params = SmoothnessClassParams(s=1.0, Q=1.0, alpha=0.1, rho0=2.0, N0=2)
theta = self_similar_signal(params, 512)
report_m = check_membership(theta, params)
print(f"self-similar signal built: N = {theta.n}, tail class ok = "
      f"{report_m.in_tail_class}, blocks ok = {report_m.blocks_hold} "
      f"({report_m.n_blocks_checked} blocks checked)")

print("\nalgebraic sanity: dhat = eps^(-2/(2s+1)) inverts exactly:")
for s, dhat, eps in [(0.5, 10, 0.1), (1.0, 4, 0.125)]:
    print(f"  s={s}: smoothness_estimate({dhat}, {eps}) = "
          f"{smoothness_estimate(dhat, eps):.6f}")

prior = PriorParams(kappa=math.e**2 - 1.0, varkappa=0.5, epsilon=0.3)  # A = 3
cfg = MCConfig(replicates=50, n=128, master_seed=2, offsets=(1,))
report = smoothness_sweep(params, prior, 1.0, (0.3, 0.1, 0.03, 0.01), cfg,
                          signal_N=512)

print("\nsweep over the noise grid (50 replicates each):")
print("  eps     d_tau  dhat(med)  shat(med)  med|shat-s|  outside  ratio")
for r in report.rows:
    print(f"  {r.eps:5.2f}  {r.d_tau:5d}  {r.dhat_median:8.1f}  "
          f"{r.shat_median:9.4f}  {r.median_abs_err:11.4f}  "
          f"{r.outside_freq:7.2f}  {r.ratio:.3f}")

print(f"\nd_tau non-decreasing as eps shrinks: {report.d_tau_nondecreasing}")
print(f"median |shat - s| non-increasing:     {report.median_err_nonincreasing}")
print(f"scaling-ratio band (max/min):         {report.ratio_band:.3f}")
print("\nthe recovery rate is 1/log(eps^-2): halving eps only nudges shat,")
print("which is why the grid spans two orders of magnitude.")
