"""Why two-sided control must fail somewhere: the confusion floor.

Two signals can have effective dimensions 1 and L1+L2+1 while their data
distributions stay within a fixed likelihood-ratio budget Delta.  Any
estimator then confuses them with total probability at least
1 + 2*Delta - 2*sqrt(Delta^2 + Delta) > 0, no matter how large L1 and L2
are.  The script builds such a pair and measures the confusion of the
MAP dimension.
"""

import math

from effdim import (
    MCConfig,
    PriorParams,
    adversarial_pair,
    effective_dimension,
    lower_bound_experiment,
    lower_bound_floor,
)

tau, eps, L1, L2, delta = 1.0, 1.0, 3, 3, 1.1
short, long = adversarial_pair(tau, eps, L1, L2, delta)
print(f"adversarial pair at Delta = {delta}, L1 = L2 = {L1}:")
print(f"  short: head {short.coeffs[0]:.4f}, then {L1 + L2} coords at "
      f"{short.coeffs[1]:.4f} (just below sqrt(tau))")
print(f"  long : head {long.coeffs[0]:.4f}, then {L1 + L2} coords at "
      f"{long.coeffs[1]:.4f} (just above sqrt(tau))")
print(f"  d_tau(short) = {effective_dimension(short, eps, tau).d_tau}, "
      f"d_tau(long) = {effective_dimension(long, eps, tau).d_tau}")

gap = sum((a - b) ** 2 for a, b in zip(short.coeffs, long.coeffs))
print(f"  exp(||gap||^2 / eps^2) = {math.exp(gap / eps**2):.6f} (target {delta})")

print(f"\nconfusion floor: {lower_bound_floor(delta):.6f}")
print("floor shrinks as the budget Delta grows:")
for d in (1.01, 1.1, 1.5, 2.0, 5.0):
    print(f"  Delta={d:5.2f} -> floor = {lower_bound_floor(d):.4f}")

prior = PriorParams(kappa=math.expm1(1.2), varkappa=0.4, epsilon=1.0)
cfg = MCConfig(replicates=2000, n=16, master_seed=7, offsets=(1,))
report = lower_bound_experiment(tau, eps, L1, L2, delta, prior, cfg)
print(f"\nMAP confusion over {cfg.replicates} replicates:")
print(f"  P(short overshoots by {L1}) = {report.p1:.4f}")
print(f"  P(long undershoots by {L2}) = {report.p2:.4f}")
print(f"  sum = {report.total:.4f} >= floor - 3SE = "
      f"{report.delta_prime - 3 * report.combined_se:.4f}: {report.satisfied}")
