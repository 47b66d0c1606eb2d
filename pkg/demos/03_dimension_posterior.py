"""The empirical-Bayes posterior over the dimension.

The posterior weight of dimension d depends on the data only through the
prefix energy sum_{i<=d} X_i^2, penalized at A = log(kappa+1) + 2*varkappa
per dimension.  The MAP dimension is simultaneously the minimizer of the
penalized least-squares criterion.
"""

import math

import numpy as np

from effdim import (
    PriorParams,
    crit,
    effective_dimension,
    map_dimension,
    pmf,
    posterior_mean_theta,
    power_law_signal,
    simulate,
)

prior = PriorParams(kappa=math.e**2 - 1.0, varkappa=2.0, epsilon=0.1)  # A = 6
theta = power_law_signal(1.0, 1.0, 256)
obs = simulate(theta, 0.1, 256, seed=(2024, 0))

post = pmf(obs, prior)
d_hat = map_dimension(obs, prior)
d_tau = effective_dimension(theta, 0.1, 1.0).d_tau
print(f"power-law signal, eps = 0.1: oracle d_tau = {d_tau}, MAP d_hat = {d_hat}")

print("\nposterior mass near the MAP:")
lo = max(1, d_hat - 4)
for d in range(lo, min(post.n, d_hat + 5) + 1):
    bar = "#" * int(60 * post.pmf[d - 1])
    marker = " <- d_hat" if d == d_hat else ""
    print(f"  d={d:3d}  p={post.pmf[d - 1]:.4f} {bar}{marker}")
print(f"  aggregated mass on d > {post.n}: {post.tail_mass:.2e}")

print("\nMAP/criterion duality: crit(d) = -sum_(i<=d) X_i^2 + A*eps^2*d")
values = [crit(d, obs, prior) for d in range(max(1, d_hat - 2), d_hat + 3)]
for d, v in zip(range(max(1, d_hat - 2), d_hat + 3), values):
    marker = " <- minimizer" if d == d_hat else ""
    print(f"  d={d:3d}  crit={v:10.4f}{marker}")

mean = posterior_mean_theta(obs, prior)
err_plugin = float(np.sum((mean[: theta.n] - theta.coeffs) ** 2)) + theta.tail_energy
err_oracle = effective_dimension(theta, 0.1, 1.0).r_tau
print(f"\nplug-in mean keeps the first {d_hat} coordinates of X;")
print(f"realized squared error = {err_plugin:.4f} vs oracle risk = {err_oracle:.4f}")
