"""Independent oracles shared by the test modules.

These deliberately avoid the library's own code paths: the rate suprema
are found by concave grid refinement, power-law tails come from the
Hurwitz zeta function, and the dimension posterior is rebuilt from raw
Gaussian density products.
"""

import math

import numpy as np
from scipy.stats import norm

from effdim.posterior import PriorParams


def prior_with_A(A, varkappa, epsilon):
    """Back out kappa from a target penalty constant A = log(kappa+1) + 2vk."""
    return PriorParams(kappa=math.expm1(A - 2.0 * varkappa), varkappa=varkappa,
                       epsilon=epsilon)


def f_vec(h, a, t):
    return 0.5 * (a * h + np.log1p(-h) - t * h / (1.0 - h))


def g_vec(h, a, t):
    return 0.5 * (t * h / (1.0 + h) + np.log1p(h) - a * h)


def grid_max(fun, lo, hi, points=4097):
    """Two-stage grid maximum of a concave function on [lo, hi].

    For a concave function the true argmax lies within one coarse step of
    the coarse grid argmax, so refining that bracket is exact up to the
    fine-step curvature error.
    """
    h = np.linspace(lo, hi, points)
    v = fun(h)
    i = int(np.argmax(v))
    h2 = np.linspace(h[max(i - 1, 0)], h[min(i + 1, points - 1)], points)
    v2 = fun(h2)
    j = int(np.argmax(v2))
    return float(h2[j]), float(v2[j])


def grid_max_f(a, t):
    return grid_max(lambda h: f_vec(h, a, t), 0.0, 1.0 - 1e-6)


def grid_max_g(a, t):
    return grid_max(lambda h: g_vec(h, a, t), 0.0, 1.0)


def naive_effective_dimension(coeffs, tail_energy, eps, tau):
    """Per-d recomputation of the risk curve, no shared prefix sums."""
    coeffs = np.asarray(coeffs, dtype=float)
    best_d, best_r = None, math.inf
    for d in range(1, coeffs.size + 1):
        r = float(np.sum(coeffs[d:] ** 2)) + tail_energy + tau * d * eps * eps
        if r < best_r:
            best_d, best_r = d, r
    return best_d, best_r


def posterior_oracle(x, kappa, varkappa, eps):
    """Dimension posterior from raw Gaussian density products.

    Evaluates, for each d, the prior weight times the product over i <= n
    of the marginal density of X_i given dimension d (mean X_i and
    variance (kappa+1) eps^2 for i <= d, mean 0 and variance eps^2 past
    d), then normalizes, with the d > n continuation summed in closed
    form.  Returns (pmf over 1..n, tail mass).
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    c_vk = math.exp(varkappa) - 1.0

    def numerator(d):
        lam = c_vk * math.exp(-varkappa * d)
        prod = 1.0
        for i in range(1, n + 1):
            if i <= d:
                prod *= norm.pdf(x[i - 1], loc=x[i - 1], scale=math.sqrt((kappa + 1.0)) * eps)
            else:
                prod *= norm.pdf(x[i - 1], loc=0.0, scale=eps)
        return lam * prod

    nums = np.array([numerator(d) for d in range(1, n + 1)])
    # for d > n the density product no longer changes, only lambda_d decays
    common = nums[-1] / (c_vk * math.exp(-varkappa * n))
    tail_num = common * c_vk * math.exp(-varkappa * (n + 1)) / (1.0 - math.exp(-varkappa))
    z = float(np.sum(nums)) + tail_num
    return nums / z, tail_num / z
