"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines live;
without -s they still appear in the captured output of failing tests.
"""

import math

import numpy as np

from effdim.experiments import (
    MCConfig,
    lower_bound_experiment,
    mc_overshoot,
    mc_two_sided,
    mc_undershoot,
    report_csv,
    smoothness_sweep,
)
from effdim.oracle import effective_dimension, tau_scaling_identity_check
from effdim.posterior import PriorParams, crit, map_dimension, pmf
from effdim.rates import f_sup, g_sup
from effdim.signals import (
    Signal,
    SmoothnessClassParams,
    adversarial_pair,
    power_law_signal,
    simulate,
    zero_signal,
)
from effdim.cli import main as cli_main

from helpers import grid_max_f, grid_max_g, naive_effective_dimension, prior_with_A


def criterion(num, name, ok, detail=""):
    tail = f" ({detail})" if detail else ""
    print(f"[criterion {num:02d}] {name}: {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, f"criterion {num} failed: {name}{tail}"


def rate_sample(size=10_000, seed=20250101):
    rng = np.random.default_rng(seed)
    a = 0.1 + 19.8 * rng.random(size)
    t = 0.1 + 19.8 * rng.random(size)
    return a, t


def test_c01_rate_function_grid_equivalence():
    a_s, t_s = rate_sample()
    worst = 0.0
    for a, t in zip(a_s, t_s):
        _, fv = grid_max_f(a, t)
        _, gv = grid_max_g(a, t)
        worst = max(worst, abs(f_sup(a, t).value - fv), abs(g_sup(a, t).value - gv))
        if worst > 1e-8:
            break
    line_ok = True
    rng = np.random.default_rng(20250102)
    for t in 0.1 + 19.8 * rng.random(200):
        line_ok &= abs(f_sup(t + 1.0, t).value) <= 1e-12
        line_ok &= abs(g_sup(t + 1.0, t).value) <= 1e-12
    criterion(
        1,
        "rate-function closed forms match grid search",
        worst <= 1e-8 and line_ok,
        f"max |closed - grid| = {worst:.3g} over {a_s.size} pairs",
    )


def test_c02_sign_trichotomy():
    a_s, t_s = rate_sample()
    exceptions = 0
    for a, t in zip(a_s, t_s):
        if (f_sup(a, t).value > 0) != (a > t + 1.0):
            exceptions += 1
        if (g_sup(a, t).value > 0) != (a < t + 1.0):
            exceptions += 1
    criterion(2, "sign trichotomy of the rate suprema", exceptions == 0,
              f"{exceptions} exceptions in {a_s.size} pairs")


def test_c03_oracle_brute_force_and_relations():
    rng = np.random.default_rng(20250103)
    taus = [0.25, 0.5, 1.0, 2.0, 4.0, 9.0]
    ok = True
    for _ in range(1000):
        n = int(rng.integers(1, 201))
        theta = Signal(rng.normal(scale=2.0, size=n), 0.0)
        eps = 0.2 + 2.0 * rng.random()
        tau = 0.2 + 5.0 * rng.random()
        res = effective_dimension(theta, eps, tau)
        naive_d, naive_r = naive_effective_dimension(theta.coeffs, 0.0, eps, tau)
        ok &= res.d_tau == naive_d and abs(res.r_tau - naive_r) <= 1e-9 * max(1.0, naive_r)
        ds = [effective_dimension(theta, eps, t).d_tau for t in taus]
        ok &= all(b <= a for a, b in zip(ds, ds[1:]))  # larger tau, smaller d
        r1 = effective_dimension(theta, eps, 1.0).r_tau
        for t in (1.5, 3.0, 9.0):
            rt = effective_dimension(theta, eps, t).r_tau
            ok &= r1 - 1e-12 <= rt <= t * r1 + 1e-12
        for t in (0.5, 2.0, 9.0):
            ok &= tau_scaling_identity_check(theta, eps, t)
        if not ok:
            break
    criterion(3, "oracle brute-force equivalence and trivial relations", ok,
              "1000 signals, N <= 200")


def test_c04_posterior_contracts():
    rng = np.random.default_rng(20250104)
    ok_norm = True
    ok_dual = True
    for _ in range(500):
        n = int(rng.integers(1, 51))
        x = rng.normal(scale=2.0, size=n)
        prior = PriorParams(
            kappa=math.e - 1.0 + 3.0 * rng.random() + 1e-9,
            varkappa=0.1 + 2.0 * rng.random(),
            epsilon=0.3 + rng.random(),
        )
        post = pmf(x, prior)
        ok_norm &= abs(float(np.sum(post.pmf)) + post.tail_mass - 1.0) <= 1e-12
        crit_values = [crit(d, x, prior) for d in range(1, n + 1)]
        ok_dual &= map_dimension(x, prior) == int(np.argmin(crit_values)) + 1

    theta = power_law_signal(1.0, 1.0, 512)
    prior = PriorParams(kappa=math.e**2 - 1.0, varkappa=2.0, epsilon=0.1)
    threshold = None
    for n in (8, 16, 32, 64, 128, 256):
        a = pmf(simulate(theta, 0.1, n, (20250104, 0)).x, prior)
        b = pmf(simulate(theta, 0.1, 2 * n, (20250104, 0)).x, prior)
        tv = 0.5 * float(np.sum(np.abs(a.pmf - b.pmf[:n])))
        tv += 0.5 * abs(a.tail_mass - (float(np.sum(b.pmf[n:])) + b.tail_mass))
        if tv < 1e-6:
            threshold = n
            break
    criterion(
        4,
        "posterior normalization, MAP/crit duality, truncation stability",
        ok_norm and ok_dual and threshold is not None,
        f"stability threshold n = {threshold}",
    )


OVERSHOOT_PRIOR = PriorParams(kappa=math.e**2 - 1.0, varkappa=2.0, epsilon=1.0)  # A = 6


def overshoot_report(seed=20250105):
    cfg = MCConfig(replicates=2000, n=20, master_seed=seed, offsets=(1, 2, 3, 4, 5))
    return mc_overshoot(zero_signal(20), OVERSHOOT_PRIOR, 1.0, cfg, label="zero")


def test_c05_overshoot_desk_scale():
    report = overshoot_report()
    alpha = report.meta["alpha"]
    ok = (
        abs(alpha - 0.6534264097200273) <= 1e-12
        and not any(r.vacuous for r in report.rows)
        and report.all_satisfied
    )
    criterion(
        5,
        "overshoot control at desk scale (zero signal, A=6)",
        ok,
        f"alpha = {alpha:.6f}, bound at offset 5 = {report.rows[-1].theory_bound:.4f}",
    )


def test_c06_undershoot_desk_scale():
    tau = 9.0
    _, long = adversarial_pair(tau, 1.0, 3, 3, 1.1)
    prior = prior_with_A(2.0, 0.4, 1.0)
    cfg = MCConfig(replicates=2000, n=20, master_seed=20250106, offsets=(1, 2, 3))
    report = mc_undershoot(long, prior, tau, cfg, label="adversarial-long")
    beta = report.meta["beta"]
    ok = (
        abs(beta - 1.5965735902799727) <= 1e-12
        and not any(r.vacuous for r in report.rows)
        and report.all_satisfied
    )
    criterion(
        6,
        "undershoot control at desk scale (head-heavy signal, A=2)",
        ok,
        f"beta = {beta:.6f}, bound at offset 1 = {report.rows[0].theory_bound:.4f}",
    )


def test_c07_lower_bound_desk_scale():
    tau, eps, L1, L2, delta = 1.0, 1.0, 3, 3, 1.1
    short, long = adversarial_pair(tau, eps, L1, L2, delta)
    gap_sq = float(np.sum((short.coeffs - long.coeffs) ** 2))
    pair_ok = abs(math.exp(gap_sq / (eps * eps)) - delta) <= 1e-10 * delta
    dims_ok = (
        effective_dimension(short, eps, tau).d_tau == 1
        and effective_dimension(long, eps, tau).d_tau == 7
    )
    prior = prior_with_A(2.0, 0.4, 1.0)
    cfg = MCConfig(replicates=5000, n=16, master_seed=20250107, offsets=(1,))
    report = lower_bound_experiment(tau, eps, L1, L2, delta, prior, cfg)
    floor_ok = abs(report.delta_prime - 0.16026316928586715) <= 1e-12
    criterion(
        7,
        "lower-bound floor for the MAP dimension",
        pair_ok and dims_ok and floor_ok and report.satisfied,
        f"p1 + p2 = {report.total:.4f} >= {report.delta_prime:.6f} - 3SE",
    )


def test_c08_two_sided_both_cases():
    theta_tail = power_law_signal(2.0, 1.0, 40)
    prior_tail = PriorParams(kappa=math.e**2 - 1.0, varkappa=2.0, epsilon=1.0)  # A = 6
    cfg_tail = MCConfig(replicates=2000, n=40, master_seed=20250108, offsets=(6, 8, 10))
    rep_tail = mc_two_sided(theta_tail, prior_tail, 9.0, cfg_tail, t0=1.0, N0=1,
                            label="power-law-s2")

    theta_head, _ = adversarial_pair(10.0, 1.0, 2, 2, 1.5)
    prior_head = PriorParams(kappa=math.e**2 - 1.0, varkappa=7.0, epsilon=1.0)  # A = 16
    cfg_head = MCConfig(replicates=2000, n=60, master_seed=20250109, offsets=(20, 25, 30))
    rep_head = mc_two_sided(theta_head, prior_head, 10.0, cfg_head, H0=19.0, n0=1,
                            label="adversarial-short")

    def non_vacuous(report):
        return sum(not r.vacuous for r in report.rows)

    ok = (
        rep_tail.all_satisfied
        and rep_head.all_satisfied
        and non_vacuous(rep_tail) >= 2
        and non_vacuous(rep_head) >= 2
    )
    criterion(
        8,
        "two-sided control under the tail and head conditions",
        ok,
        f"non-vacuous rows: tail case {non_vacuous(rep_tail)}/3, "
        f"head case {non_vacuous(rep_head)}/3",
    )


def smoothness_report(seed=2):
    params = SmoothnessClassParams(s=1.0, Q=1.0, alpha=0.1, rho0=2.0, N0=2)
    prior = PriorParams(kappa=math.e**2 - 1.0, varkappa=0.5, epsilon=0.3)  # A = 3
    cfg = MCConfig(replicates=50, n=128, master_seed=seed, offsets=(1,))
    return smoothness_sweep(params, prior, 1.0, (0.3, 0.1, 0.03, 0.01), cfg,
                            signal_N=512)


def test_c09_smoothness_sweep():
    report = smoothness_report()
    meds = [r.median_abs_err for r in report.rows]
    ok = (
        report.d_tau_nondecreasing
        and report.median_err_nonincreasing
        and report.ratio_band <= 4.0
    )
    criterion(
        9,
        "smoothness sweep: dimension growth, error decay, ratio band",
        ok,
        f"median |shat - s| = {', '.join(f'{m:.3f}' for m in meds)}; "
        f"band = {report.ratio_band:.2f}",
    )


def test_c10_byte_identical_reruns(tmp_path):
    # library route: identical report CSVs from the same master seed
    lib_ok = report_csv(overshoot_report()) == report_csv(overshoot_report())
    lib_ok &= report_csv(smoothness_report()) == report_csv(smoothness_report())
    # CLI route: two runs of the same config into different files
    cfg = tmp_path / "verify.cfg"
    cfg.write_text(
        "theorem = undershoot\n"
        "signal = adversarial-long\n"
        "tau = 9\neps = 1\nL1 = 3\nL2 = 3\nDelta = 1.1\n"
        f"kappa = {math.expm1(1.2)!r}\nvarkappa = 0.4\n"
        "R = 2000\nn = 20\nseed = 20250106\noffsets = 1,2,3\n"
    )
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    rc1 = cli_main(["verify", "--config", str(cfg), "--out", str(out1)])
    rc2 = cli_main(["verify", "--config", str(cfg), "--out", str(out2)])
    cli_ok = rc1 == 0 and rc2 == 0 and out1.read_bytes() == out2.read_bytes()
    criterion(10, "byte-identical reruns from the same master seed",
              lib_ok and cli_ok)
