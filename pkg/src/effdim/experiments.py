"""Monte Carlo verification of the one-sided, two-sided and lower-bound
concentration results, plus smoothness estimation on self-similar signals.

Every experiment is a deterministic function of its configuration and the
master seed: replicate r uses the noise stream keyed by (master_seed, r),
so results are independent of execution order and reproduce bit for bit.
Empirical frequencies and posterior masses are compared against the
theoretical envelopes at a 3-sigma tolerance; envelopes that exceed 1 are
reported but flagged vacuous and never counted as evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .oracle import effective_dimension, head_condition, tail_condition
from .posterior import PriorParams, map_dimension, pmf, region_mass
from .rates import f_sup, g_sup
from .signals import (
    Signal,
    SmoothnessClassParams,
    adversarial_pair,
    self_similar_signal,
    simulate,
)

__all__ = [
    "MCConfig",
    "BoundRow",
    "ExperimentReport",
    "LowerBoundReport",
    "SmoothnessRow",
    "SmoothnessReport",
    "mc_overshoot",
    "mc_undershoot",
    "mc_two_sided",
    "lower_bound_floor",
    "lower_bound_experiment",
    "smoothness_estimate",
    "smoothness_sweep",
    "report_csv",
]

REPORT_HEADER_PREFIX = "# effdim-report v1"

# Minimum replicate count for any report that states standard errors.
MIN_REPLICATES_FOR_SE = 100


@dataclass(frozen=True)
class MCConfig:
    """Replicate count, data length, master seed and bound offsets."""

    replicates: int
    n: int
    master_seed: int
    offsets: tuple[int, ...]

    def __post_init__(self):
        if not self.replicates >= 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if not self.n >= 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        offs = tuple(int(m) for m in self.offsets)
        if not offs or any(m < 1 for m in offs):
            raise ValueError(f"offsets must be positive integers, got {self.offsets}")
        object.__setattr__(self, "offsets", offs)
        object.__setattr__(self, "replicates", int(self.replicates))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "master_seed", int(self.master_seed))


@dataclass(frozen=True)
class BoundRow:
    """One offset of an envelope check.

    `satisfied` means both empirical columns sit below the envelope plus
    three standard errors; rows whose envelope is >= 1 are vacuous.
    """

    offset: int
    posterior_mass: float
    mass_se: float
    dhat_freq: float
    freq_se: float
    theory_bound: float
    vacuous: bool
    satisfied: bool


@dataclass(frozen=True)
class ExperimentReport:
    """Envelope-check rows plus the full configuration that produced them."""

    kind: str
    rows: tuple[BoundRow, ...]
    meta: dict

    @property
    def all_satisfied(self) -> bool:
        """True iff every non-vacuous row is satisfied."""
        return all(r.satisfied for r in self.rows if not r.vacuous)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _require_se_replicates(cfg: MCConfig) -> None:
    if cfg.replicates < MIN_REPLICATES_FOR_SE:
        raise ValueError(
            f"replicates = {cfg.replicates} < {MIN_REPLICATES_FOR_SE}: too few "
            "to report standard errors"
        )


def _signal_label(theta: Signal, label: str | None) -> str:
    if label:
        return label
    return f"signal(N={theta.n},energy={theta.total_energy:.6g})"


def _simulate_posteriors(theta: Signal, prior: PriorParams, cfg: MCConfig,
                         seed_offset: int = 0):
    """Yield (posterior, map dimension) for each replicate in index order."""
    for r in range(cfg.replicates):
        obs = simulate(theta, prior.epsilon, cfg.n, (cfg.master_seed, seed_offset + r))
        post = pmf(obs, prior)
        yield post, map_dimension(obs, prior)


def _mass_freq_rows(masses: np.ndarray, hits: np.ndarray, offsets, bounds) -> tuple:
    """Fold per-replicate masses/indicators into BoundRow records."""
    R = masses.shape[1]
    rows = []
    for j, m in enumerate(offsets):
        mass = float(np.mean(masses[j]))
        mass_se = float(np.std(masses[j], ddof=1) / math.sqrt(R))
        freq = float(np.mean(hits[j]))
        freq_se = math.sqrt(freq * (1.0 - freq) / R)
        bound = bounds[j]
        rows.append(
            BoundRow(
                offset=int(m),
                posterior_mass=mass,
                mass_se=mass_se,
                dhat_freq=freq,
                freq_se=freq_se,
                theory_bound=bound,
                vacuous=bound >= 1.0,
                satisfied=(mass <= bound + 3.0 * mass_se)
                and (freq <= bound + 3.0 * freq_se),
            )
        )
    return tuple(rows)


def mc_overshoot(theta: Signal, prior: PriorParams, tau: float, cfg: MCConfig,
                 label: str | None = None) -> ExperimentReport:
    """Check the overshoot envelope exp(-alpha*m)/alpha, alpha = f_sup(A, tau).

    Requires A > 1 + tau.  For each offset m, measures the mean posterior
    mass of {D >= d_tau + m} and the frequency of {d_hat >= d_tau + m}.
    """
    A = prior.A
    if not A > 1.0 + tau:
        raise ValueError(
            f"overshoot control requires A > 1 + tau: A = {A:.6g}, 1 + tau = {1 + tau:.6g}"
        )
    _require_se_replicates(cfg)
    alpha = f_sup(A, tau).value
    d_tau = effective_dimension(theta, prior.epsilon, tau).d_tau
    offsets = cfg.offsets
    masses = np.zeros((len(offsets), cfg.replicates))
    hits = np.zeros((len(offsets), cfg.replicates))
    for r, (post, d_hat) in enumerate(_simulate_posteriors(theta, prior, cfg)):
        for j, m in enumerate(offsets):
            masses[j, r] = region_mass(post, d_tau + m, math.inf)
            hits[j, r] = 1.0 if d_hat >= d_tau + m else 0.0
    bounds = [math.exp(-alpha * m) / alpha for m in offsets]
    rows = _mass_freq_rows(masses, hits, offsets, bounds)
    meta = {
        "kind": "overshoot",
        "theta": _signal_label(theta, label),
        "eps": prior.epsilon,
        "tau": tau,
        "kappa": prior.kappa,
        "varkappa": prior.varkappa,
        "A": A,
        "alpha": alpha,
        "d_tau": d_tau,
        "R": cfg.replicates,
        "n": cfg.n,
        "master_seed": cfg.master_seed,
        "offsets": ",".join(str(m) for m in offsets),
    }
    return ExperimentReport(kind="overshoot", rows=rows, meta=meta)


def mc_undershoot(theta: Signal, prior: PriorParams, tau: float, cfg: MCConfig,
                  label: str | None = None) -> ExperimentReport:
    """Check the undershoot envelope exp(-beta*m)/beta, beta = g_sup(A, tau).

    Requires A < 1 + tau.  For each offset m, measures the mean posterior
    mass of {D <= d_tau - m} and the frequency of {d_hat <= d_tau - m};
    offsets at or beyond d_tau give empty regions and mass 0.
    """
    A = prior.A
    if not A < 1.0 + tau:
        raise ValueError(
            f"undershoot control requires A < 1 + tau: A = {A:.6g}, 1 + tau = {1 + tau:.6g}"
        )
    _require_se_replicates(cfg)
    beta = g_sup(A, tau).value
    d_tau = effective_dimension(theta, prior.epsilon, tau).d_tau
    offsets = cfg.offsets
    masses = np.zeros((len(offsets), cfg.replicates))
    hits = np.zeros((len(offsets), cfg.replicates))
    for r, (post, d_hat) in enumerate(_simulate_posteriors(theta, prior, cfg)):
        for j, m in enumerate(offsets):
            masses[j, r] = region_mass(post, 1, d_tau - m)
            hits[j, r] = 1.0 if d_hat <= d_tau - m else 0.0
    bounds = [math.exp(-beta * m) / beta for m in offsets]
    rows = _mass_freq_rows(masses, hits, offsets, bounds)
    meta = {
        "kind": "undershoot",
        "theta": _signal_label(theta, label),
        "eps": prior.epsilon,
        "tau": tau,
        "kappa": prior.kappa,
        "varkappa": prior.varkappa,
        "A": A,
        "beta": beta,
        "d_tau": d_tau,
        "R": cfg.replicates,
        "n": cfg.n,
        "master_seed": cfg.master_seed,
        "offsets": ",".join(str(m) for m in offsets),
    }
    return ExperimentReport(kind="undershoot", rows=rows, meta=meta)


def mc_two_sided(theta: Signal, prior: PriorParams, tau: float, cfg: MCConfig,
                 t0: float | None = None, N0: int | None = None,
                 H0: float | None = None, n0: int | None = None,
                 label: str | None = None) -> ExperimentReport:
    """Check the two-sided envelope exp(-alpha*m)/alpha + exp(-beta*m)/beta.

    Pass (t0, N0) for the tail-condition case, which requires
    1 + t0 < A < 1 + tau, or (H0, n0) for the head-condition case, which
    requires 1 + tau < A < 1 + H0.  Membership of theta in the stated
    condition is verified before any simulation.  Each offset m plays the
    role of both interval margins, so offsets must respect the condition's
    starting index (m >= N0, resp. m >= n0).
    """
    A = prior.A
    tail_case = t0 is not None or N0 is not None
    head_case = H0 is not None or n0 is not None
    if tail_case == head_case:
        raise ValueError("pass exactly one of (t0, N0) or (H0, n0)")
    _require_se_replicates(cfg)
    if tail_case:
        if t0 is None or N0 is None:
            raise ValueError("the tail-condition case needs both t0 and N0")
        if not A > 1.0 + t0:
            raise ValueError(
                f"two-sided control (tail case) requires A > 1 + t0: "
                f"A = {A:.6g}, 1 + t0 = {1 + t0:.6g}"
            )
        if not A < 1.0 + tau:
            raise ValueError(
                f"two-sided control (tail case) requires A < 1 + tau: "
                f"A = {A:.6g}, 1 + tau = {1 + tau:.6g}"
            )
        membership = tail_condition(theta, prior.epsilon, tau, t0, N0)
        if not membership.member:
            raise ValueError(
                "tail condition membership fails: first violation at "
                f"d = {membership.first_violation}"
            )
        if min(cfg.offsets) < N0:
            raise ValueError(
                f"offsets must be >= N0 = {N0}: the upper margin of the "
                "two-sided control starts there"
            )
        alpha = f_sup(A, t0).value
        beta = g_sup(A, tau).value
        kind = "two-sided-i"
        extra = {"t0": t0, "N0": int(N0)}
    else:
        if H0 is None or n0 is None:
            raise ValueError("the head-condition case needs both H0 and n0")
        if not A > 1.0 + tau:
            raise ValueError(
                f"two-sided control (head case) requires A > 1 + tau: "
                f"A = {A:.6g}, 1 + tau = {1 + tau:.6g}"
            )
        if not A < 1.0 + H0:
            raise ValueError(
                f"two-sided control (head case) requires A < 1 + H0: "
                f"A = {A:.6g}, 1 + H0 = {1 + H0:.6g}"
            )
        membership = head_condition(theta, prior.epsilon, tau, H0, n0)
        if not membership.member:
            raise ValueError(
                "head condition membership fails: first violation at "
                f"d = {membership.first_violation}"
            )
        if min(cfg.offsets) < n0:
            raise ValueError(
                f"offsets must be >= n0 = {n0}: the lower margin of the "
                "two-sided control starts there"
            )
        alpha = f_sup(A, tau).value
        beta = g_sup(A, H0).value
        kind = "two-sided-ii"
        extra = {"H0": H0, "n0": int(n0)}

    d_tau = membership.d_tau
    offsets = cfg.offsets
    masses = np.zeros((len(offsets), cfg.replicates))
    hits = np.zeros((len(offsets), cfg.replicates))
    for r, (post, d_hat) in enumerate(_simulate_posteriors(theta, prior, cfg)):
        for j, m in enumerate(offsets):
            outside = region_mass(post, 1, d_tau - m - 1) + region_mass(
                post, d_tau + m + 1, math.inf
            )
            masses[j, r] = outside
            hits[j, r] = 1.0 if (d_hat < d_tau - m or d_hat > d_tau + m) else 0.0
    bounds = [
        math.exp(-alpha * m) / alpha + math.exp(-beta * m) / beta for m in offsets
    ]
    rows = _mass_freq_rows(masses, hits, offsets, bounds)
    meta = {
        "kind": kind,
        "theta": _signal_label(theta, label),
        "eps": prior.epsilon,
        "tau": tau,
        "kappa": prior.kappa,
        "varkappa": prior.varkappa,
        "A": A,
        "alpha": alpha,
        "beta": beta,
        "d_tau": d_tau,
        "R": cfg.replicates,
        "n": cfg.n,
        "master_seed": cfg.master_seed,
        "offsets": ",".join(str(m) for m in offsets),
    }
    meta.update(extra)
    return ExperimentReport(kind=kind, rows=rows, meta=meta)


def lower_bound_floor(Delta: float) -> float:
    """Two-point confusion floor 1 + 2*Delta - 2*sqrt(Delta^2 + Delta).

    Lies in (0, 1) for every Delta > 1 and decreases in Delta.
    """
    if not Delta > 1.0:
        raise ValueError(f"Delta must exceed 1, got {Delta}")
    return 1.0 + 2.0 * Delta - 2.0 * math.sqrt(Delta * Delta + Delta)


@dataclass(frozen=True)
class LowerBoundReport:
    """Estimated confusion probabilities for the adversarial pair."""

    p1: float
    se1: float
    p2: float
    se2: float
    total: float
    combined_se: float
    delta_prime: float
    satisfied: bool
    meta: dict = field(default_factory=dict)


def lower_bound_experiment(tau: float, eps: float, L1: int, L2: int, Delta: float,
                           prior: PriorParams, cfg: MCConfig) -> LowerBoundReport:
    """Estimate the unavoidable two-sided error of the MAP dimension.

    Builds the adversarial pair, estimates p1 = P(d_hat >= d_tau' + L1)
    under the short signal and p2 = P(d_hat <= d_tau'' - L2) under the
    long one, and checks p1 + p2 >= floor(Delta) - 3 * combined SE.  The
    floor holds for every estimator, so in particular for d_hat; the
    check is one-sided.
    """
    _require_se_replicates(cfg)
    if prior.epsilon != eps:
        raise ValueError(
            f"prior eps = {prior.epsilon} does not match experiment eps = {eps}"
        )
    short, long = adversarial_pair(tau, eps, L1, L2, Delta)
    d_short = effective_dimension(short, eps, tau).d_tau
    d_long = effective_dimension(long, eps, tau).d_tau
    R = cfg.replicates
    hits1 = np.zeros(R)
    hits2 = np.zeros(R)
    for r in range(R):
        obs1 = simulate(short, eps, cfg.n, (cfg.master_seed, r))
        hits1[r] = 1.0 if map_dimension(obs1, prior) >= d_short + L1 else 0.0
        obs2 = simulate(long, eps, cfg.n, (cfg.master_seed, R + r))
        hits2[r] = 1.0 if map_dimension(obs2, prior) <= d_long - L2 else 0.0
    p1 = float(np.mean(hits1))
    p2 = float(np.mean(hits2))
    se1 = math.sqrt(p1 * (1.0 - p1) / R)
    se2 = math.sqrt(p2 * (1.0 - p2) / R)
    combined = math.hypot(se1, se2)
    floor = lower_bound_floor(Delta)
    meta = {
        "kind": "lower-bound",
        "tau": tau,
        "eps": eps,
        "L1": int(L1),
        "L2": int(L2),
        "Delta": Delta,
        "kappa": prior.kappa,
        "varkappa": prior.varkappa,
        "A": prior.A,
        "d_tau_short": d_short,
        "d_tau_long": d_long,
        "R": R,
        "n": cfg.n,
        "master_seed": cfg.master_seed,
    }
    return LowerBoundReport(
        p1=p1,
        se1=se1,
        p2=p2,
        se2=se2,
        total=p1 + p2,
        combined_se=combined,
        delta_prime=floor,
        satisfied=p1 + p2 >= floor - 3.0 * combined,
        meta=meta,
    )


def smoothness_estimate(dhat: int, eps: float) -> float:
    """Invert the dimension/smoothness scaling: (log(eps^-2)/log(dhat) - 1)/2.

    Needs dhat >= 2 (so the log is positive) and eps < 1.
    """
    if not dhat >= 2:
        raise ValueError(f"dhat must be >= 2, got {dhat}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return 0.5 * (math.log(eps**-2) / math.log(dhat) - 1.0)


@dataclass(frozen=True)
class SmoothnessRow:
    """Per-noise-level summary of oracle dimension and smoothness recovery."""

    eps: float
    d_tau: int
    dhat_median: float
    shat_median: float
    median_abs_err: float
    n_undefined: int
    outside_freq: float
    ratio: float
    bracket_lo: float
    bracket_hi: float


@dataclass(frozen=True)
class SmoothnessReport:
    """Smoothness sweep rows plus the grid-level consistency checks."""

    rows: tuple[SmoothnessRow, ...]
    meta: dict

    @property
    def d_tau_nondecreasing(self) -> bool:
        d = [r.d_tau for r in self.rows]
        return all(d[i + 1] >= d[i] for i in range(len(d) - 1))

    @property
    def median_err_nonincreasing(self) -> bool:
        e = [r.median_abs_err for r in self.rows]
        return all(e[i + 1] <= e[i] for i in range(len(e) - 1))

    @property
    def ratio_band(self) -> float:
        ratios = [r.ratio for r in self.rows]
        return max(ratios) / min(ratios)


def smoothness_sweep(class_params: SmoothnessClassParams, prior_template: PriorParams,
                     tau: float, eps_grid, cfg: MCConfig, signal_N: int = 512,
                     c_lo: float = 0.5, c_hi: float = 2.0) -> SmoothnessReport:
    """Sweep the noise level on a self-similar signal.

    eps_grid must be strictly decreasing.  prior_template fixes (kappa,
    varkappa); the noise level of the prior follows the grid.  For each
    eps the sweep records the oracle dimension, the MAP dimension over
    cfg.replicates replicates, the smoothness estimate where defined
    (MAP >= 2), the frequency of the MAP landing outside
    [c_lo * d_tau, c_hi * d_tau], and the scaling ratio
    d_tau * (tau * eps^-2)^(-1/(2s+1)).
    """
    eps_grid = [float(e) for e in eps_grid]
    if not eps_grid or any(
        eps_grid[i + 1] >= eps_grid[i] for i in range(len(eps_grid) - 1)
    ):
        raise ValueError("eps_grid must be strictly decreasing")
    if not 0.0 < c_lo < 1.0 < c_hi:
        raise ValueError(f"need c_lo < 1 < c_hi, got {c_lo}, {c_hi}")
    theta = self_similar_signal(class_params, signal_N)
    s = class_params.s
    rows = []
    R = cfg.replicates
    for e_idx, eps in enumerate(eps_grid):
        d_tau = effective_dimension(theta, eps, tau).d_tau
        prior = PriorParams(prior_template.kappa, prior_template.varkappa, eps)
        dhats = np.zeros(R, dtype=int)
        shats = []
        outside = 0
        for r in range(R):
            obs = simulate(theta, eps, cfg.n, (cfg.master_seed, e_idx * R + r))
            d_hat = map_dimension(obs, prior)
            dhats[r] = d_hat
            if d_hat >= 2:
                shats.append(smoothness_estimate(d_hat, eps))
            if d_hat < c_lo * d_tau or d_hat > c_hi * d_tau:
                outside += 1
        L = math.log(eps**-2)
        rows.append(
            SmoothnessRow(
                eps=eps,
                d_tau=d_tau,
                dhat_median=float(np.median(dhats)),
                shat_median=float(np.median(shats)) if shats else math.nan,
                median_abs_err=(
                    float(np.median([abs(v - s) for v in shats])) if shats else math.nan
                ),
                n_undefined=R - len(shats),
                outside_freq=outside / R,
                ratio=d_tau * (tau * eps**-2) ** (-1.0 / (2.0 * s + 1.0)),
                bracket_lo=s - math.log(class_params.Q) / L,
                bracket_hi=s + math.log(1.0 / class_params.alpha) / L,
            )
        )
    meta = {
        "kind": "smoothness",
        "s": s,
        "Q": class_params.Q,
        "alpha": class_params.alpha,
        "rho0": class_params.rho0,
        "N0": class_params.N0,
        "tau": tau,
        "kappa": prior_template.kappa,
        "varkappa": prior_template.varkappa,
        "A": prior_template.A,
        "signal_N": int(signal_N),
        "c_lo": c_lo,
        "c_hi": c_hi,
        "R": R,
        "n": cfg.n,
        "master_seed": cfg.master_seed,
        "eps_grid": ",".join(f"{e:g}" for e in eps_grid),
    }
    return SmoothnessReport(rows=tuple(rows), meta=meta)


def _meta_line(meta: dict) -> str:
    parts = [f"{k}={_fmt(v)}" for k, v in meta.items()]
    return f"{REPORT_HEADER_PREFIX} " + " ".join(parts)


def report_csv(report) -> str:
    """Deterministic CSV for any report type, config carried in the header."""
    if isinstance(report, ExperimentReport):
        lines = [_meta_line(report.meta)]
        lines.append("offset,posterior_mass,mass_se,dhat_freq,freq_se,theory_bound,vacuous,satisfied")
        for r in report.rows:
            lines.append(
                f"{r.offset},{r.posterior_mass:.17g},{r.mass_se:.17g},"
                f"{r.dhat_freq:.17g},{r.freq_se:.17g},{r.theory_bound:.17g},"
                f"{int(r.vacuous)},{int(r.satisfied)}"
            )
        return "\n".join(lines) + "\n"
    if isinstance(report, LowerBoundReport):
        lines = [_meta_line(report.meta)]
        lines.append("p1,se1,p2,se2,sum,combined_se,delta_prime,satisfied")
        lines.append(
            f"{report.p1:.17g},{report.se1:.17g},{report.p2:.17g},{report.se2:.17g},"
            f"{report.total:.17g},{report.combined_se:.17g},"
            f"{report.delta_prime:.17g},{int(report.satisfied)}"
        )
        return "\n".join(lines) + "\n"
    if isinstance(report, SmoothnessReport):
        lines = [_meta_line(report.meta)]
        lines.append(
            "eps,d_tau,dhat_median,shat_median,median_abs_err,n_undefined,"
            "outside_freq,ratio,bracket_lo,bracket_hi"
        )
        for r in report.rows:
            lines.append(
                f"{r.eps:.17g},{r.d_tau},{r.dhat_median:.17g},{r.shat_median:.17g},"
                f"{r.median_abs_err:.17g},{r.n_undefined},{r.outside_freq:.17g},"
                f"{r.ratio:.17g},{r.bracket_lo:.17g},{r.bracket_hi:.17g}"
            )
        lines.append(
            "# note: the bracket columns are descriptive endpoints only; the "
            "direction of the underlying probability statement is ambiguous, so "
            "the asserted checks are the consistency rate and the interval "
            "frequency, not the bracket itself"
        )
        return "\n".join(lines) + "\n"
    raise TypeError(f"unknown report type: {type(report)!r}")
