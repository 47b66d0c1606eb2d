"""Effective-dimension inference for the Gaussian sequence model.

Observing X_i = theta_i + eps * xi_i, the library computes the oracle
effective dimension of theta, an empirical-Bayes posterior over the
dimension with its MAP/penalized estimator, closed-form concentration
rate functions, and Monte Carlo experiments that check the resulting
one-sided, two-sided and lower-bound guarantees at desk scale.
"""

from .rates import (
    POSITIVITY_TOL,
    RateEvaluation,
    f,
    f_sup,
    g,
    g_sup,
    penalty_constant,
)
from .signals import (
    MembershipReport,
    Observation,
    Signal,
    SmoothnessClassParams,
    adversarial_pair,
    check_membership,
    load_signal,
    power_law_signal,
    save_signal,
    self_similar_signal,
    simulate,
    zero_signal,
)
from .oracle import (
    HeadConditionReport,
    OracleResult,
    TailConditionReport,
    effective_dimension,
    head_condition,
    risk,
    risk_curve_csv,
    tail_condition,
    tau_scaling_identity_check,
)
from .posterior import (
    PosteriorOverD,
    PriorParams,
    crit,
    log_weights,
    map_dimension,
    pmf,
    pmf_csv,
    posterior_mean_theta,
    region_mass,
)
from .experiments import (
    BoundRow,
    ExperimentReport,
    LowerBoundReport,
    MCConfig,
    SmoothnessReport,
    SmoothnessRow,
    lower_bound_experiment,
    lower_bound_floor,
    mc_overshoot,
    mc_two_sided,
    mc_undershoot,
    report_csv,
    smoothness_estimate,
    smoothness_sweep,
)

__version__ = "0.1.0"
