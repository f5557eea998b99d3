"""Support-line multiple testing with exact max-lfdr control.

The support-line procedure rejects the p-values up to the last minimizer of
p_(k) - q k / m, the touch point of the slope-q/m support line of the sorted
p-values.  Under a two-groups model with a non-increasing alternative
density it controls the expected lfdr of its least promising rejection at
exactly pi0 * q.  This package bundles the procedure and its companions
(BH, adaptive variants, oracle), the Grenander-estimator characterization,
analytic two-groups models, limiting-law predictions, and a reproducible
Monte Carlo engine.
"""

from .sample_core import (
    EmptySampleError,
    GrenanderFit,
    PValueSample,
    ecdf,
    grenander_density,
    lcm_fit,
    lfdr_hat,
    order_statistics,
)
from .procedures import (
    LevelError,
    RejectionResult,
    adaptive_sl_reject,
    bh_reject,
    fixed_threshold_reject,
    sl_reject,
    sl_reject_at_estimated_level,
    sl_threshold_via_grenander,
    storey_pi0,
    storey_zeta_schedule,
)
from .models import (
    CauchyLocation,
    Lehmann,
    NonMonotoneError,
    NormalLocation,
    TwoGroupsSpec,
    bh_equivalent_level,
    f1,
    mixture_F,
    mixture_f,
    mixture_f_prime,
    model_preset,
    oracle_threshold,
    population_threshold_bh,
    population_threshold_tq,
    rho_regret,
    true_lfdr,
)
from .metrics import (
    LabeledOutcome,
    fdp,
    last_rejection_null,
    realized_max_lfdr,
    regret_vs_oracle,
    weighted_loss,
)
from .asymptotics import (
    CHERNOFF_SIGMA,
    CHERNOFF_TAIL_AT_ONE,
    CHERNOFF_VARIANCE,
    CHERNOFF_Z95,
    GlobalNullLimit,
    LimitLaw,
    chernoff_cdf,
    chernoff_quantile,
    chernoff_sf,
    global_null_limit,
    lfdr_limit,
    lfdr_upper_percentile,
    pi0_estimator_limit,
    regret_limit,
    regret_prediction,
    threshold_limit,
)
from .simulation import (
    AggregateRow,
    Autoregressive,
    Equicorrelated,
    Independent,
    ReplicateRecord,
    ReplicateTable,
    ScenarioConfig,
    aggregate,
    draw_location_means,
    replicate_rng,
    run_scenario,
    sample_correlated_normal,
    sample_two_groups,
    scenario_presets,
    write_aggregate_csv,
    write_aggregate_report,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
