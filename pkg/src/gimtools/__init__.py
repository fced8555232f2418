"""gimtools: Gini-family inequality measures from income samples.

The package estimates the generalized inequality measure

    GIM(v) = E(max(X_1..X_v) - min(X_1..X_v)) / E(max(X_1..X_v) + min(X_1..X_v))

(the Gini index when v = 2) with two estimators — an unbiased U-statistic
and an empirical-distribution plug-in — plus variance/confidence-interval
machinery, theoretical values for exponential/Pareto/lognormal families,
a reproducible Monte Carlo bias/MSE harness, and a CSV-facing CLI (``gim``).
"""

__version__ = "0.1.0"

from .distributions import (
    Exponential,
    Lognormal,
    Pareto,
    SeededStream,
    draw_sample,
    theoretical_extremes,
    theoretical_gim,
)
from .errors import (
    EmptyColumn,
    EmptyGrid,
    EmptySample,
    EnumerationTooLarge,
    GimError,
    InvalidBandwidth,
    InvalidLevel,
    InvalidProbability,
    NegativeIncome,
    NonFinite,
    OrderExceedsSample,
    OutOfSupport,
    ParseError,
    QuadratureNoConvergence,
    SampleTooSmall,
    ZeroMean,
)
from .inference import (
    VarianceEstimate,
    confidence_interval,
    edf_numerator_variance,
    jackknife_variance,
    leave_one_out,
    projection_variance,
    ustat_variance,
)
from .measures import (
    GimEstimate,
    PremiaReport,
    extended_gini,
    gim_edf,
    gim_ustat,
    gim_ustat_naive,
    gini_ustat,
    gmd,
    max_moment_u,
    min_moment_u,
    subset_weights,
)
from .reporting import (
    DescriptiveStats,
    ReportRow,
    describe,
    emit_density,
    ingest_csv,
    report,
)
from .samples import IncomeSample, make_sample
from .simulation import (
    SimCell,
    SimResult,
    default_grid,
    emit_table,
    load_grid_config,
    run_cell,
    run_grid,
)

__all__ = [
    "__version__",
    # samples
    "IncomeSample",
    "make_sample",
    # measures
    "GimEstimate",
    "PremiaReport",
    "subset_weights",
    "max_moment_u",
    "min_moment_u",
    "gmd",
    "gini_ustat",
    "extended_gini",
    "gim_ustat",
    "gim_ustat_naive",
    "gim_edf",
    # inference
    "VarianceEstimate",
    "projection_variance",
    "ustat_variance",
    "jackknife_variance",
    "leave_one_out",
    "confidence_interval",
    "edf_numerator_variance",
    # distributions
    "Exponential",
    "Pareto",
    "Lognormal",
    "SeededStream",
    "draw_sample",
    "theoretical_extremes",
    "theoretical_gim",
    # simulation
    "SimCell",
    "SimResult",
    "run_cell",
    "run_grid",
    "default_grid",
    "load_grid_config",
    "emit_table",
    # reporting
    "DescriptiveStats",
    "ReportRow",
    "describe",
    "report",
    "ingest_csv",
    "emit_density",
    # errors
    "GimError",
    "EmptySample",
    "NegativeIncome",
    "NonFinite",
    "OrderExceedsSample",
    "SampleTooSmall",
    "ZeroMean",
    "EnumerationTooLarge",
    "InvalidLevel",
    "QuadratureNoConvergence",
    "OutOfSupport",
    "InvalidProbability",
    "EmptyGrid",
    "ParseError",
    "EmptyColumn",
    "InvalidBandwidth",
]
