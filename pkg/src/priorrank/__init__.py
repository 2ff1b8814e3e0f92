"""priorrank: score and rank expert-elicited priors against observed data.

The package measures how much information an expert's prior loses against
the posterior a neutral observer would reach from the data alone, relative
to what an uninformative benchmark prior loses.  Ratios above 1 flag
prior-data conflict; ascending ratios rank the experts.
"""

__version__ = "0.1.0"

from .distributions import (
    DistributionSpec,
    EffectiveSupport,
    Normal,
    SkewNormal,
    Uniform,
    cdf,
    density,
    effective_support,
    family,
    log_density,
    quantile,
    sample,
    skew_normal_from_mean_sd,
    skew_normal_mean_sd,
)
from .divergence import (
    DEFAULT_QUADRATURE,
    KlResult,
    QuadratureConfig,
    kl,
    kl_closed_normal,
    kl_closed_normal_uniform,
)
from .errors import (
    DomainError,
    PriorRankError,
    UndefinedRatioError,
    ValidationError,
)
from .posterior import (
    Dataset,
    McmcConfig,
    McmcDiagnostics,
    PosteriorSummary,
    fit_posterior_analytic,
    fit_posterior_conjugate,
    fit_posterior_flat,
    fit_posterior_mcmc,
    gelman_rubin,
)
from .ranking import (
    DacEntry,
    DacReport,
    ExpertPrior,
    evaluate,
    rank_stability_note,
)
from .sensitivity import (
    DrawSpec,
    GridConfig,
    GridResult,
    compare_rank_stability,
    conflict_fraction,
    default_benchmarks,
    grid_cell,
    run_grid,
)

__all__ = [
    "__version__",
    "DistributionSpec",
    "EffectiveSupport",
    "Normal",
    "SkewNormal",
    "Uniform",
    "cdf",
    "density",
    "effective_support",
    "family",
    "log_density",
    "quantile",
    "sample",
    "skew_normal_from_mean_sd",
    "skew_normal_mean_sd",
    "DEFAULT_QUADRATURE",
    "KlResult",
    "QuadratureConfig",
    "kl",
    "kl_closed_normal",
    "kl_closed_normal_uniform",
    "DomainError",
    "PriorRankError",
    "UndefinedRatioError",
    "ValidationError",
    "Dataset",
    "McmcConfig",
    "McmcDiagnostics",
    "PosteriorSummary",
    "fit_posterior_analytic",
    "fit_posterior_conjugate",
    "fit_posterior_flat",
    "fit_posterior_mcmc",
    "gelman_rubin",
    "DacEntry",
    "DacReport",
    "ExpertPrior",
    "evaluate",
    "rank_stability_note",
    "DrawSpec",
    "GridConfig",
    "GridResult",
    "compare_rank_stability",
    "conflict_fraction",
    "default_benchmarks",
    "grid_cell",
    "run_grid",
]
