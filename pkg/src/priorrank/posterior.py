"""Reference posterior fitting under an uninformative benchmark prior.

The reference posterior is what a neutral observer would believe after
seeing only the data; every divergence downstream is measured from it.
Under an uninformative benchmark the normal-model posterior for the mean
is ``N(ybar, s^2/N)`` (sample variance plugged in); the MCMC path samples
mean and scale jointly with a random-walk Metropolis kernel and reports
the Gelman-Rubin potential scale reduction factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .distributions import Normal, Uniform
from .errors import ValidationError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Dataset:
    """Ordered sequence of real-valued observations."""

    observations: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.observations) == 0:
            raise ValidationError("dataset must contain at least one observation")
        if not all(math.isfinite(v) for v in self.observations):
            raise ValidationError("all observations must be finite")

    @classmethod
    def from_sequence(cls, values) -> "Dataset":
        return cls(tuple(float(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.observations)

    def mean(self) -> float:
        return float(np.mean(self.observations))

    def sd(self) -> float:
        """Sample standard deviation with denominator N - 1."""
        return float(np.std(self.observations, ddof=1))


@dataclass(frozen=True)
class McmcConfig:
    chains: int = 4
    iterations_per_chain: int = 25000
    burn_in: int = 1000
    proposal_sd: float | None = None  # None -> data sd / sqrt(N)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.chains < 2:
            raise ValidationError("at least 2 chains are required")
        if self.burn_in < 0:
            raise ValidationError("burn_in must be >= 0")
        if self.burn_in >= self.iterations_per_chain:
            raise ValidationError("burn_in must be smaller than iterations_per_chain")
        if self.proposal_sd is not None and self.proposal_sd <= 0.0:
            raise ValidationError("proposal_sd must be > 0 when given")


@dataclass(frozen=True)
class McmcDiagnostics:
    r_hat: float
    chains: int
    iterations: int
    burn_in: int
    seed: int
    acceptance_rate: float
    converged: bool


@dataclass(frozen=True)
class PosteriorSummary:
    """Normal summary of the reference posterior plus fit provenance."""

    summary: Normal
    method: str  # "analytic" | "mcmc"
    diagnostics: McmcDiagnostics | None = None
    warnings: tuple[str, ...] = field(default=())


def _require_data(data: Dataset) -> tuple[float, float, int]:
    if data.n < 2:
        raise ValidationError("posterior fitting needs at least 2 observations")
    ybar, s = data.mean(), data.sd()
    if s <= 0.0:
        raise ValidationError("observations have zero variance")
    return ybar, s, data.n


def fit_posterior_analytic(data: Dataset, benchmark: Uniform) -> PosteriorSummary:
    """Normal-model posterior for the mean under a uniform benchmark.

    Returns ``N(ybar, s/sqrt(N))`` when the benchmark support holds
    essentially all of that posterior's mass; otherwise the posterior is
    truncated to the support, renormalized, and moment-matched back to a
    normal spec with a warning.
    """
    if not isinstance(benchmark, Uniform):
        raise ValidationError("analytic path requires a uniform benchmark")
    ybar, s, n = _require_data(data)
    se = s / math.sqrt(n)
    inside = float(ndtr((benchmark.upper - ybar) / se)) - float(
        ndtr((benchmark.lower - ybar) / se)
    )
    if inside >= 1.0 - 1e-12:
        return PosteriorSummary(Normal(ybar, se), "analytic")
    if inside <= 0.0:
        raise ValidationError(
            "benchmark support carries no posterior mass; cannot renormalize"
        )
    mean, sd = _truncated_normal_moments(ybar, se, benchmark.lower, benchmark.upper)
    return PosteriorSummary(
        Normal(mean, sd),
        "analytic",
        warnings=(
            "benchmark support truncates the posterior; "
            "summary is the moment-matched truncated normal",
        ),
    )


def fit_posterior_flat(data: Dataset) -> PosteriorSummary:
    """Data-dominated posterior ``N(ybar, s/sqrt(N))`` with no prior pull.

    Equals the analytic fit under any uniform benchmark wide enough to
    hold essentially all of the posterior mass.
    """
    ybar, s, n = _require_data(data)
    return PosteriorSummary(Normal(ybar, s / math.sqrt(n)), "analytic")


def fit_posterior_conjugate(data: Dataset, benchmark: Normal) -> PosteriorSummary:
    """Exact normal-normal update with the sample variance plugged in.

    Used for informative normal benchmarks where the posterior must feel
    the prior's pull; exactness keeps grid sweeps fast and deterministic.
    """
    if not isinstance(benchmark, Normal):
        raise ValidationError("conjugate path requires a normal benchmark")
    ybar, s, n = _require_data(data)
    prior_prec = 1.0 / (benchmark.sd * benchmark.sd)
    data_prec = n / (s * s)
    prec = prior_prec + data_prec
    mean = (benchmark.mean * prior_prec + ybar * data_prec) / prec
    return PosteriorSummary(Normal(mean, math.sqrt(1.0 / prec)), "analytic")


def _truncated_normal_moments(
    mu: float, sigma: float, lower: float, upper: float
) -> tuple[float, float]:
    a = (lower - mu) / sigma
    b = (upper - mu) / sigma
    z = float(ndtr(b)) - float(ndtr(a))
    pa = math.exp(-0.5 * a * a) * _INV_SQRT_2PI
    pb = math.exp(-0.5 * b * b) * _INV_SQRT_2PI
    mean = mu + sigma * (pa - pb) / z
    var = sigma * sigma * (1.0 + (a * pa - b * pb) / z - ((pa - pb) / z) ** 2)
    return mean, math.sqrt(var)


def fit_posterior_mcmc(
    data: Dataset, benchmark: Uniform, cfg: McmcConfig
) -> PosteriorSummary:
    """Random-walk Metropolis fit of the normal model (mean, log scale).

    Likelihood ``y_i ~ N(theta, sigma)`` with the benchmark uniform prior
    on theta and a scale-invariant ``1/sigma`` prior on sigma (flat in log
    sigma).  Pooled post-burn-in theta draws are moment-matched to the
    normal summary.  Chains draw from seeds spawned per chain, so each
    chain is independently reproducible.
    """
    if not isinstance(benchmark, Uniform):
        raise ValidationError("mcmc path requires a uniform benchmark")
    ybar, s, n = _require_data(data)
    lower, upper = benchmark.lower, benchmark.upper
    if upper < ybar - 10.0 * s or lower > ybar + 10.0 * s:
        raise ValidationError(
            "benchmark support does not intersect the data neighborhood"
        )
    se = s / math.sqrt(n)
    ss = float(np.sum((np.asarray(data.observations) - ybar) ** 2))
    step_theta = cfg.proposal_sd if cfg.proposal_sd is not None else se
    # asymptotic posterior sd of log sigma is 1/sqrt(2N)
    step_lam = 1.0 / math.sqrt(2.0 * n)
    iters = cfg.iterations_per_chain

    def log_post(theta: float, lam: float) -> float:
        return -n * lam - (ss + n * (theta - ybar) ** 2) / (2.0 * math.exp(2.0 * lam))

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.chains)
    kept: list[np.ndarray] = []
    accepted = 0
    for chain_seed in seeds:
        rng = np.random.default_rng(chain_seed)
        steps_t = rng.standard_normal(iters) * step_theta
        steps_l = rng.standard_normal(iters) * step_lam
        log_u = np.log(rng.random(iters))
        theta = min(max(ybar + 2.0 * se * rng.standard_normal(), lower), upper)
        lam = math.log(s) + 0.25 * rng.standard_normal()
        lp = log_post(theta, lam)
        draws = np.empty(iters)
        for i in range(iters):
            theta_new = theta + steps_t[i]
            if lower <= theta_new <= upper:
                lam_new = lam + steps_l[i]
                lp_new = log_post(theta_new, lam_new)
                if log_u[i] <= lp_new - lp:
                    theta, lam, lp = theta_new, lam_new, lp_new
                    accepted += 1
            draws[i] = theta
        kept.append(draws[cfg.burn_in :])

    pooled = np.concatenate(kept)
    mu1 = float(pooled.mean())
    sd1 = float(pooled.std(ddof=1))
    r_hat = gelman_rubin(kept)
    rate = accepted / (cfg.chains * iters)
    converged = r_hat <= 1.05
    warnings: list[str] = []
    if not converged:
        warnings.append(f"mcmc chains did not converge (r_hat={r_hat:.4f} > 1.05)")
    if not 0.1 <= rate <= 0.7:
        warnings.append(
            f"proposal tuning warning: acceptance rate {rate:.3f} outside [0.1, 0.7]"
        )
    diagnostics = McmcDiagnostics(
        r_hat=r_hat,
        chains=cfg.chains,
        iterations=iters,
        burn_in=cfg.burn_in,
        seed=cfg.seed,
        acceptance_rate=rate,
        converged=converged,
    )
    return PosteriorSummary(Normal(mu1, sd1), "mcmc", diagnostics, tuple(warnings))


def gelman_rubin(chains) -> float:
    """Potential scale reduction factor over equal-length chains.

    ``sqrt((W (n-1)/n + B/n) / W)`` with W the mean within-chain variance
    and B the between-chain variance of chain means times n.  Values below
    1 (possible when between-chain variance is tiny) are reported as 1.0.
    """
    arrays = [np.asarray(c, dtype=float) for c in chains]
    if len(arrays) < 2:
        raise ValidationError("gelman_rubin needs at least 2 chains")
    n = arrays[0].size
    if n < 10:
        raise ValidationError("chains must have at least 10 draws")
    if any(a.size != n for a in arrays):
        raise ValidationError("all chains must have equal lengths")
    m = np.stack(arrays)
    w = float(m.var(axis=1, ddof=1).mean())
    b = n * float(m.mean(axis=1).var(ddof=1))
    if w == 0.0:
        return 1.0 if b == 0.0 else math.inf
    return max(1.0, math.sqrt((w * (n - 1) / n + b / n) / w))
