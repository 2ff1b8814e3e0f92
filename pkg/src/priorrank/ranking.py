"""Agreement scoring and ranking of expert priors.

Each expert prior is scored by the divergence of that prior from the
reference posterior, normalized by the divergence of the benchmark prior
itself: ``score_d = KL(posterior || prior_d) / KL(posterior || benchmark)``.
A score strictly above 1 flags prior-data conflict (the expert loses more
information against the data than knowing nothing beyond the benchmark
would); ranks follow ascending scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from .distributions import DistributionSpec, Normal, Uniform, SkewNormal
from .divergence import DEFAULT_QUADRATURE, QuadratureConfig, kl
from .errors import UndefinedRatioError, ValidationError
from .posterior import PosteriorSummary

DEFAULT_PARAMETERIZATION_NOTE = (
    "skew-normal priors given as (mean, sd, shape) are converted to "
    "two-piece (location, scale, shape) by moment inversion"
)

# quadrature returns ~1e-16 rather than exact zero when the benchmark merely
# differs from the posterior in the last ulp; ratios against anything this
# small are meaningless, so it counts as zero
ZERO_DIVERGENCE_FLOOR = 1e-9


@dataclass(frozen=True)
class ExpertPrior:
    id: str
    label: str
    spec: DistributionSpec

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("expert id must be nonempty")


@dataclass(frozen=True)
class DacEntry:
    expert_id: str
    kl_value: float
    dac_value: float
    conflict: bool
    rank: int


@dataclass(frozen=True)
class DacReport:
    posterior: PosteriorSummary
    benchmark: DistributionSpec
    benchmark_kl: float
    entries: tuple[DacEntry, ...]
    quadrature: QuadratureConfig
    provenance: dict[str, Any] = field(default_factory=dict)

    def entry_for(self, expert_id: str) -> DacEntry:
        for e in self.entries:
            if e.expert_id == expert_id:
                return e
        raise KeyError(expert_id)


def evaluate(
    posterior: PosteriorSummary,
    benchmark: DistributionSpec,
    experts: Sequence[ExpertPrior],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    parameterization_note: str | None = None,
    generated_at: str | None = None,
) -> DacReport:
    """Score every expert prior against the reference posterior.

    Scores with infinite divergence (an expert prior assigning zero
    density where the posterior has mass) are legal: they flag conflict
    and rank last.  Ties rank in input order, recorded in provenance.
    """
    if len(experts) == 0:
        raise ValidationError("at least one expert prior is required")
    ids = [e.id for e in experts]
    if len(set(ids)) != len(ids):
        raise ValidationError("expert ids must be unique")

    bench_res = kl(posterior.summary, benchmark, cfg)
    if bench_res.infinite:
        raise UndefinedRatioError(
            "benchmark divergence is infinite; the benchmark does not cover "
            "the posterior and the agreement ratio is undefined"
        )
    if bench_res.value <= ZERO_DIVERGENCE_FLOOR:
        raise UndefinedRatioError(
            "benchmark divergence is zero (benchmark coincides with the "
            "posterior); the agreement ratio is undefined"
        )
    benchmark_kl = bench_res.value

    warnings: list[str] = list(posterior.warnings)
    if bench_res.warning:
        warnings.append("benchmark divergence quadrature hit its subdivision budget")

    kl_values: list[float] = []
    for expert in experts:
        res = kl(posterior.summary, expert.spec, cfg)
        if res.warning:
            warnings.append(
                f"divergence quadrature for expert {expert.id!r} hit its "
                "subdivision budget"
            )
        kl_values.append(math.inf if res.infinite else res.value)

    dac_values = [v / benchmark_kl for v in kl_values]
    order = sorted(range(len(experts)), key=lambda i: (dac_values[i], i))
    entries = tuple(
        DacEntry(
            expert_id=experts[i].id,
            kl_value=kl_values[i],
            dac_value=dac_values[i],
            conflict=dac_values[i] > 1.0,
            rank=pos + 1,
        )
        for pos, i in enumerate(order)
    )
    provenance: dict[str, Any] = {
        "parameterization": parameterization_note or DEFAULT_PARAMETERIZATION_NOTE,
        "tie_break": "input order",
        "posterior_method": posterior.method,
        "warnings": warnings,
        "generated_at": generated_at,
    }
    if posterior.diagnostics is not None:
        provenance["seeds"] = {"mcmc": posterior.diagnostics.seed}
        provenance["r_hat"] = posterior.diagnostics.r_hat
    return DacReport(
        posterior=posterior,
        benchmark=benchmark,
        benchmark_kl=benchmark_kl,
        entries=entries,
        quadrature=cfg,
        provenance=provenance,
    )


def rank_stability_note(report: DacReport) -> str:
    """Annotate whether the benchmark looks uninformative for this posterior.

    A normal benchmark narrower than 10 posterior standard deviations, or a
    uniform benchmark whose support fails to cover the posterior mean plus
    or minus 10 standard deviations, can move the conflict threshold and
    even the ranking; the check never alters any value.
    """
    post = report.posterior.summary
    bench = report.benchmark
    if isinstance(bench, Normal):
        ok = not bench.sd < 10.0 * post.sd
        detail = f"benchmark sd {bench.sd:g} vs 10 x posterior sd {10.0 * post.sd:g}"
    elif isinstance(bench, Uniform):
        lo, hi = post.mean - 10.0 * post.sd, post.mean + 10.0 * post.sd
        ok = bench.lower <= lo and bench.upper >= hi
        detail = (
            f"benchmark support [{bench.lower:g}, {bench.upper:g}] vs posterior "
            f"mean +/- 10 sd [{lo:g}, {hi:g}]"
        )
    elif isinstance(bench, SkewNormal):
        ok = not bench.scale < 10.0 * post.sd
        detail = (
            f"benchmark scale {bench.scale:g} vs 10 x posterior sd {10.0 * post.sd:g}"
        )
    else:
        raise ValidationError(f"unknown benchmark spec {bench!r}")
    if ok:
        return f"benchmark uninformative: yes ({detail})"
    return (
        f"benchmark uninformative: no ({detail}); the benchmark is informative, "
        "so conflict flags and rankings may depend on its choice"
    )
