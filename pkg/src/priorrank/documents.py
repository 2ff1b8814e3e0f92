"""File formats: prior-set documents, report documents, data and heatmap CSV.

Documents are JSON with sorted keys so identical inputs serialize to
identical bytes.  Infinite divergences are serialized as a null value plus
an ``infinite`` flag (strict JSON has no infinity literal).  Skew-normal
parameters are accepted in two spellings: canonical ``{location, scale,
shape}`` of the two-piece construction, or ``{mean, sd, shape}`` for
hyperparameters stated as moments of the skewed distribution, which are
converted on load via moment inversion.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Any, Sequence

from .distributions import (
    DistributionSpec,
    Normal,
    SkewNormal,
    Uniform,
    family,
    skew_normal_from_mean_sd,
)
from .divergence import QuadratureConfig
from .errors import ValidationError
from .posterior import Dataset, McmcDiagnostics, PosteriorSummary
from .ranking import DacEntry, DacReport, ExpertPrior

FORMAT_VERSION = "1"

_FAMILIES = ("normal", "uniform", "skew_normal")


# ---------------------------------------------------------------------------
# distribution specs <-> parameter dicts


def spec_to_params(spec: DistributionSpec) -> dict[str, float]:
    if isinstance(spec, Normal):
        return {"mean": spec.mean, "sd": spec.sd}
    if isinstance(spec, Uniform):
        return {"lower": spec.lower, "upper": spec.upper}
    if isinstance(spec, SkewNormal):
        return {"location": spec.location, "scale": spec.scale, "shape": spec.shape}
    raise ValidationError(f"unknown distribution spec {spec!r}")


def params_to_spec(fam: str, params: dict[str, Any]) -> DistributionSpec:
    if fam not in _FAMILIES:
        raise ValidationError(
            f"unknown family {fam!r}; expected one of {', '.join(_FAMILIES)}"
        )
    try:
        values = {k: float(v) for k, v in params.items()}
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"non-numeric parameter in {params!r}") from exc
    keys = set(values)
    if fam == "normal":
        if keys != {"mean", "sd"}:
            raise ValidationError("normal parameters must be {mean, sd}")
        return Normal(values["mean"], values["sd"])
    if fam == "uniform":
        if keys != {"lower", "upper"}:
            raise ValidationError("uniform parameters must be {lower, upper}")
        return Uniform(values["lower"], values["upper"])
    if keys == {"location", "scale", "shape"}:
        return SkewNormal(values["location"], values["scale"], values["shape"])
    if keys == {"mean", "sd", "shape"}:
        return skew_normal_from_mean_sd(values["mean"], values["sd"], values["shape"])
    raise ValidationError(
        "skew_normal parameters must be {location, scale, shape} or {mean, sd, shape}"
    )


def spec_to_doc(spec: DistributionSpec) -> dict[str, Any]:
    return {"family": family(spec), "parameters": spec_to_params(spec)}


def doc_to_spec(doc: dict[str, Any]) -> DistributionSpec:
    if not isinstance(doc, dict) or "family" not in doc or "parameters" not in doc:
        raise ValidationError("spec document must carry 'family' and 'parameters'")
    return params_to_spec(doc["family"], doc["parameters"])


def parse_spec_string(text: str) -> DistributionSpec:
    """Parse the inline grammar ``family:p1,p2[,p3]``.

    Positional parameters follow the document order: ``normal:mean,sd``,
    ``uniform:lower,upper``, ``skew_normal:location,scale,shape``.
    """
    head, sep, tail = text.partition(":")
    fam = head.strip()
    if not sep or fam not in _FAMILIES:
        raise ValidationError(
            f"cannot parse spec {text!r}; expected family:p1,p2[,p3] with family "
            f"in {', '.join(_FAMILIES)}"
        )
    try:
        values = [float(v) for v in tail.split(",")]
    except ValueError as exc:
        raise ValidationError(f"non-numeric parameter in spec {text!r}") from exc
    order = {
        "normal": ("mean", "sd"),
        "uniform": ("lower", "upper"),
        "skew_normal": ("location", "scale", "shape"),
    }[fam]
    if len(values) != len(order):
        raise ValidationError(
            f"{fam} takes {len(order)} parameters ({', '.join(order)}), "
            f"got {len(values)} in {text!r}"
        )
    return params_to_spec(fam, dict(zip(order, values)))


# ---------------------------------------------------------------------------
# prior-set documents


@dataclass(frozen=True)
class PriorSetDocument:
    experts: tuple[ExpertPrior, ...]
    parameterization_note: str = ""
    format_version: str = FORMAT_VERSION


def prior_set_to_doc(
    experts: Sequence[ExpertPrior], parameterization_note: str = ""
) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "parameterization_note": parameterization_note,
        "experts": [
            {
                "id": e.id,
                "label": e.label,
                "family": family(e.spec),
                "parameters": spec_to_params(e.spec),
            }
            for e in experts
        ],
    }


def doc_to_prior_set(doc: dict[str, Any]) -> PriorSetDocument:
    if not isinstance(doc, dict):
        raise ValidationError("prior-set document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ValidationError(
            f"unsupported prior-set format_version {version!r}; expected {FORMAT_VERSION!r}"
        )
    raw = doc.get("experts")
    if not isinstance(raw, list) or len(raw) == 0:
        raise ValidationError("prior-set document contains no experts")
    experts = []
    for item in raw:
        if not isinstance(item, dict):
            raise ValidationError("each expert entry must be a JSON object")
        missing = {"id", "family", "parameters"} - set(item)
        if missing:
            raise ValidationError(f"expert entry missing fields: {sorted(missing)}")
        spec = params_to_spec(item["family"], item["parameters"])
        experts.append(
            ExpertPrior(str(item["id"]), str(item.get("label", item["id"])), spec)
        )
    ids = [e.id for e in experts]
    if len(set(ids)) != len(ids):
        raise ValidationError("expert ids must be unique")
    return PriorSetDocument(
        experts=tuple(experts),
        parameterization_note=str(doc.get("parameterization_note", "")),
    )


def load_prior_set(path: str) -> PriorSetDocument:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    return doc_to_prior_set(doc)


def save_prior_set(
    path: str, experts: Sequence[ExpertPrior], parameterization_note: str = ""
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(prior_set_to_doc(experts, parameterization_note)))


# ---------------------------------------------------------------------------
# observation CSV: one numeric column, optional "y" header, blank lines ignored


def load_data_csv(path: str) -> Dataset:
    values: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if not values and text.lower() == "y":
                continue
            try:
                values.append(float(text))
            except ValueError as exc:
                raise ValidationError(
                    f"{path}:{lineno}: cannot parse {text!r} as a number"
                ) from exc
    if not values:
        raise ValidationError(f"{path}: no observations found")
    return Dataset.from_sequence(values)


def save_data_csv(path: str, data: Dataset, header: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write("y\n")
        for v in data.observations:
            fh.write(f"{float(v)!r}\n")


# ---------------------------------------------------------------------------
# report documents


def _finite_or_none(value: float) -> float | None:
    return None if math.isinf(value) else value


def report_to_doc(
    report: DacReport,
    tool_version: str,
    input_digests: dict[str, str] | None = None,
) -> dict[str, Any]:
    post = report.posterior
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "tool_version": tool_version,
        "input_digests": dict(input_digests or {}),
        "posterior": {
            "mean": post.summary.mean,
            "sd": post.summary.sd,
            "method": post.method,
            "warnings": list(post.warnings),
        },
        "benchmark": spec_to_doc(report.benchmark),
        "benchmark_kl": report.benchmark_kl,
        "entries": [
            {
                "expert_id": e.expert_id,
                "kl": _finite_or_none(e.kl_value),
                "dac": _finite_or_none(e.dac_value),
                "infinite": math.isinf(e.kl_value),
                "conflict": e.conflict,
                "rank": e.rank,
            }
            for e in report.entries
        ],
        "quadrature": {
            "relative_tolerance": report.quadrature.relative_tolerance,
            "max_subdivisions": report.quadrature.max_subdivisions,
            "support_epsilon": report.quadrature.support_epsilon,
            "density_floor": report.quadrature.density_floor,
        },
        "provenance": dict(report.provenance),
    }
    if post.diagnostics is not None:
        d = post.diagnostics
        doc["posterior"]["diagnostics"] = {
            "r_hat": d.r_hat,
            "chains": d.chains,
            "iterations": d.iterations,
            "burn_in": d.burn_in,
            "seed": d.seed,
            "acceptance_rate": d.acceptance_rate,
            "converged": d.converged,
        }
    return doc


def doc_to_report(doc: dict[str, Any]) -> DacReport:
    """Rehydrate a report document into in-memory objects."""
    post_doc = doc["posterior"]
    diagnostics = None
    if "diagnostics" in post_doc:
        diagnostics = McmcDiagnostics(**post_doc["diagnostics"])
    posterior = PosteriorSummary(
        Normal(post_doc["mean"], post_doc["sd"]),
        post_doc["method"],
        diagnostics,
        tuple(post_doc.get("warnings", ())),
    )
    entries = tuple(
        DacEntry(
            expert_id=e["expert_id"],
            kl_value=math.inf if e["infinite"] else e["kl"],
            dac_value=math.inf if e["infinite"] else e["dac"],
            conflict=e["conflict"],
            rank=e["rank"],
        )
        for e in doc["entries"]
    )
    quad = doc["quadrature"]
    return DacReport(
        posterior=posterior,
        benchmark=doc_to_spec(doc["benchmark"]),
        benchmark_kl=doc["benchmark_kl"],
        entries=entries,
        quadrature=QuadratureConfig(
            relative_tolerance=quad["relative_tolerance"],
            max_subdivisions=quad["max_subdivisions"],
            support_epsilon=quad["support_epsilon"],
            density_floor=quad["density_floor"],
        ),
        provenance=dict(doc["provenance"]),
    )


def save_report(path: str, doc: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(doc))


def load_report(path: str) -> dict[str, Any]:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# heatmap CSV


def heatmap_rows(result, benchmark_id: str):
    """Yield ``(mean, sd, benchmark_id, dac)`` rows, mean-major."""
    matrix = result.matrices[benchmark_id]
    for i, mean in enumerate(result.means):
        for j, sd in enumerate(result.sds):
            yield float(mean), float(sd), benchmark_id, float(matrix[i, j])


def write_heatmap_csv(path: str, result, benchmark_id: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("mean,sd,benchmark_id,dac\n")
        for mean, sd, name, dac in heatmap_rows(result, benchmark_id):
            fh.write(f"{mean!r},{sd!r},{name},{dac!r}\n")


# ---------------------------------------------------------------------------
# helpers


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON: sorted keys, repr-exact floats, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def file_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return "sha256:" + h.hexdigest()
