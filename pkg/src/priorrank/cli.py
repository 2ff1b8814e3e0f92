"""Command-line interface: rank, sensitivity, kl, serve.

Exit codes: 0 success, 2 usage or input errors, 3 numerical failures.
All outputs are reproducible from (inputs, seed, tool version); reports
carry no wall-clock timestamps so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .distributions import Normal, Uniform
from .divergence import QuadratureConfig, kl
from .documents import (
    file_digest,
    load_data_csv,
    load_prior_set,
    parse_spec_string,
    report_to_doc,
    save_report,
    write_heatmap_csv,
)
from .errors import UndefinedRatioError, ValidationError
from .posterior import (
    Dataset,
    McmcConfig,
    fit_posterior_analytic,
    fit_posterior_flat,
    fit_posterior_mcmc,
)
from .ranking import evaluate, rank_stability_note
from .sensitivity import DrawSpec, GridConfig, conflict_fraction, default_benchmarks, run_grid
from .service import serve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def _fmt(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.4f}"


def _cmd_rank(args: argparse.Namespace) -> int:
    data = load_data_csv(args.data)
    prior_set = load_prior_set(args.priors)
    benchmark = parse_spec_string(args.benchmark)
    quad = QuadratureConfig(relative_tolerance=args.quad_tol)
    if args.method == "analytic":
        if isinstance(benchmark, Uniform):
            posterior = fit_posterior_analytic(data, benchmark)
        else:
            # non-uniform benchmarks serve as the reference measure only;
            # the posterior stays the data-dominated flat fit
            posterior = fit_posterior_flat(data)
    else:
        if not isinstance(benchmark, Uniform):
            raise ValidationError("the mcmc method requires a uniform benchmark")
        posterior = fit_posterior_mcmc(data, benchmark, McmcConfig(seed=args.seed))

    report = evaluate(
        posterior,
        benchmark,
        prior_set.experts,
        quad,
        parameterization_note=prior_set.parameterization_note or None,
    )
    labels = {e.id: e.label for e in prior_set.experts}

    header = f"{'expert':<20} {'KL':>10} {'DAC':>10} {'conflict':>9} {'rank':>5}"
    print(header)
    print("-" * len(header))
    for entry in report.entries:
        print(
            f"{labels[entry.expert_id]:<20} {_fmt(entry.kl_value):>10} "
            f"{_fmt(entry.dac_value):>10} {'yes' if entry.conflict else 'no':>9} "
            f"{entry.rank:>5}"
        )
    print(f"benchmark KL: {report.benchmark_kl:.4f}   posterior: "
          f"N({posterior.summary.mean:.4f}, sd={posterior.summary.sd:.4f}), "
          f"method={posterior.method}")
    print(rank_stability_note(report))
    for warning in report.provenance.get("warnings", []):
        print(f"warning: {warning}")

    if args.out:
        digests = {"data": file_digest(args.data), "priors": file_digest(args.priors)}
        save_report(args.out, report_to_doc(report, __version__, digests))
        print(f"report written to {args.out}")
    return EXIT_OK


def _cmd_sensitivity(args: argparse.Namespace) -> int:
    if args.data:
        data = load_data_csv(args.data)
        cfg_data: Dataset | DrawSpec = data
    else:
        cfg_data = DrawSpec(Normal(0.0, 1.0), args.n, args.seed)
    mean_steps = args.steps if args.steps is not None else 81
    sd_steps = args.sd_steps if args.sd_steps is not None else (
        args.steps if args.steps is not None else 30
    )
    cfg = GridConfig(
        data=cfg_data,
        mean_steps=mean_steps,
        sd_steps=sd_steps,
        benchmarks=default_benchmarks(),
        quadrature=QuadratureConfig(relative_tolerance=args.quad_tol),
        refit_per_benchmark=args.refit,
    )
    result = run_grid(cfg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, _ in cfg.benchmarks:
        if name in result.errors:
            print(f"benchmark {name}: error: {result.errors[name]}", file=sys.stderr)
            continue
        path = out_dir / f"heatmap_{name}.csv"
        write_heatmap_csv(str(path), result, name)
        frac = conflict_fraction(result.matrices[name])
        print(
            f"benchmark {name}: KL={result.benchmark_kls[name]:.4f} "
            f"conflict_fraction={frac:.4f} -> {path}"
        )
    summary = result.data_summary
    print(
        f"data: n={summary['n']} mean={summary['mean']:.4f} sd={summary['sd']:.4f}; "
        f"grid {cfg.mean_steps} means x {cfg.sd_steps} sds"
    )
    return EXIT_OK


def _cmd_kl(args: argparse.Namespace) -> int:
    p = parse_spec_string(args.p)
    q = parse_spec_string(args.q)
    res = kl(p, q, QuadratureConfig(relative_tolerance=args.quad_tol))
    value = "inf" if res.infinite else repr(res.value)
    print(
        f"kl={value} estimated_error={res.estimated_error!r} "
        f"truncated_mass={res.truncated_mass!r} warning={res.warning}"
    )
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    serve(args.host, args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="priorrank",
        description="Score and rank expert priors against observed data",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", help="rank expert priors against a dataset")
    rank.add_argument("--data", required=True, help="CSV with one numeric column")
    rank.add_argument("--priors", required=True, help="prior-set JSON document")
    rank.add_argument(
        "--benchmark", required=True, help="inline spec, e.g. uniform:0,5"
    )
    rank.add_argument("--method", choices=("analytic", "mcmc"), default="analytic")
    rank.add_argument("--seed", type=int, default=0)
    rank.add_argument("--out", help="write the report document here")
    rank.add_argument("--quad-tol", type=float, default=1e-8)
    rank.set_defaults(func=_cmd_rank)

    sens = sub.add_parser(
        "sensitivity", help="benchmark-influence sweep over a prior lattice"
    )
    sens.add_argument("--out-dir", default=".", help="directory for heatmap CSVs")
    sens.add_argument("--data", help="CSV dataset (default: seeded standard normal)")
    sens.add_argument("--n", type=int, default=100, help="generated sample size")
    sens.add_argument("--seed", type=int, default=1)
    sens.add_argument("--steps", type=int, help="mean-axis steps (default 81)")
    sens.add_argument("--sd-steps", type=int, help="sd-axis steps (default 30)")
    sens.add_argument("--quad-tol", type=float, default=1e-8)
    sens.add_argument(
        "--refit",
        action="store_true",
        help="refit the posterior under each benchmark instead of sharing "
        "the data-dominated posterior",
    )
    sens.set_defaults(func=_cmd_sensitivity)

    klp = sub.add_parser("kl", help="divergence between two inline specs")
    klp.add_argument("--p", required=True, help="preferred distribution")
    klp.add_argument("--q", required=True, help="approximating distribution")
    klp.add_argument("--quad-tol", type=float, default=1e-8)
    klp.set_defaults(func=_cmd_kl)

    srv = sub.add_parser("serve", help="run the stateless HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8080)
    srv.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UndefinedRatioError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
