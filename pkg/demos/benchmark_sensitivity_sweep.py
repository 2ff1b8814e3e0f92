"""How the benchmark choice moves the conflict threshold.

One dataset (100 standard-normal draws), a lattice of normal priors, and
four benchmark choices: vague normal (A), sharp accurate normal (B), wide
uniform (C), sharp misplaced normal (D).  Uninformative benchmarks leave
the ranking of priors untouched while informative ones move both the
scores and the conflict region.  Heatmap CSVs land next to this script.
"""

from pathlib import Path

from priorrank import (
    DrawSpec,
    GridConfig,
    Normal,
    compare_rank_stability,
    conflict_fraction,
    run_grid,
)
from priorrank.documents import write_heatmap_csv

cfg = GridConfig(data=DrawSpec(Normal(0.0, 1.0), 100, seed=1))
result = run_grid(cfg)

summary = result.data_summary
print(
    f"data: n={summary['n']} mean={summary['mean']:.3f} sd={summary['sd']:.3f}; "
    f"posterior N({result.posterior.summary.mean:.3f}, "
    f"sd={result.posterior.summary.sd:.3f})"
)
print(f"grid: {len(result.means)} means x {len(result.sds)} sds\n")

out_dir = Path(__file__).resolve().parent / "heatmaps"
out_dir.mkdir(exist_ok=True)
print(f"{'panel':<6} {'benchmark KL':>13} {'conflict cells':>15}")
for name, _spec in cfg.benchmarks:
    frac = conflict_fraction(result.matrices[name])
    write_heatmap_csv(str(out_dir / f"heatmap_{name}.csv"), result, name)
    print(f"{name:<6} {result.benchmark_kls[name]:>13.3f} {frac:>14.1%}")

tau_ac = compare_rank_stability(result.matrices["A"], result.matrices["C"])
tau_ab = compare_rank_stability(result.matrices["A"], result.matrices["B"])
print(
    f"\nrank agreement across panels (Kendall tau over all cells):\n"
    f"  A vs C (both uninformative): {tau_ac['kendall_tau']:.6f}\n"
    f"  A vs B (B informative):      {tau_ab['kendall_tau']:.6f}"
)
print(
    "\nthe uninformative pair ranks every cell identically even though their\n"
    "conflict fractions differ; the informative benchmarks rescale and shift\n"
    "the conflict region instead."
)
print(f"\nheatmap CSVs written to {out_dir}/")
