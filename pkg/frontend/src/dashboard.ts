/** Ranking dashboard: observations + prior set in, scored table out. */

import type { EngineClient } from "./api.js";
import type {
  ExpertEntryDoc,
  RankRequest,
  RankResponse,
  SpecDoc,
} from "./types.js";

/** Parse the one-column observation format: optional "y" header, blank
 * lines ignored, anything else must be a number. */
export function parseObservationsCsv(text: string): number[] {
  const values: number[] = [];
  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i += 1) {
    const line = (lines[i] as string).trim();
    if (line === "") {
      continue;
    }
    if (values.length === 0 && line.toLowerCase() === "y") {
      continue;
    }
    const value = Number(line);
    if (!Number.isFinite(value)) {
      throw new Error(`line ${i + 1}: cannot parse ${JSON.stringify(line)} as a number`);
    }
    values.push(value);
  }
  if (values.length === 0) {
    throw new Error("no observations found");
  }
  return values;
}

export function buildRankRequest(
  observations: number[],
  experts: ExpertEntryDoc[],
  benchmark: SpecDoc,
): RankRequest {
  return { observations, benchmark, experts, method: "analytic" };
}

export interface RankedRow {
  rank: number;
  label: string;
  kl: string;
  dac: string;
  conflict: boolean;
}

function fmtScore(value: number | null, infinite: boolean): string {
  if (infinite || value === null) {
    return "inf";
  }
  return value.toFixed(3);
}

/** Table rows in rank order (the engine already sorts entries by rank). */
export function rankedRows(
  response: RankResponse,
  labels: Map<string, string>,
): RankedRow[] {
  return response.entries.map((entry) => ({
    rank: entry.rank,
    label: labels.get(entry.expert_id) ?? entry.expert_id,
    kl: fmtScore(entry.kl, entry.infinite),
    dac: fmtScore(entry.dac, entry.infinite),
    conflict: entry.conflict,
  }));
}

export function renderRankingTable(rows: RankedRow[]): string {
  const body = rows
    .map(
      (row) =>
        `<tr><td>${row.rank}</td><td>${row.label}</td><td>${row.kl}</td>` +
        `<td>${row.dac}</td><td>${
          row.conflict
            ? '<span class="badge conflict">conflict</span>'
            : '<span class="badge ok">ok</span>'
        }</td></tr>`,
    )
    .join("");
  return (
    `<table class="ranking"><thead><tr><th>rank</th><th>expert</th>` +
    `<th>KL</th><th>score</th><th>prior-data</th></tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}

/** The engine's benchmark note, surfaced only when it warns. */
export function stabilityWarning(response: RankResponse): string | null {
  return response.stability_note.includes("uninformative: no")
    ? response.stability_note
    : null;
}

export interface OverlayCurve {
  label: string;
  cssClass: string;
  xs: number[];
  densities: number[];
}

/** Densities of every relevant distribution on one shared grid: each
 * expert prior, the benchmark, and the fitted posterior. */
export async function fetchOverlayCurves(
  client: EngineClient,
  response: RankResponse,
  experts: ExpertEntryDoc[],
  points = 161,
): Promise<OverlayCurve[]> {
  const specs: Array<{ label: string; cssClass: string; spec: SpecDoc }> = [
    ...experts.map((expert, i) => ({
      label: expert.label,
      cssClass: `expert-${i}`,
      spec: { family: expert.family, parameters: expert.parameters },
    })),
    {
      label: "benchmark",
      cssClass: "benchmark",
      spec: response.benchmark,
    },
    {
      label: "posterior",
      cssClass: "posterior",
      spec: {
        family: "normal",
        parameters: { mean: response.posterior.mean, sd: response.posterior.sd },
      },
    },
  ];
  let lo = Number.POSITIVE_INFINITY;
  let hi = Number.NEGATIVE_INFINITY;
  for (const { spec } of specs) {
    if (spec.family === "uniform") {
      continue; // keep wide reference supports from flattening the view
    }
    const [a, b] = await client.quantiles(spec, [0.001, 0.999]);
    lo = Math.min(lo, a as number);
    hi = Math.max(hi, b as number);
  }
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) {
    const [a, b] = await client.quantiles(specs[specs.length - 1]!.spec, [0.001, 0.999]);
    lo = a as number;
    hi = b as number;
  }
  const xs: number[] = [];
  for (let i = 0; i < points; i += 1) {
    xs.push(lo + ((hi - lo) * i) / (points - 1));
  }
  const curves: OverlayCurve[] = [];
  for (const { label, cssClass, spec } of specs) {
    curves.push({ label, cssClass, xs, densities: await client.density(spec, xs) });
  }
  return curves;
}
