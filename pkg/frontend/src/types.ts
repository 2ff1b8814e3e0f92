/** Wire types mirroring the engine's JSON document schemas. */

export type Family = "normal" | "uniform" | "skew_normal";

export interface SpecDoc {
  family: Family;
  parameters: Record<string, number>;
}

/** Skew-normal belief stated as moments of the skewed distribution. */
export function skewBelief(mean: number, sd: number, shape: number): SpecDoc {
  return { family: "skew_normal", parameters: { mean, sd, shape } };
}

export function normalSpec(mean: number, sd: number): SpecDoc {
  return { family: "normal", parameters: { mean, sd } };
}

export function uniformSpec(lower: number, upper: number): SpecDoc {
  return { family: "uniform", parameters: { lower, upper } };
}

export interface KlResponse {
  value: number | null;
  estimated_error: number;
  truncated_mass: number;
  infinite: boolean;
  warning: boolean;
  floored: boolean;
}

export interface ExpertEntryDoc {
  id: string;
  label: string;
  family: Family;
  parameters: Record<string, number>;
}

export interface PriorSetDoc {
  format_version: "1";
  parameterization_note: string;
  experts: ExpertEntryDoc[];
}

export interface RankRequest {
  observations?: number[];
  posterior?: { mean: number; sd: number };
  benchmark: SpecDoc;
  experts: ExpertEntryDoc[];
  method?: "analytic" | "mcmc";
  seed?: number;
}

export interface RankEntryDoc {
  expert_id: string;
  kl: number | null;
  dac: number | null;
  infinite: boolean;
  conflict: boolean;
  rank: number;
}

export interface RankResponse {
  benchmark_kl: number;
  entries: RankEntryDoc[];
  posterior: { mean: number; sd: number; method: string };
  stability_note: string;
  benchmark: SpecDoc;
}

export interface HealthResponse {
  status: string;
  version: string;
}
