/** Interactive divergence explorer for two normal beliefs.
 *
 * The headline number always comes from the engine's /api/kl; the shaded
 * curve is the pointwise integrand assembled from engine density arrays
 * (its area equals the displayed divergence).
 */

import type { EngineClient } from "./api.js";
import type { SpecDoc } from "./types.js";
import { normalSpec } from "./types.js";

export interface ExplorerResult {
  value: number | null;
  infinite: boolean;
  display: string;
  xs: number[];
  pDensities: number[];
  qDensities: number[];
  integrand: number[];
}

export const DISPLAY_DIGITS = 4;

export function formatKlValue(value: number | null, infinite: boolean): string {
  if (infinite || value === null) {
    return "inf";
  }
  return value.toFixed(DISPLAY_DIGITS);
}

export async function exploreKl(
  client: EngineClient,
  p: { mean: number; sd: number },
  q: { mean: number; sd: number },
  points = 201,
): Promise<ExplorerResult> {
  const pSpec: SpecDoc = normalSpec(p.mean, p.sd);
  const qSpec: SpecDoc = normalSpec(q.mean, q.sd);
  const result = await client.kl(pSpec, qSpec);

  const [lo, hi] = await client.quantiles(pSpec, [0.0005, 0.9995]);
  const xs: number[] = [];
  for (let i = 0; i < points; i += 1) {
    xs.push((lo as number) + (((hi as number) - (lo as number)) * i) / (points - 1));
  }
  const pDensities = await client.density(pSpec, xs);
  const qDensities = await client.density(qSpec, xs);
  const integrand = xs.map((_, i) => {
    const pd = pDensities[i] as number;
    const qd = qDensities[i] as number;
    if (pd <= 0) {
      return 0;
    }
    if (qd <= 0) {
      return Number.POSITIVE_INFINITY;
    }
    return pd * (Math.log(pd) - Math.log(qd));
  });
  return {
    value: result.value,
    infinite: result.infinite,
    display: formatKlValue(result.value, result.infinite),
    xs,
    pDensities,
    qDensities,
    integrand,
  };
}
