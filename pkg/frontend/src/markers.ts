/** Quantile-marker inversion.
 *
 * For a fixed shape the belief family is location-scale in (mean, sd), so
 * a dragged tail marker pins the spread through one standardized engine
 * quantile.  The median marker pins the shape instead: the standardized
 * median falls as the shape rises, so a bisection over engine calls
 * recovers it.  No distribution math runs client-side.
 */

import type { EngineClient } from "./api.js";
import { skewBelief } from "./types.js";

export class MarkerError extends Error {}

export const SHAPE_MIN = 0.2;
export const SHAPE_MAX = 5.0;

async function standardizedQuantile(
  client: EngineClient,
  shape: number,
  p: number,
): Promise<number> {
  const [z] = await client.quantiles(skewBelief(0, 1, shape), [p]);
  return z as number;
}

/** Spread implied by placing the p-quantile marker at x (shape fixed). */
export async function solveSdFromTailMarker(
  client: EngineClient,
  mean: number,
  shape: number,
  p: 0.05 | 0.95,
  x: number,
): Promise<number> {
  const z = await standardizedQuantile(client, shape, p);
  const sd = (x - mean) / z;
  if (!Number.isFinite(sd) || sd <= 0) {
    throw new MarkerError(
      p < 0.5
        ? "the 5% marker must sit below the expected value"
        : "the 95% marker must sit above the expected value",
    );
  }
  return sd;
}

/** Shape implied by placing the median marker at x (mean and sd fixed). */
export async function solveShapeFromMedianMarker(
  client: EngineClient,
  mean: number,
  sd: number,
  x: number,
  tolerance = 1e-4,
): Promise<number> {
  const target = (x - mean) / sd;
  // standardized median is monotone decreasing in the shape
  const atMin = await standardizedQuantile(client, SHAPE_MIN, 0.5);
  const atMax = await standardizedQuantile(client, SHAPE_MAX, 0.5);
  if (target >= atMin) {
    return SHAPE_MIN;
  }
  if (target <= atMax) {
    return SHAPE_MAX;
  }
  let lo = SHAPE_MIN;
  let hi = SHAPE_MAX;
  while (hi - lo > tolerance) {
    const mid = 0.5 * (lo + hi);
    const median = await standardizedQuantile(client, mid, 0.5);
    if (median > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}
