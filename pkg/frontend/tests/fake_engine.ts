/** In-memory double of the scoring engine for unit tests.
 *
 * Implements the same families and conventions as the real service with
 * closed-form math (normal quantile via Acklam's approximation), plus an
 * `offline` switch to simulate an unreachable engine.  Accuracy is ample
 * for unit assertions; exact parity is exercised against the real service
 * in the acceptance test.
 */

import type { EngineClient } from "../src/api.js";
import type {
  HealthResponse,
  KlResponse,
  RankRequest,
  RankResponse,
  SpecDoc,
} from "../src/types.js";

const SQRT_2PI = Math.sqrt(2 * Math.PI);
const M1 = Math.sqrt(2 / Math.PI);

function phi(z: number): number {
  return Math.exp(-0.5 * z * z) / SQRT_2PI;
}

/** Acklam's inverse normal cdf, |relative error| < 1.2e-9. */
function ndtri(p: number): number {
  const a = [-39.6968302866538, 220.946098424521, -275.928510446969,
    138.357751867269, -30.6647980661472, 2.50662827745924];
  const b = [-54.4760987982241, 161.585836858041, -155.698979859887,
    66.8013118877197, -13.2806815528857];
  const c = [-0.00778489400243029, -0.322396458041136, -2.40075827716184,
    -2.54973253934373, 4.37466414146497, 2.93816398269878];
  const d = [0.00778469570904146, 0.32246712907004, 2.445134137143,
    3.75440866190742];
  const pl = 0.02425;
  if (p <= 0 || p >= 1) {
    throw new Error(`ndtri domain: ${p}`);
  }
  let q: number;
  let r: number;
  if (p < pl) {
    q = Math.sqrt(-2 * Math.log(p));
    return (((((c[0]! * q + c[1]!) * q + c[2]!) * q + c[3]!) * q + c[4]!) * q + c[5]!) /
      ((((d[0]! * q + d[1]!) * q + d[2]!) * q + d[3]!) * q + 1);
  }
  if (p <= 1 - pl) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0]! * r + a[1]!) * r + a[2]!) * r + a[3]!) * r + a[4]!) * r + a[5]!) * q /
      (((((b[0]! * r + b[1]!) * r + b[2]!) * r + b[3]!) * r + b[4]!) * r + 1);
  }
  q = Math.sqrt(-2 * Math.log(1 - p));
  return -(((((c[0]! * q + c[1]!) * q + c[2]!) * q + c[3]!) * q + c[4]!) * q + c[5]!) /
    ((((d[0]! * q + d[1]!) * q + d[2]!) * q + d[3]!) * q + 1);
}

interface TwoPiece {
  loc: number;
  scale: number;
  shape: number;
}

function skewMoments(g: number): { mean: number; sd: number } {
  const mean = M1 * (g - 1 / g);
  const variance =
    g * g + 1 / (g * g) - 1 - (2 / Math.PI) * (g - 1 / g) ** 2;
  return { mean, sd: Math.sqrt(variance) };
}

function toTwoPiece(params: Record<string, number>): TwoPiece {
  if ("location" in params) {
    return { loc: params["location"]!, scale: params["scale"]!, shape: params["shape"]! };
  }
  const { mean, sd } = skewMoments(params["shape"]!);
  const scale = params["sd"]! / sd;
  return { loc: params["mean"]! - scale * mean, scale, shape: params["shape"]! };
}

function densityOf(spec: SpecDoc, x: number): number {
  const p = spec.parameters;
  if (spec.family === "normal") {
    return phi((x - p["mean"]!) / p["sd"]!) / p["sd"]!;
  }
  if (spec.family === "uniform") {
    return x >= p["lower"]! && x <= p["upper"]! ? 1 / (p["upper"]! - p["lower"]!) : 0;
  }
  const tp = toTwoPiece(p);
  const z = (x - tp.loc) / tp.scale;
  const u = z >= 0 ? z / tp.shape : z * tp.shape;
  const c = 2 / (tp.shape + 1 / tp.shape);
  return (c / tp.scale) * phi(u);
}

function quantileOf(spec: SpecDoc, prob: number): number {
  const p = spec.parameters;
  if (prob <= 0 || prob >= 1) {
    throw new Error("quantile probability must lie strictly in (0, 1)");
  }
  if (spec.family === "normal") {
    return p["mean"]! + p["sd"]! * ndtri(prob);
  }
  if (spec.family === "uniform") {
    return p["lower"]! + prob * (p["upper"]! - p["lower"]!);
  }
  const tp = toTwoPiece(p);
  const g2 = tp.shape * tp.shape;
  const split = 1 / (1 + g2);
  let z: number;
  if (prob < split) {
    z = ndtri((prob * (1 + g2)) / 2) / tp.shape;
  } else if (prob === split) {
    z = 0;
  } else {
    z = tp.shape * ndtri(((prob - split) * (1 + g2)) / (2 * g2) + 0.5);
  }
  return tp.loc + tp.scale * z;
}

function klOf(p: SpecDoc, q: SpecDoc): KlResponse {
  const base: KlResponse = {
    value: 0,
    estimated_error: 1e-12,
    truncated_mass: 0,
    infinite: false,
    warning: false,
    floored: false,
  };
  if (p.family === "normal" && q.family === "normal") {
    const [mp, sp] = [p.parameters["mean"]!, p.parameters["sd"]!];
    const [mq, sq] = [q.parameters["mean"]!, q.parameters["sd"]!];
    base.value =
      Math.log(sq / sp) + (sp * sp + (mp - mq) ** 2) / (2 * sq * sq) - 0.5;
    return base;
  }
  if (p.family === "normal" && q.family === "uniform") {
    const sp = p.parameters["sd"]!;
    const width = q.parameters["upper"]! - q.parameters["lower"]!;
    const lo = (q.parameters["lower"]! - p.parameters["mean"]!) / sp;
    const hi = (q.parameters["upper"]! - p.parameters["mean"]!) / sp;
    if (lo > -8 || hi < 8) {
      return { ...base, value: null, infinite: true };
    }
    base.value = Math.log(width) - 0.5 * Math.log(2 * Math.PI * Math.E * sp * sp);
    return base;
  }
  // Simpson's rule over the preferred distribution's central mass; the
  // double is allowed to do math the real client must not
  const lo = quantileOf(p, 1e-9);
  const hi = quantileOf(p, 1 - 1e-9);
  const n = 4000;
  const h = (hi - lo) / n;
  let total = 0;
  for (let i = 0; i <= n; i += 1) {
    const x = lo + i * h;
    const pd = densityOf(p, x);
    if (pd <= 0) {
      continue;
    }
    const qd = densityOf(q, x);
    if (qd <= 0) {
      return { ...base, value: null, infinite: true };
    }
    const w = i === 0 || i === n ? 1 : i % 2 === 1 ? 4 : 2;
    total += w * pd * (Math.log(pd) - Math.log(qd));
  }
  base.value = (total * h) / 3;
  return base;
}

export class FakeEngine implements EngineClient {
  offline = false;
  calls: string[] = [];

  private guard(endpoint: string): void {
    this.calls.push(endpoint);
    if (this.offline) {
      throw new Error("engine unreachable (fake offline)");
    }
  }

  async health(): Promise<HealthResponse> {
    this.guard("health");
    return { status: "ok", version: "fake" };
  }

  async density(spec: SpecDoc, xs: number[]): Promise<number[]> {
    this.guard("density");
    return xs.map((x) => densityOf(spec, x));
  }

  async quantiles(spec: SpecDoc, ps: number[]): Promise<number[]> {
    this.guard("quantiles");
    return ps.map((p) => quantileOf(spec, p));
  }

  async kl(p: SpecDoc, q: SpecDoc): Promise<KlResponse> {
    this.guard("kl");
    return klOf(p, q);
  }

  async rank(request: RankRequest): Promise<RankResponse> {
    this.guard("rank");
    let posterior: { mean: number; sd: number };
    if (request.posterior) {
      posterior = request.posterior;
    } else {
      const obs = request.observations ?? [];
      const n = obs.length;
      const mean = obs.reduce((a, b) => a + b, 0) / n;
      const sd = Math.sqrt(
        obs.reduce((a, b) => a + (b - mean) ** 2, 0) / (n - 1),
      );
      posterior = { mean, sd: sd / Math.sqrt(n) };
    }
    const postSpec: SpecDoc = {
      family: "normal",
      parameters: { mean: posterior.mean, sd: posterior.sd },
    };
    const benchKl = klOf(postSpec, request.benchmark);
    if (benchKl.infinite || benchKl.value === null || benchKl.value <= 1e-9) {
      throw new Error("benchmark divergence is zero or infinite");
    }
    const scored = request.experts.map((expert) => {
      const res = klOf(postSpec, {
        family: expert.family,
        parameters: expert.parameters,
      });
      const kl = res.infinite ? null : res.value;
      const dac = kl === null ? null : kl / (benchKl.value as number);
      return { expert, kl, dac, infinite: res.infinite };
    });
    const order = scored
      .map((s, i) => ({ s, i }))
      .sort((a, b) => {
        const da = a.s.dac ?? Number.POSITIVE_INFINITY;
        const db = b.s.dac ?? Number.POSITIVE_INFINITY;
        return da - db || a.i - b.i;
      });
    const entries = order.map(({ s }, pos) => ({
      expert_id: s.expert.id,
      kl: s.kl,
      dac: s.dac,
      infinite: s.infinite,
      conflict: s.infinite || (s.dac !== null && s.dac > 1),
      rank: pos + 1,
    }));
    const uninformative =
      request.benchmark.family !== "uniform" ||
      (request.benchmark.parameters["lower"]! <= posterior.mean - 10 * posterior.sd &&
        request.benchmark.parameters["upper"]! >= posterior.mean + 10 * posterior.sd);
    return {
      benchmark_kl: benchKl.value,
      entries,
      posterior: { ...posterior, method: "analytic" },
      benchmark: request.benchmark,
      stability_note: uninformative
        ? "benchmark uninformative: yes"
        : "benchmark uninformative: no (informative benchmark)",
    };
  }
}
