/** HTTP client for the scoring engine.
 *
 * Every number the interface shows comes through this client; nothing is
 * recomputed locally, so what the expert sees is exactly what the engine
 * will score.
 */

import type {
  HealthResponse,
  KlResponse,
  RankRequest,
  RankResponse,
  SpecDoc,
} from "./types.js";

export interface EngineClient {
  health(): Promise<HealthResponse>;
  density(spec: SpecDoc, xs: number[]): Promise<number[]>;
  quantiles(spec: SpecDoc, ps: number[]): Promise<number[]>;
  kl(p: SpecDoc, q: SpecDoc): Promise<KlResponse>;
  rank(request: RankRequest): Promise<RankResponse>;
}

export class EngineError extends Error {
  readonly status: number;
  readonly field: string | null;

  constructor(status: number, field: string | null, message: string) {
    super(message);
    this.status = status;
    this.field = field;
  }
}

/** Raised when the engine cannot be reached at all (network failure). */
export class ServiceUnreachableError extends Error {}

export class HttpEngineClient implements EngineClient {
  constructor(private readonly baseUrl: string) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (err) {
      throw new ServiceUnreachableError(
        `engine unreachable at ${this.baseUrl}: ${String(err)}`,
      );
    }
    const payload = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      const error = (payload["error"] ?? {}) as {
        field?: string | null;
        message?: string;
      };
      throw new EngineError(
        response.status,
        error.field ?? null,
        error.message ?? `engine returned ${response.status}`,
      );
    }
    return payload as T;
  }

  async health(): Promise<HealthResponse> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + "/api/health");
    } catch (err) {
      throw new ServiceUnreachableError(
        `engine unreachable at ${this.baseUrl}: ${String(err)}`,
      );
    }
    return (await response.json()) as HealthResponse;
  }

  async density(spec: SpecDoc, xs: number[]): Promise<number[]> {
    const body = await this.post<{ densities: number[] }>("/api/density", {
      spec,
      xs,
    });
    return body.densities;
  }

  async quantiles(spec: SpecDoc, ps: number[]): Promise<number[]> {
    const body = await this.post<{ xs: number[] }>("/api/quantiles", {
      spec,
      ps,
    });
    return body.xs;
  }

  kl(p: SpecDoc, q: SpecDoc): Promise<KlResponse> {
    return this.post<KlResponse>("/api/kl", { p, q });
  }

  rank(request: RankRequest): Promise<RankResponse> {
    return this.post<RankResponse>("/api/rank", request);
  }
}
