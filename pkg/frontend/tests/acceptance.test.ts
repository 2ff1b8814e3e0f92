/** End-to-end acceptance against the real engine.
 *
 * Spawns the Python service, drives a scripted wizard session for the
 * first expert's published hyperparameters, exports the document, feeds
 * it to the command-line ranker, and checks the resulting agreement score
 * against the published regression band.  Also checks that the divergence
 * explorer displays the engine's value digit for digit.
 */

import { execFile, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { HttpEngineClient } from "../src/api.js";
import { exploreKl } from "../src/explorer.js";
import { normalSpec, uniformSpec } from "../src/types.js";
import { ElicitationWizard, priorSetFromEntries } from "../src/wizard.js";

const execFileAsync = promisify(execFile);

const PORT = 18000 + Math.floor(Math.random() * 10000);
const BASE = `http://127.0.0.1:${PORT}`;
// posterior sd that makes the 0-to-5 uniform benchmark divergence exactly 2.55
const SIGMA1 = Math.exp(
  Math.log(5) - 2.55 - 0.5 * Math.log(2 * Math.PI * Math.E),
);

let service: ChildProcess;
const client = new HttpEngineClient(BASE);

function mulberry32(seed: number): () => number {
  let s = seed;
  return () => {
    s = (s + 0x6d2b79f5) | 0;
    let t = Math.imul(s ^ (s >>> 15), 1 | s);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Dataset whose flat-fit posterior is exactly N(mean, posteriorSd). */
function equivalentDataset(mean: number, posteriorSd: number, n: number): number[] {
  const rand = mulberry32(20160101);
  const z: number[] = [];
  for (let i = 0; i < n; i += 1) {
    const u1 = Math.max(rand(), 1e-12);
    const u2 = rand();
    z.push(Math.sqrt(-2 * Math.log(u1)) * Math.cos(2 * Math.PI * u2));
  }
  const m = z.reduce((a, b) => a + b, 0) / n;
  const sd = Math.sqrt(z.reduce((a, b) => a + (b - m) ** 2, 0) / (n - 1));
  return z.map((v) => mean + posteriorSd * Math.sqrt(n) * ((v - m) / sd));
}

beforeAll(async () => {
  service = spawn("python3", ["-m", "priorrank.cli", "serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  for (let attempt = 0; attempt < 60; attempt += 1) {
    try {
      await client.health();
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  }
  throw new Error("engine did not come up");
}, 30000);

afterAll(() => {
  service?.kill();
});

describe("scripted wizard session", () => {
  it("exports the entered belief and reproduces its published score via the CLI", async () => {
    const wizard = new ElicitationWizard(client, "e1", "Expert 1");
    wizard.enterLocation(2.15);
    await wizard.requestLocationPreview();
    expect(wizard.state.step).toBe(2);
    wizard.acceptLocation();
    wizard.setUncertainty(0.09, 0.78);
    await wizard.requestUncertaintyPreview();
    expect(wizard.state.step).toBe(4);
    expect(wizard.state.summary).not.toBeNull();
    wizard.acceptUncertainty();
    const entry = wizard.exportEntry();
    expect(entry).toEqual({
      id: "e1",
      label: "Expert 1",
      family: "skew_normal",
      parameters: { mean: 2.15, sd: 0.09, shape: 0.78 },
    });

    const dir = mkdtempSync(join(tmpdir(), "elicit-"));
    const dataPath = join(dir, "data.csv");
    const priorsPath = join(dir, "priors.json");
    const reportPath = join(dir, "report.json");
    const observations = equivalentDataset(2.29, SIGMA1, 104);
    writeFileSync(dataPath, "y\n" + observations.map(String).join("\n") + "\n");
    writeFileSync(priorsPath, JSON.stringify(priorSetFromEntries([entry]), null, 2));

    await execFileAsync("python3", [
      "-m", "priorrank.cli", "rank",
      "--data", dataPath,
      "--priors", priorsPath,
      "--benchmark", "uniform:0,5",
      "--out", reportPath,
    ]);
    const report = JSON.parse(readFileSync(reportPath, "utf-8")) as {
      benchmark_kl: number;
      entries: Array<{ expert_id: string; dac: number; conflict: boolean }>;
    };
    expect(report.benchmark_kl).toBeCloseTo(2.55, 5);
    const scored = report.entries.find((e) => e.expert_id === "e1")!;
    // published regression band for this expert's score
    expect(Math.abs(scored.dac - 0.56)).toBeLessThanOrEqual(0.15);
    expect(scored.conflict).toBe(false);
  }, 30000);

  it("keeps the wizard in place when the engine is away", async () => {
    const offline = new HttpEngineClient("http://127.0.0.1:1");
    const wizard = new ElicitationWizard(offline, "x", "X");
    wizard.enterLocation(1.0);
    await wizard.requestLocationPreview();
    expect(wizard.state.step).toBe(1);
    expect(wizard.state.serviceError).toContain("unreachable");
  });
});

describe("divergence explorer parity", () => {
  it("displays the engine value to all shown digits for the unit-shift pair", async () => {
    const result = await exploreKl(client, { mean: 0, sd: 1 }, { mean: 1, sd: 1 });
    const direct = await client.kl(normalSpec(0, 1), normalSpec(1, 1));
    expect(result.display).toBe((direct.value as number).toFixed(4));
    expect(result.display).toBe("0.5000");
  });
});

describe("ranking dashboard against the live engine", () => {
  it("orders the published experts and badges the conflicting one", async () => {
    const experts = [
      { id: "e1", label: "Expert 1", family: "skew_normal" as const, parameters: { mean: 2.15, sd: 0.09, shape: 0.78 } },
      { id: "e2", label: "Expert 2", family: "skew_normal" as const, parameters: { mean: 2.16, sd: 0.07, shape: 0.82 } },
      { id: "e3", label: "Expert 3", family: "skew_normal" as const, parameters: { mean: 1.97, sd: 0.11, shape: 0.82 } },
      { id: "e4", label: "Expert 4", family: "skew_normal" as const, parameters: { mean: 2.35, sd: 0.11, shape: 0.94 } },
    ];
    const response = await client.rank({
      posterior: { mean: 2.29, sd: SIGMA1 },
      benchmark: uniformSpec(0, 5),
      experts,
    });
    expect(response.entries.map((e) => e.expert_id)).toEqual(["e4", "e1", "e2", "e3"]);
    const byId = new Map(response.entries.map((e) => [e.expert_id, e]));
    expect(byId.get("e3")!.conflict).toBe(true);
    expect(byId.get("e1")!.conflict).toBe(false);
    expect(byId.get("e4")!.conflict).toBe(false);
    // the second expert sits on the conflict boundary under published rounding
    expect(byId.get("e2")!.dac).toBeGreaterThan(0.95);
    expect(byId.get("e2")!.dac).toBeLessThan(1.35);
    expect(response.stability_note).toContain("uninformative: yes");
  });
});
