import { describe, expect, it } from "vitest";

import {
  MarkerError,
  SHAPE_MAX,
  SHAPE_MIN,
  solveSdFromTailMarker,
  solveShapeFromMedianMarker,
} from "../src/markers.js";
import { skewBelief } from "../src/types.js";
import { FakeEngine } from "./fake_engine.js";

describe("marker inversion", () => {
  const engine = new FakeEngine();

  it("tail marker round trip recovers the spread", async () => {
    const [x95] = await engine.quantiles(skewBelief(2.15, 0.09, 0.78), [0.95]);
    const sd = await solveSdFromTailMarker(engine, 2.15, 0.78, 0.95, x95 as number);
    expect(sd).toBeCloseTo(0.09, 9);
  });

  it("lower tail marker works symmetrically", async () => {
    const [x05] = await engine.quantiles(skewBelief(-1.0, 0.4, 1.3), [0.05]);
    const sd = await solveSdFromTailMarker(engine, -1.0, 1.3, 0.05, x05 as number);
    expect(sd).toBeCloseTo(0.4, 9);
  });

  it("rejects markers on the wrong side of the mean", async () => {
    await expect(
      solveSdFromTailMarker(engine, 0.0, 1.0, 0.95, -1.0),
    ).rejects.toThrow(MarkerError);
    await expect(
      solveSdFromTailMarker(engine, 0.0, 1.0, 0.05, 1.0),
    ).rejects.toThrow(MarkerError);
  });

  it("median marker round trip recovers the shape", async () => {
    const [median] = await engine.quantiles(skewBelief(2.15, 0.09, 0.78), [0.5]);
    const shape = await solveShapeFromMedianMarker(engine, 2.15, 0.09, median as number);
    expect(shape).toBeCloseTo(0.78, 2);
  });

  it("clamps to the slider range at extreme targets", async () => {
    expect(await solveShapeFromMedianMarker(engine, 0.0, 1.0, 5.0)).toBe(SHAPE_MIN);
    expect(await solveShapeFromMedianMarker(engine, 0.0, 1.0, -5.0)).toBe(SHAPE_MAX);
  });
});
