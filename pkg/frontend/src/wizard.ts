/** Five-step elicitation session.
 *
 * 1. state the expected value (location of the belief)
 * 2. feedback: density preview fetched from the engine; accept or adjust
 * 3. state the (un)certainty: spread and shape sliders, or drag the 5% /
 *    50% / 95% markers, which are inverted to parameters via engine
 *    quantile calls
 * 4. feedback: preview plus median and 90% interval; accept or adjust
 *    (adjust returns to step 3 with all values preserved)
 * 5. use the belief: export the prior-set entry
 *
 * A step only advances on an explicit accept, and the export refuses to
 * run until both feedback steps were accepted.  Every preview is an engine
 * response; when the engine is unreachable the wizard keeps its step and
 * exposes the failure instead of substituting local numbers.
 */

import type { EngineClient } from "./api.js";
import type { ExpertEntryDoc, PriorSetDoc } from "./types.js";
import { skewBelief } from "./types.js";
import { solveShapeFromMedianMarker, solveSdFromTailMarker } from "./markers.js";

export type WizardStep = 1 | 2 | 3 | 4 | 5;

export interface DraftBelief {
  mean: number;
  sd: number;
  shape: number;
}

export interface PreviewCurve {
  xs: number[];
  densities: number[];
}

export interface UncertaintySummary {
  q05: number;
  median: number;
  q95: number;
}

export interface WizardState {
  expertId: string;
  expertLabel: string;
  step: WizardStep;
  draft: DraftBelief;
  locationAccepted: boolean;
  uncertaintyAccepted: boolean;
  preview: PreviewCurve | null;
  summary: UncertaintySummary | null;
  serviceError: string | null;
  markerError: string | null;
}

export class WizardStepError extends Error {}

const PREVIEW_POINTS = 121;

export class ElicitationWizard {
  private readonly client: EngineClient;
  private state_: WizardState;

  constructor(client: EngineClient, expertId: string, expertLabel: string) {
    this.client = client;
    this.state_ = {
      expertId,
      expertLabel,
      step: 1,
      draft: { mean: 0, sd: 1, shape: 1 },
      locationAccepted: false,
      uncertaintyAccepted: false,
      preview: null,
      summary: null,
      serviceError: null,
      markerError: null,
    };
  }

  get state(): Readonly<WizardState> {
    return this.state_;
  }

  private requireStep(expected: WizardStep, action: string): void {
    if (this.state_.step !== expected) {
      throw new WizardStepError(
        `${action} is only available at step ${expected} (currently at ${this.state_.step})`,
      );
    }
  }

  setExpertLabel(label: string): void {
    this.state_.expertLabel = label;
  }

  /** Step 1: record the expected value of the quantity. */
  enterLocation(mean: number): void {
    this.requireStep(1, "entering the location");
    if (!Number.isFinite(mean)) {
      throw new WizardStepError("location must be a finite number");
    }
    this.state_.draft.mean = mean;
  }

  /** Step 1 -> 2: fetch the preview; the step holds if the engine fails. */
  async requestLocationPreview(): Promise<void> {
    this.requireStep(1, "requesting the location preview");
    const fetched = await this.fetchPreview();
    if (fetched) {
      this.state_.step = 2;
    }
  }

  /** Step 2: the rendered belief matches; move on to uncertainty. */
  acceptLocation(): void {
    this.requireStep(2, "accepting the location");
    this.state_.locationAccepted = true;
    this.state_.step = 3;
  }

  /** Step 2: the rendered belief is off; go back with values preserved. */
  adjustLocation(): void {
    this.requireStep(2, "adjusting the location");
    this.state_.locationAccepted = false;
    this.state_.step = 1;
  }

  /** Step 3: set spread and shape directly (slider path). */
  setUncertainty(sd: number, shape: number): void {
    this.requireStep(3, "setting the uncertainty");
    if (!(sd > 0) || !(shape > 0)) {
      throw new WizardStepError("spread and shape must be positive");
    }
    this.state_.draft.sd = sd;
    this.state_.draft.shape = shape;
  }

  /** Step 3: drag the 5% or 95% marker; the spread is solved via the engine. */
  async dragTailMarker(p: 0.05 | 0.95, x: number): Promise<boolean> {
    this.requireStep(3, "dragging a tail marker");
    try {
      const sd = await solveSdFromTailMarker(
        this.client,
        this.state_.draft.mean,
        this.state_.draft.shape,
        p,
        x,
      );
      this.state_.draft.sd = sd;
      this.state_.markerError = null;
      this.state_.serviceError = null;
      return true;
    } catch (err) {
      this.recordMarkerFailure(err);
      return false;
    }
  }

  /** Step 3: drag the median marker; the shape is solved via the engine. */
  async dragMedianMarker(x: number): Promise<boolean> {
    this.requireStep(3, "dragging the median marker");
    try {
      const shape = await solveShapeFromMedianMarker(
        this.client,
        this.state_.draft.mean,
        this.state_.draft.sd,
        x,
      );
      this.state_.draft.shape = shape;
      this.state_.markerError = null;
      this.state_.serviceError = null;
      return true;
    } catch (err) {
      this.recordMarkerFailure(err);
      return false;
    }
  }

  /** Step 3 -> 4: fetch the preview and interval summary. */
  async requestUncertaintyPreview(): Promise<void> {
    this.requireStep(3, "requesting the uncertainty preview");
    const fetched = await this.fetchPreview();
    if (fetched) {
      this.state_.step = 4;
    }
  }

  /** Step 4: the representation is correct. */
  acceptUncertainty(): void {
    this.requireStep(4, "accepting the uncertainty");
    this.state_.uncertaintyAccepted = true;
    this.state_.step = 5;
  }

  /** Step 4: back to the inputs of step 3, values preserved. */
  adjustUncertainty(): void {
    this.requireStep(4, "adjusting the uncertainty");
    this.state_.uncertaintyAccepted = false;
    this.state_.step = 3;
  }

  /** Step 5: hand the accepted belief over for scoring. */
  exportEntry(): ExpertEntryDoc {
    this.requireStep(5, "exporting");
    if (!this.state_.locationAccepted || !this.state_.uncertaintyAccepted) {
      throw new WizardStepError(
        "cannot export before both feedback steps are accepted",
      );
    }
    const { mean, sd, shape } = this.state_.draft;
    return {
      id: this.state_.expertId,
      label: this.state_.expertLabel,
      ...skewBelief(mean, sd, shape),
    };
  }

  private async fetchPreview(): Promise<boolean> {
    const { mean, sd, shape } = this.state_.draft;
    const spec = skewBelief(mean, sd, shape);
    try {
      const quantiles = await this.client.quantiles(spec, [0.001, 0.05, 0.5, 0.95, 0.999]);
      const [lo, q05, median, q95, hi] = quantiles as [
        number,
        number,
        number,
        number,
        number,
      ];
      const xs: number[] = [];
      for (let i = 0; i < PREVIEW_POINTS; i += 1) {
        xs.push(lo + ((hi - lo) * i) / (PREVIEW_POINTS - 1));
      }
      const densities = await this.client.density(spec, xs);
      this.state_.preview = { xs, densities };
      this.state_.summary = { q05, median, q95 };
      this.state_.serviceError = null;
      return true;
    } catch (err) {
      this.state_.serviceError = String(
        err instanceof Error ? err.message : err,
      );
      return false;
    }
  }

  private recordMarkerFailure(err: unknown): void {
    const message = String(err instanceof Error ? err.message : err);
    if (message.includes("unreachable")) {
      this.state_.serviceError = message;
    } else {
      this.state_.markerError = message;
    }
  }
}

export function priorSetFromEntries(entries: ExpertEntryDoc[]): PriorSetDoc {
  return {
    format_version: "1",
    parameterization_note:
      "skew_normal parameters are the mean, sd and shape of the expert's belief",
    experts: entries,
  };
}
