/** DOM wiring: tabs for the elicitation wizard, the ranking dashboard, and
 * the divergence explorer.  All numerical content arrives via the engine
 * client; this file only moves values between widgets and charts.
 */

import { HttpEngineClient } from "./api.js";
import {
  DEFAULT_VIEWPORT,
  fromPixelX,
  fitScale,
  renderChart,
  type MarkerSpec,
} from "./charts.js";
import {
  buildRankRequest,
  fetchOverlayCurves,
  parseObservationsCsv,
  rankedRows,
  renderRankingTable,
  stabilityWarning,
} from "./dashboard.js";
import { exploreKl } from "./explorer.js";
import type { ExpertEntryDoc, RankResponse } from "./types.js";
import { uniformSpec } from "./types.js";
import { ElicitationWizard, priorSetFromEntries } from "./wizard.js";

const ENGINE_URL =
  new URLSearchParams(window.location.search).get("engine") ??
  "http://127.0.0.1:8080";
const client = new HttpEngineClient(ENGINE_URL);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function setStatus(kind: "ok" | "error" | "info", text: string): void {
  const bar = el<HTMLDivElement>("status");
  bar.className = `status ${kind}`;
  bar.textContent = text;
}

// ---------------------------------------------------------------------------
// tabs

for (const name of ["wizard", "dashboard", "explorer"]) {
  el<HTMLButtonElement>(`tab-${name}`).addEventListener("click", () => {
    for (const other of ["wizard", "dashboard", "explorer"]) {
      el(`panel-${other}`).hidden = other !== name;
      el(`tab-${other}`).classList.toggle("active", other === name);
    }
  });
}

// ---------------------------------------------------------------------------
// elicitation wizard

let wizard = new ElicitationWizard(client, "expert-1", "Expert 1");
const exported: ExpertEntryDoc[] = [];

function renderWizard(): void {
  const s = wizard.state;
  for (let step = 1; step <= 5; step += 1) {
    el(`wizard-step-${step}`).hidden = s.step !== step;
    el(`step-dot-${step}`).classList.toggle("active", s.step === step);
  }
  el<HTMLInputElement>("wizard-label").value = s.expertLabel;
  el<HTMLInputElement>("wizard-mean").value = String(s.draft.mean);
  el<HTMLInputElement>("wizard-sd").value = String(s.draft.sd);
  el<HTMLInputElement>("wizard-shape").value = String(s.draft.shape);
  el("wizard-sd-value").textContent = s.draft.sd.toFixed(3);
  el("wizard-shape-value").textContent = s.draft.shape.toFixed(2);

  const blocked = s.serviceError !== null;
  el("wizard-service-error").hidden = !blocked;
  if (blocked) {
    el("wizard-service-error").textContent =
      `engine unavailable, cannot continue: ${s.serviceError}`;
  }
  el("wizard-marker-error").hidden = s.markerError === null;
  if (s.markerError !== null) {
    el("wizard-marker-error").textContent = s.markerError;
  }

  if (s.preview && (s.step === 2 || s.step === 4)) {
    const markers: MarkerSpec[] =
      s.step === 4 && s.summary
        ? [
            { x: s.summary.q05, cssClass: "q05", label: "5%" },
            { x: s.summary.median, cssClass: "q50", label: "median" },
            { x: s.summary.q95, cssClass: "q95", label: "95%" },
          ]
        : [];
    el(`wizard-chart-${s.step}`).innerHTML = renderChart(
      [
        {
          xs: s.preview.xs,
          ys: s.preview.densities,
          cssClass: "belief",
          label: "belief",
          fill: true,
        },
      ],
      markers,
    );
  }
  if (s.summary && s.step === 4) {
    el("wizard-summary").textContent =
      `median ${s.summary.median.toFixed(3)}; ` +
      `90% interval [${s.summary.q05.toFixed(3)}, ${s.summary.q95.toFixed(3)}]`;
  }
  el("wizard-export-list").textContent = exported.length
    ? `${exported.length} expert(s) collected: ` +
      exported.map((e) => e.label).join(", ")
    : "no experts collected yet";
}

el("wizard-to-preview").addEventListener("click", async () => {
  try {
    wizard.enterLocation(Number(el<HTMLInputElement>("wizard-mean").value));
    wizard.setExpertLabel(el<HTMLInputElement>("wizard-label").value);
    await wizard.requestLocationPreview();
  } catch (err) {
    setStatus("error", String(err));
  }
  renderWizard();
});
el("wizard-accept-location").addEventListener("click", () => {
  wizard.acceptLocation();
  renderWizard();
});
el("wizard-adjust-location").addEventListener("click", () => {
  wizard.adjustLocation();
  renderWizard();
});

async function onUncertaintyInput(): Promise<void> {
  try {
    wizard.setUncertainty(
      Number(el<HTMLInputElement>("wizard-sd").value),
      Number(el<HTMLInputElement>("wizard-shape").value),
    );
  } catch (err) {
    setStatus("error", String(err));
  }
  renderWizard();
}
el("wizard-sd").addEventListener("input", onUncertaintyInput);
el("wizard-shape").addEventListener("input", onUncertaintyInput);

el("wizard-to-preview-2").addEventListener("click", async () => {
  await wizard.requestUncertaintyPreview();
  renderWizard();
});
el("wizard-accept-uncertainty").addEventListener("click", () => {
  wizard.acceptUncertainty();
  renderWizard();
});
el("wizard-adjust-uncertainty").addEventListener("click", () => {
  wizard.adjustUncertainty();
  renderWizard();
});

// marker dragging on the step-4 chart: pointer position converts back to a
// belief-scale x, then the engine inverts it to a parameter
el("wizard-chart-4").addEventListener("pointerdown", async (event) => {
  const target = (event.target as Element).closest(".marker");
  if (!target || !wizard.state.preview) {
    return;
  }
  const label = target.getAttribute("data-marker");
  const svg = el("wizard-chart-4").querySelector("svg");
  if (!svg) {
    return;
  }
  const onMove = async (move: PointerEvent) => {
    const rect = svg.getBoundingClientRect();
    const px = ((move.clientX - rect.left) / rect.width) * DEFAULT_VIEWPORT.width;
    const s = wizard.state;
    if (!s.preview) {
      return;
    }
    const scale = fitScale(s.preview.xs, [s.preview.densities]);
    const x = fromPixelX(px, scale, DEFAULT_VIEWPORT);
    // dragging re-opens the inputs of step 3 per the feedback loop
    if (s.step === 4) {
      wizard.adjustUncertainty();
    }
    if (label === "median") {
      await wizard.dragMedianMarker(x);
    } else {
      await wizard.dragTailMarker(label === "5%" ? 0.05 : 0.95, x);
    }
    await wizard.requestUncertaintyPreview();
    renderWizard();
  };
  const onUp = () => {
    window.removeEventListener("pointermove", onMove);
    window.removeEventListener("pointerup", onUp);
  };
  window.addEventListener("pointermove", onMove);
  window.addEventListener("pointerup", onUp);
});

el("wizard-export").addEventListener("click", () => {
  try {
    const entry = wizard.exportEntry();
    exported.push(entry);
    const doc = priorSetFromEntries(exported);
    const blob = new Blob([JSON.stringify(doc, null, 2)], {
      type: "application/json",
    });
    const link = el<HTMLAnchorElement>("wizard-download");
    link.href = URL.createObjectURL(blob);
    link.download = "priors.json";
    link.hidden = false;
    setStatus("ok", `exported ${entry.label}`);
    wizard = new ElicitationWizard(client, `expert-${exported.length + 1}`, `Expert ${exported.length + 1}`);
  } catch (err) {
    setStatus("error", String(err));
  }
  renderWizard();
});

// ---------------------------------------------------------------------------
// ranking dashboard

let lastRank: RankResponse | null = null;

el("dashboard-run").addEventListener("click", async () => {
  try {
    const csv = el<HTMLTextAreaElement>("dashboard-data").value;
    const observations = parseObservationsCsv(csv);
    const priorsText = el<HTMLTextAreaElement>("dashboard-priors").value;
    const priors = JSON.parse(priorsText) as { experts: ExpertEntryDoc[] };
    const lower = Number(el<HTMLInputElement>("dashboard-lo").value);
    const upper = Number(el<HTMLInputElement>("dashboard-hi").value);
    const request = buildRankRequest(
      observations,
      priors.experts,
      uniformSpec(lower, upper),
    );
    setStatus("info", "scoring...");
    const response = await client.rank(request);
    lastRank = response;
    const labels = new Map(priors.experts.map((e) => [e.id, e.label]));
    el("dashboard-table").innerHTML = renderRankingTable(
      rankedRows(response, labels),
    );
    const warning = stabilityWarning(response);
    el("dashboard-warning").hidden = warning === null;
    if (warning !== null) {
      el("dashboard-warning").textContent = warning;
    }
    el("dashboard-posterior").textContent =
      `posterior N(${response.posterior.mean.toFixed(4)}, ` +
      `sd=${response.posterior.sd.toFixed(4)}); ` +
      `benchmark KL ${response.benchmark_kl.toFixed(4)}`;
    const curves = await fetchOverlayCurves(client, response, priors.experts);
    el("dashboard-chart").innerHTML = renderChart(
      curves.map((c) => ({
        xs: c.xs,
        ys: c.densities,
        cssClass: c.cssClass,
        label: c.label,
      })),
    );
    el("dashboard-legend").innerHTML = curves
      .map((c) => `<span class="legend ${c.cssClass}">${c.label}</span>`)
      .join(" ");
    setStatus("ok", "ranked");
  } catch (err) {
    setStatus("error", String(err));
  }
});

// ---------------------------------------------------------------------------
// divergence explorer

async function runExplorer(): Promise<void> {
  try {
    const p = {
      mean: Number(el<HTMLInputElement>("explorer-p-mean").value),
      sd: Number(el<HTMLInputElement>("explorer-p-sd").value),
    };
    const q = {
      mean: Number(el<HTMLInputElement>("explorer-q-mean").value),
      sd: Number(el<HTMLInputElement>("explorer-q-sd").value),
    };
    el("explorer-p-label").textContent = `N(${p.mean.toFixed(2)}, sd ${p.sd.toFixed(2)})`;
    el("explorer-q-label").textContent = `N(${q.mean.toFixed(2)}, sd ${q.sd.toFixed(2)})`;
    const result = await exploreKl(client, p, q);
    el("explorer-value").textContent = `KL = ${result.display}`;
    el("explorer-chart").innerHTML = renderChart([
      {
        xs: result.xs,
        ys: result.integrand,
        cssClass: "integrand",
        label: "pointwise loss",
        fill: true,
      },
      { xs: result.xs, ys: result.pDensities, cssClass: "preferred", label: "preferred" },
      { xs: result.xs, ys: result.qDensities, cssClass: "approximant", label: "approximant" },
    ]);
    setStatus("ok", "");
  } catch (err) {
    setStatus("error", String(err));
  }
}

for (const id of ["explorer-p-mean", "explorer-p-sd", "explorer-q-mean", "explorer-q-sd"]) {
  el(id).addEventListener("input", runExplorer);
}

// ---------------------------------------------------------------------------
// boot

(async () => {
  try {
    const health = await client.health();
    setStatus("ok", `engine ${health.version} at ${ENGINE_URL}`);
  } catch {
    setStatus(
      "error",
      `engine unreachable at ${ENGINE_URL}; start it with: priorrank serve --port 8080`,
    );
  }
  renderWizard();
  await runExplorer().catch(() => undefined);
})();
