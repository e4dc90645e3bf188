import { AnalystApp, type ViewId } from "./analyst.js";
import { ApiClient, ApiError } from "./api.js";
import { COLORBLIND_PALETTE, DEFAULT_PALETTE, type Palette } from "./palette.js";
import { COMPONENTS } from "./types.js";
import { renderHome } from "./views/home.js";
import { CrowdworkerApp, renderFlagRow, renderStats, renderTrace } from "./worker.js";

// Browser bootstrap. Everything above this file is DOM-free and unit-tested;
// this module only wires events to elements in index.html.

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node;
}

export function start(): void {
  const api = new ApiClient("");
  let palette: Palette = DEFAULT_PALETTE;

  const banner = $("error-banner");
  const showError = (err: unknown, retry: () => void) => {
    const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    banner.textContent = message;
    banner.style.display = "block";
    const button = document.createElement("button");
    button.textContent = "retry";
    button.onclick = () => {
      banner.style.display = "none";
      retry();
    };
    banner.appendChild(button);
  };

  // -- crowdworker panel ---------------------------------------------------
  const worker = new CrowdworkerApp(api, "worker1");
  worker.onChange = () => {
    if (worker.state.report) {
      $("flag-row").innerHTML = renderFlagRow(worker.state.report, palette);
    }
    if (worker.state.trace) {
      $("fix-trace").innerHTML = renderTrace(worker.state.trace);
    }
    if (worker.state.stats) {
      $("worker-stats").innerHTML = renderStats(worker.state.stats);
    }
  };
  $("btn-review").onclick = () => {
    const premise = ($("premise") as HTMLTextAreaElement).value;
    const hypothesis = ($("hypothesis") as HTMLTextAreaElement).value;
    const label = ($("label") as HTMLSelectElement).value;
    worker
      .draft(premise, hypothesis, label)
      .then(() => worker.review())
      .catch((err) => showError(err, start));
  };
  $("btn-autofix").onclick = () => void worker.autofix().catch((err) => showError(err, start));
  $("btn-submit").onclick = () => void worker.submit().catch((err) => showError(err, start));
  worker.startPolling();

  // -- analyst panel -------------------------------------------------------
  const analyst = new AnalystApp(api);
  const renderAnalyst = async () => {
    const active = ($("view-select") as HTMLSelectElement).value as ViewId;
    if (active === "home") {
      const [report, batches] = await Promise.all([api.corpusReport(), api.batches()]);
      $("analyst-view").innerHTML = renderHome(report, batches, palette);
      return;
    }
    analyst.setView(active);
    $("analyst-view").innerHTML = await analyst.render(palette);
  };
  const refresh = () => void renderAnalyst().catch((err) => showError(err, refresh));

  const viewSelect = $("view-select") as HTMLSelectElement;
  for (const id of ["home", ...COMPONENTS]) {
    const option = document.createElement("option");
    option.value = id;
    option.textContent = id;
    viewSelect.appendChild(option);
  }
  viewSelect.onchange = refresh;
  $("btn-simulate").onclick = () => {
    analyst.setCandidate(($("candidate-id") as HTMLInputElement).value || null);
    analyst.toggleSimulate();
    refresh();
  };
  ($("palette-select") as HTMLSelectElement).onchange = (ev) => {
    palette = (ev.target as HTMLSelectElement).value === "colorblind"
      ? COLORBLIND_PALETTE
      : DEFAULT_PALETTE;
    worker.onChange();
    refresh();
  };
  refresh();
}

if (typeof document !== "undefined" && document.getElementById("analyst-view")) {
  start();
}
