import type { ApiClient } from "./api.js";
import { flagColor, type Palette } from "./palette.js";
import { el, svg, title } from "./svg.js";
import type { FixTraceDto, QualityReport, WorkerStatsDto } from "./types.js";

export const POLL_INTERVAL_MS = 2000;

export interface WorkerState {
  workerId: string;
  sampleId: string | null;
  report: QualityReport | null;
  trace: FixTraceDto | null;
  stats: WorkerStatsDto | null;
}

// Crowdworker flow: draft -> review (evaluate) -> revise or autofix ->
// submit; decisions arrive via the 2-second stats poll.
export class CrowdworkerApp {
  state: WorkerState;
  private api: ApiClient;
  private timer: ReturnType<typeof setInterval> | null = null;
  onChange: () => void = () => {};

  constructor(api: ApiClient, workerId: string) {
    this.api = api;
    this.state = { workerId, sampleId: null, report: null, trace: null, stats: null };
  }

  async draft(premise: string, hypothesis: string, label: string): Promise<void> {
    const sample = await this.api.createSample({
      premise, hypothesis, label, author: this.state.workerId,
    });
    this.state.sampleId = sample.id;
    this.state.report = null;
    this.state.trace = null;
    this.onChange();
  }

  async review(): Promise<QualityReport> {
    if (!this.state.sampleId) {
      throw new Error("no draft");
    }
    this.state.report = await this.api.evaluate(this.state.sampleId);
    this.onChange();
    return this.state.report;
  }

  async autofix(maxIter = 10): Promise<FixTraceDto> {
    if (!this.state.sampleId) {
      throw new Error("no draft");
    }
    this.state.trace = await this.api.autofix(this.state.sampleId, maxIter);
    this.onChange();
    return this.state.trace;
  }

  async submit(): Promise<void> {
    if (!this.state.sampleId) {
      throw new Error("no draft");
    }
    await this.api.submit(this.state.sampleId);
    await this.poll();
  }

  async poll(): Promise<void> {
    try {
      this.state.stats = await this.api.workerStats(this.state.workerId);
    } catch {
      return; // no submissions yet; keep previous stats
    }
    this.onChange();
  }

  startPolling(intervalMs: number = POLL_INTERVAL_MS): void {
    this.stopPolling();
    this.timer = setInterval(() => void this.poll(), intervalMs);
  }

  stopPolling(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}

// Seven flag circles with tooltips listing the server-provided highlights.
export function renderFlagRow(report: QualityReport, palette: Palette): string {
  const circles = report.scores.map((s, i) =>
    el(
      "circle",
      {
        class: `flag-circle flag-${s.component}`,
        cx: 30 + i * 50, cy: 25, r: 16,
        fill: flagColor(s.flag, palette),
        "data-component": s.component,
      },
      [
        title(
          [
            `${s.component}: ${s.flag} (artifact ${s.artifact.toFixed(3)})`,
            ...s.highlights.map((h) => `${h.span}: ${h.reason}`),
          ].join("\n"),
        ),
      ],
    ),
  );
  return svg(380, 50, circles, "flag-row");
}

export function renderTrace(trace: FixTraceDto): string {
  const rows = trace.iterations.map((it, i) =>
    el("li", { class: "fix-iteration" }, [
      `#${i + 1}: "${it.replaced_word}" -> "${it.replacement}" ` +
        `(overall ${it.before.overall.toFixed(3)} -> ${it.after.overall.toFixed(3)}): ` +
        it.hypothesis,
    ]),
  );
  return el("ol", { class: `fix-trace status-${trace.status}` }, rows);
}

export function renderStats(stats: WorkerStatsDto): string {
  const dist = Object.entries(stats.distribution)
    .map(([k, v]) => `${k}: ${v}`)
    .join(", ");
  const points = stats.history
    .map(([n, q], i) => `${20 + i * 20},${110 - q * 100}`)
    .join(" ");
  return [
    el("p", { class: "counters" }, [
      `submitted ${stats.submitted}, reviewed ${stats.reviewed}, pending ${stats.pending}`,
    ]),
    el("p", { class: "decision-pie-data" }, [dist || "no decisions yet"]),
    svg(
      Math.max(120, 40 + stats.history.length * 20),
      120,
      points
        ? [el("polyline", { class: "history-line", points, fill: "none", stroke: "#1565c0" })]
        : [],
      "history-chart",
    ),
  ].join("");
}
