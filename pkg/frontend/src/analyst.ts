import type { ApiClient } from "./api.js";
import type { Palette } from "./palette.js";
import type {
  ComponentId,
  VizC1, VizC2, VizC3, VizC4, VizC5, VizC6, VizC7,
  VizDataset,
} from "./types.js";
import { renderC1 } from "./views/c1.js";
import { renderC2 } from "./views/c2.js";
import { renderC3 } from "./views/c3.js";
import { renderC4 } from "./views/c4.js";
import { renderC5 } from "./views/c5.js";
import { renderC6 } from "./views/c6.js";
import { renderC7 } from "./views/c7.js";

export type ViewId = "home" | ComponentId;

export interface ViewParams {
  n?: number; // c2/c6 granularity
  bins?: number; // c5 histogram bins
  scope?: "premise" | "hypothesis" | "both"; // c4 heatmap scope
  remove_outliers?: boolean; // c6
}

export function renderComponentView(data: VizDataset, palette: Palette): string {
  switch (data.component) {
    case "c1": return renderC1(data as VizC1, palette);
    case "c2": return renderC2(data as VizC2, palette);
    case "c3": return renderC3(data as VizC3, palette);
    case "c4": return renderC4(data as VizC4, palette);
    case "c5": return renderC5(data as VizC5, palette);
    case "c6": return renderC6(data as VizC6, palette);
    case "c7": return renderC7(data as VizC7, palette);
  }
}

// Analyst screen: one component view at a time, simulate overlay toggled by
// re-fetching the same view with the candidate id attached. Turning the
// overlay off re-fetches without the candidate, so before/after round-trips
// render the identical markup.
export class AnalystApp {
  view: Exclude<ViewId, "home"> = "c1";
  simulate = false;
  candidateId: string | null = null;
  params: ViewParams = {};
  private api: ApiClient;

  constructor(api: ApiClient) {
    this.api = api;
  }

  setView(view: Exclude<ViewId, "home">): void {
    this.view = view;
  }

  setCandidate(sampleId: string | null): void {
    this.candidateId = sampleId;
    if (sampleId === null) {
      this.simulate = false;
    }
  }

  toggleSimulate(): void {
    if (this.candidateId !== null) {
      this.simulate = !this.simulate;
    }
  }

  queryParams(): Record<string, string | number | boolean> {
    const query: Record<string, string | number | boolean> = {};
    if (this.params.n !== undefined) query.n = this.params.n;
    if (this.params.bins !== undefined) query.bins = this.params.bins;
    if (this.params.scope !== undefined) query.scope = this.params.scope;
    if (this.params.remove_outliers) query.remove_outliers = true;
    if (this.simulate && this.candidateId !== null) query.candidate = this.candidateId;
    return query;
  }

  async load(): Promise<VizDataset> {
    return this.api.viz(this.view, this.queryParams());
  }

  async render(palette: Palette): Promise<string> {
    return renderComponentView(await this.load(), palette);
  }

  decide(batchId: number, sampleId: string, action: "accept" | "reject" | "repair_then_accept", analyst: string) {
    return this.api.decide(batchId, sampleId, action, analyst);
  }

  undo(batchId: number, sampleId: string) {
    return this.api.undoDecision(batchId, sampleId);
  }
}
