import type {
  ApiErrorBody,
  BatchDto,
  ComponentId,
  CorpusReport,
  FixTraceDto,
  QualityReport,
  SampleDto,
  VizDataset,
  WorkerStatsDto,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  code: ApiErrorBody["code"];
  field?: string;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.field = body.field;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface DraftBody {
  premise: string;
  hypothesis: string;
  label: string;
  split?: string;
  author?: string;
  id?: string;
}

export class ApiClient {
  private base: string;
  private fetchFn: FetchLike;

  constructor(base = "", fetchFn: FetchLike = (...a) => fetch(...a)) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    const data = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, data as ApiErrorBody);
    }
    return data as T;
  }

  createSample(body: DraftBody): Promise<SampleDto> {
    return this.request("POST", "/samples", body);
  }

  evaluate(sampleId: string): Promise<QualityReport> {
    return this.request("POST", `/samples/${encodeURIComponent(sampleId)}/evaluate`);
  }

  autofix(sampleId: string, maxIter = 10): Promise<FixTraceDto> {
    return this.request("POST", `/samples/${encodeURIComponent(sampleId)}/autofix`, {
      max_iter: maxIter,
    });
  }

  submit(sampleId: string): Promise<{ batch_id: number; position: number }> {
    return this.request("POST", `/samples/${encodeURIComponent(sampleId)}/submit`);
  }

  batches(): Promise<BatchDto[]> {
    return this.request("GET", "/queue/batches");
  }

  decide(
    batchId: number,
    sampleId: string,
    action: "accept" | "reject" | "repair_then_accept",
    analyst: string,
  ): Promise<SampleDto> {
    return this.request("POST", `/batches/${batchId}/decide`, {
      sample_id: sampleId,
      action,
      analyst,
    });
  }

  undoDecision(batchId: number, sampleId: string): Promise<SampleDto> {
    return this.request("POST", `/batches/${batchId}/undo`, { sample_id: sampleId });
  }

  workerStats(workerId: string): Promise<WorkerStatsDto> {
    return this.request("GET", `/workers/${encodeURIComponent(workerId)}/stats`);
  }

  viz(
    component: ComponentId,
    params: Record<string, string | number | boolean> = {},
  ): Promise<VizDataset> {
    const query = Object.entries(params)
      .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
      .join("&");
    const path = query ? `/viz/${component}?${query}` : `/viz/${component}`;
    return this.request("GET", path);
  }

  corpusReport(top = 5): Promise<CorpusReport> {
    return this.request("GET", `/corpus/report?top=${top}`);
  }

  splitRandomize(): Promise<{ sizes: Record<string, number> }> {
    return this.request("POST", "/corpus/split/randomize");
  }

  splitUndo(): Promise<unknown> {
    return this.request("POST", "/corpus/split/undo");
  }

  splitSave(): Promise<unknown> {
    return this.request("POST", "/corpus/split/save");
  }

  getConfig(): Promise<Record<string, unknown>> {
    return this.request("GET", "/config");
  }

  putConfig(config: Record<string, unknown>): Promise<unknown> {
    return this.request("PUT", "/config", config);
  }
}
