// Payload shapes of the curation-service HTTP API. Every number and flag
// rendered by the UI comes from one of these fields.

export type Flag = "green" | "yellow" | "red";
export type ComponentId = "c1" | "c2" | "c3" | "c4" | "c5" | "c6" | "c7";

export const COMPONENTS: ComponentId[] = ["c1", "c2", "c3", "c4", "c5", "c6", "c7"];

export interface Highlight {
  span: string;
  reason: string;
}

export interface ComponentScore {
  component: ComponentId;
  raw: number;
  artifact: number;
  percentile: number;
  flag: Flag;
  highlights: Highlight[];
}

export interface QualityReport {
  sample_id: string;
  scores: ComponentScore[];
  overall: number;
  accept_prob: number;
}

export interface SampleDto {
  id: string;
  premise: string;
  hypothesis: string;
  label: string;
  split: string;
  author: string;
  state: string;
}

export interface FixIterationDto {
  hypothesis: string;
  chosen_index: number;
  replaced_word: string;
  replacement: string;
  before: QualityReport;
  after: QualityReport;
}

export interface FixTraceDto {
  sample: SampleDto;
  iterations: FixIterationDto[];
  status: "reached_target" | "max_iter" | "stuck";
}

export interface BatchDto {
  id: number;
  sample_ids: string[];
  decisions: Record<string, string>;
  closed: boolean;
}

export interface WorkerStatsDto {
  submitted: number;
  reviewed: number;
  pending: number;
  distribution: Record<string, number>;
  history: [number, number][];
  rank: number;
  median_overall: number;
}

export interface ComponentReport {
  component: ComponentId;
  aggregate: number;
  flag: Flag;
  flag_histogram: Record<Flag, number>;
  worst: { id: string; artifact: number }[];
}

export interface CorpusReport {
  size: number;
  components: ComponentReport[];
}

export interface CandidateOverlay {
  id: string;
  artifact: number;
  raw: number;
  flag: Flag;
}

export interface VizC1 {
  component: "c1";
  bars: { id: string; new_types: number; vocab_size_after: number; flag: Flag }[];
  length_histogram: { edges: number[]; counts: number[] };
  candidate?: CandidateOverlay;
}

export interface VizC2 {
  component: "c2";
  granularity: number;
  bubbles: { gram: string; count: number; flag: Flag }[];
  bullet: { sigma_current: number; sigma_star: number; sigma_after: number | null };
  candidate?: CandidateOverlay;
}

export interface VizC3 {
  component: "c3";
  nodes: { id: string; flag: Flag; split: string }[];
  links: { source: string; target: string; similarity: number }[];
  bars: { id: string; similarity: number; flag: Flag }[];
  tau_link: number;
  candidate?: CandidateOverlay;
}

export interface VizC4 {
  component: "c4";
  treemap: {
    id: string;
    raw: number;
    artifact: number;
    flag: Flag;
    size: number;
    outlined: boolean;
  }[];
  heatmap: { u: string; v: string; value: number; flag: Flag }[];
  mean_raw: number;
  candidate?: CandidateOverlay;
}

export interface VizC5 {
  component: "c5";
  histogram: { edges: number[]; counts: number[] };
  kde: { x: number; density: number }[];
  band: [number, number];
  candidate?: CandidateOverlay;
}

export interface VizC6 {
  component: "c6";
  granularity: number;
  remove_outliers: boolean;
  groups: {
    label: string;
    points: { gram: string; count: number }[];
    stats: { min: number; max: number; median: number; mean: number };
  }[];
  candidate?: CandidateOverlay;
}

export interface VizC7 {
  component: "c7";
  links: {
    from_id: string;
    from_split: string;
    to_id: string;
    to_part: string;
    similarity: number;
    flag: Flag;
  }[];
  candidate?: CandidateOverlay;
}

export type VizDataset = VizC1 | VizC2 | VizC3 | VizC4 | VizC5 | VizC6 | VizC7;

export interface ApiErrorBody {
  code: "validation" | "not_found" | "illegal_transition" | "state_error";
  message: string;
  field?: string;
}
