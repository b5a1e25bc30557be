/** Wire types for the /api/v1 service the wizard talks to. */

export type ObjectiveName =
  | "performance"
  | "reliability"
  | "security"
  | "cost"
  | "latency"
  | "complexity";

export const OBJECTIVES: ObjectiveName[] = [
  "performance",
  "reliability",
  "security",
  "cost",
  "latency",
  "complexity",
];

export type IntensityName = "equal" | "weak" | "stronger" | "absolute";

export const INTENSITIES: IntensityName[] = ["equal", "weak", "stronger", "absolute"];

export interface ComparisonPayload {
  more: ObjectiveName;
  less: ObjectiveName;
  intensity: IntensityName;
}

export interface SessionView {
  id: string;
  state: string;
  criteria: string | null;
  candidates: string[];
  weights: Record<ObjectiveName, number> | null;
  ranking: { id: string; score: number }[];
  outcome: { kind: string; model_id: string | null } | null;
}

export interface RankingEntry {
  id: string;
  score: number;
  contributions: Record<ObjectiveName, number>;
}

/** The 16-field result card assembled by the service for the top model. */
export interface ModelCard {
  id: string;
  total_cost: string;
  purpose: string;
  rating: number;
  year_created: number;
  application_area: string;
  num_iot_devices: number;
  cost_per_device: string;
  device_name: string;
  dln_name: string;
  cloud_host: string;
  accuracy_pct: number | null;
  system_latency_ms: number | null;
  inference_latency_ms: number | null;
  stability_pct: number | null;
  runtime_memory_mb: number | null;
  optimization_methods: string[];
}

export interface RankingResponse {
  weights: Record<ObjectiveName, number>;
  consistency: number;
  ranking: RankingEntry[];
  top_model: ModelCard;
}

export type ModelRecordJson = Record<string, unknown> & { id: string };

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}
