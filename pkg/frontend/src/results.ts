/**
 * Result-card and explanation view models. Every displayed number comes
 * straight from a service response field; the only arithmetic here is
 * presentational bar sizing.
 */

import { OBJECTIVES } from "./types.js";
import type { ModelCard, ObjectiveName, RankingEntry, RankingResponse } from "./types.js";

export interface CardField {
  key: keyof ModelCard;
  label: string;
  value: string;
}

export const CARD_FIELD_LABELS: [keyof ModelCard, string][] = [
  ["total_cost", "Total cost"],
  ["purpose", "Purpose"],
  ["rating", "Ratings"],
  ["year_created", "Year created"],
  ["application_area", "Field"],
  ["num_iot_devices", "No of IoT devices"],
  ["cost_per_device", "Cost of each device"],
  ["device_name", "IoT device"],
  ["dln_name", "DLN"],
  ["cloud_host", "Cloud server specs"],
  ["accuracy_pct", "Accuracy"],
  ["system_latency_ms", "System latency"],
  ["inference_latency_ms", "Inference latency"],
  ["stability_pct", "Stability"],
  ["runtime_memory_mb", "Average runtime memory consumption"],
  ["optimization_methods", "Optimization methods"],
];

const UNITS: Partial<Record<keyof ModelCard, (value: string) => string>> = {
  total_cost: (v) => `$${v}`,
  cost_per_device: (v) => `$${v}`,
  accuracy_pct: (v) => `${v}%`,
  stability_pct: (v) => `${v}%`,
  system_latency_ms: (v) => `${v} ms`,
  inference_latency_ms: (v) => `${v} ms`,
  runtime_memory_mb: (v) => `${v} MB`,
};

function formatValue(key: keyof ModelCard, raw: ModelCard[keyof ModelCard]): string {
  if (raw === null || raw === undefined) return "";
  const text = Array.isArray(raw) ? raw.join(", ") : String(raw);
  if (text === "") return "";
  const unit = UNITS[key];
  return unit ? unit(text) : text;
}

/** The 16 card fields, labeled and formatted for display. */
export function cardFields(card: ModelCard): CardField[] {
  return CARD_FIELD_LABELS.map(([key, label]) => ({
    key,
    label,
    value: formatValue(key, card[key]),
  }));
}

export interface ContributionBar {
  objective: ObjectiveName;
  value: number;
  widthPct: number;
}

/** Per-objective contribution bars; widths scale against the row's score. */
export function contributionBars(entry: RankingEntry): ContributionBar[] {
  const total = entry.score > 0 ? entry.score : 1;
  return OBJECTIVES.map((objective) => {
    const value = entry.contributions[objective] ?? 0;
    return {
      objective,
      value,
      widthPct: Math.max(0, Math.min(100, (value / total) * 100)),
    };
  });
}

export interface ResultsView {
  topCard: CardField[];
  topEntry: RankingEntry;
  topBars: ContributionBar[];
  weights: Record<ObjectiveName, number>;
  consistency: number;
  others: RankingEntry[];
}

export function resultsView(ranking: RankingResponse): ResultsView {
  const [top, ...others] = ranking.ranking;
  return {
    topCard: cardFields(ranking.top_model),
    topEntry: top,
    topBars: contributionBars(top),
    weights: ranking.weights,
    consistency: ranking.consistency,
    others,
  };
}
