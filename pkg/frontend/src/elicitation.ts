/**
 * Preference-elicitation grid: one row per objective pair, four intensity
 * levels, and an explicit direction toggle naming which side dominates.
 * Only rows the user actually set are submitted.
 */

import { OBJECTIVES } from "./types.js";
import type { ComparisonPayload, IntensityName, ObjectiveName } from "./types.js";

export interface PairRow {
  left: ObjectiveName;
  right: ObjectiveName;
  intensity: IntensityName | null;
  dominant: "left" | "right";
  touched: boolean;
}

export interface RowIssue {
  index: number;
  message: string;
}

/** All 15 objective pairs in canonical order, untouched. */
export function allPairRows(): PairRow[] {
  const rows: PairRow[] = [];
  for (let i = 0; i < OBJECTIVES.length; i += 1) {
    for (let j = i + 1; j < OBJECTIVES.length; j += 1) {
      rows.push({
        left: OBJECTIVES[i],
        right: OBJECTIVES[j],
        intensity: null,
        dominant: "left",
        touched: false,
      });
    }
  }
  return rows;
}

export function setIntensity(rows: PairRow[], index: number, intensity: IntensityName): PairRow[] {
  return rows.map((row, i) =>
    i === index ? { ...row, intensity, touched: true } : row,
  );
}

export function toggleDirection(rows: PairRow[], index: number): PairRow[] {
  return rows.map((row, i) =>
    i === index
      ? { ...row, dominant: row.dominant === "left" ? "right" : "left", touched: true }
      : row,
  );
}

/** A touched row without an intensity cannot be submitted. */
export function rowIssues(rows: PairRow[]): RowIssue[] {
  const issues: RowIssue[] = [];
  rows.forEach((row, index) => {
    if (row.touched && row.intensity === null) {
      issues.push({ index, message: `select an importance level for ${row.left} vs ${row.right}` });
    }
  });
  return issues;
}

/** Directed comparisons for the rows that carry an intensity. */
export function buildComparisons(rows: PairRow[]): ComparisonPayload[] {
  const comparisons: ComparisonPayload[] = [];
  for (const row of rows) {
    if (row.intensity === null) continue;
    const more = row.dominant === "left" ? row.left : row.right;
    const less = row.dominant === "left" ? row.right : row.left;
    comparisons.push({ more, less, intensity: row.intensity });
  }
  return comparisons;
}
