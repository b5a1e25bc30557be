/** HTML renderers for each wizard screen. Pure string builders so the
 * markup is testable without a DOM. */

import { ANY, stepSpec, WIZARD_STEPS } from "./criteria.js";
import type { FieldSpec } from "./criteria.js";
import { INTENSITIES } from "./types.js";
import type { PairRow } from "./elicitation.js";
import type { ResultsView } from "./results.js";
import type { WizardState } from "./wizard.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fieldInput(field: FieldSpec, value: string, issue?: string): string {
  const current = value ?? "";
  let control: string;
  if (field.kind === "choice") {
    const options = (field.options ?? [ANY])
      .map(
        (option) =>
          `<option value="${escapeHtml(option)}"${option === current ? " selected" : ""}>${escapeHtml(option)}</option>`,
      )
      .join("");
    control = `<select id="${field.id}" name="${field.id}">${options}</select>`;
  } else if (field.kind === "yesno") {
    const options = [ANY, "yes", "no"]
      .map(
        (option) =>
          `<option value="${option}"${option === current ? " selected" : ""}>${option}</option>`,
      )
      .join("");
    control = `<select id="${field.id}" name="${field.id}">${options}</select>`;
  } else {
    control = `<input id="${field.id}" name="${field.id}" value="${escapeHtml(current)}" placeholder="${ANY}" />`;
  }
  const error = issue ? `<span class="field-error">${escapeHtml(issue)}</span>` : "";
  return `<label class="field">${escapeHtml(field.label)} ${control}${error}</label>`;
}

export function renderStep(state: WizardState): string {
  const spec = stepSpec(state.step);
  const issueByField = new Map(state.issues.map((issue) => [issue.fieldId, issue.message]));
  const fields = spec.fields
    .map((field) => fieldInput(field, state.values[field.id] ?? "", issueByField.get(field.id)))
    .join("\n");
  const back = state.step > 1 ? '<button data-action="back">Back</button>' : "";
  return [
    `<section class="step" data-step="${spec.step}">`,
    `<h2>Step ${spec.step} of ${WIZARD_STEPS.length}: ${escapeHtml(spec.title)}</h2>`,
    fields,
    `<footer>${back}<button data-action="next">Next</button></footer>`,
    "</section>",
  ].join("\n");
}

export function renderElicitation(rows: PairRow[], issues: { index: number; message: string }[]): string {
  const issueByIndex = new Map(issues.map((issue) => [issue.index, issue.message]));
  const header =
    "<tr><th>criteria 1</th>" +
    INTENSITIES.map((level) => `<th>${level} importance</th>`).join("") +
    "<th>criteria 2</th><th>dominant</th></tr>";
  const body = rows
    .map((row, index) => {
      const radios = INTENSITIES.map(
        (level) =>
          `<td><input type="radio" name="pair-${index}" value="${level}"${row.intensity === level ? " checked" : ""} /></td>`,
      ).join("");
      const toggleLabel = row.dominant === "left" ? row.left : row.right;
      const error = issueByIndex.has(index)
        ? `<tr class="row-error"><td colspan="7">${escapeHtml(issueByIndex.get(index) as string)}</td></tr>`
        : "";
      return (
        `<tr data-row="${index}"><td>${row.left}</td>${radios}<td>${row.right}</td>` +
        `<td><button data-action="toggle" data-row="${index}">${toggleLabel} leads</button></td></tr>` +
        error
      );
    })
    .join("\n");
  return [
    '<section class="elicitation" data-step="7">',
    "<h2>Preference elicitation</h2>",
    `<table>${header}${body}</table>`,
    '<footer><button data-action="back">Back</button>',
    '<button data-action="submit-elicitation">Submit my preference elicitation</button></footer>',
    "</section>",
  ].join("\n");
}

export function renderNoMatch(): string {
  return [
    '<section class="results" data-step="8">',
    "<h2>No stored model matches your criteria</h2>",
    "<p>No match — build a new optimization plan from your requirements?</p>",
    '<footer><button data-action="build-new">Build New</button></footer>',
    "</section>",
  ].join("\n");
}

export function renderResults(view: ResultsView): string {
  const cardRows = view.topCard
    .map(
      (field) =>
        `<li data-field="${field.key}"><span class="label">${escapeHtml(field.label)}:</span> ` +
        `<span class="value">${escapeHtml(field.value)}</span></li>`,
    )
    .join("\n");
  const bars = view.topBars
    .map(
      (bar) =>
        `<div class="bar" data-objective="${bar.objective}">` +
        `<span class="bar-label">${bar.objective} (${bar.value.toFixed(4)})</span>` +
        `<span class="bar-fill" style="width: ${bar.widthPct.toFixed(1)}%"></span></div>`,
    )
    .join("\n");
  const alternates = view.others
    .map((entry) => `<li>${escapeHtml(entry.id)} — score ${entry.score.toFixed(4)}</li>`)
    .join("\n");
  return [
    '<section class="results" data-step="8">',
    "<h2>These are the best suggested models</h2>",
    `<ul class="card">${cardRows}</ul>`,
    `<div class="contributions">${bars}</div>`,
    alternates ? `<h3>Also matched</h3><ol class="alternates">${alternates}</ol>` : "",
    `<footer><button data-action="choose" data-model="${escapeHtml(view.topEntry.id)}">Choose</button>`,
    '<button data-action="build-new">Build New</button></footer>',
    "</section>",
  ].join("\n");
}

export function renderClosed(state: WizardState): string {
  if (state.outcome?.kind === "chosen") {
    return `<section class="closed"><h2>Model ${escapeHtml(state.outcome.modelId ?? "")} chosen</h2></section>`;
  }
  const draftId = state.draft ? String(state.draft.id) : "";
  const methods = Array.isArray(state.draft?.["optimization"])
    ? ""
    : escapeHtml(JSON.stringify((state.draft as Record<string, unknown>)?.["optimization"] ?? ""));
  return [
    '<section class="closed">',
    `<h2>New draft ${escapeHtml(draftId)} saved to the repository</h2>`,
    `<p class="draft-methods">${methods}</p>`,
    "</section>",
  ].join("\n");
}
