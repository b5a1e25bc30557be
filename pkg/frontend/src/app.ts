/** Browser bootstrap: wires the pure renderers and wizard state machine to
 * the DOM. The service base URL defaults to the page origin and can be
 * overridden with ?api=http://host:port. */

import { DlomApi } from "./api.js";
import { stepSpec } from "./criteria.js";
import { allPairRows, setIntensity, toggleDirection } from "./elicitation.js";
import type { PairRow } from "./elicitation.js";
import { resultsView } from "./results.js";
import {
  buildNewModel,
  chooseModel,
  finishCriteria,
  goBack,
  initialState,
  submitElicitation,
  submitStep,
  ELICITATION_STEP,
  RESULTS_STEP,
} from "./wizard.js";
import type { WizardState } from "./wizard.js";
import {
  renderClosed,
  renderElicitation,
  renderNoMatch,
  renderResults,
  renderStep,
} from "./render.js";

const params = new URLSearchParams(window.location.search);
const api = new DlomApi(params.get("api") ?? window.location.origin);
const root = document.getElementById("wizard") as HTMLElement;

let state: WizardState = initialState();
let rows: PairRow[] = allPairRows();

function draw(): void {
  if (state.outcome !== null) {
    root.innerHTML = renderClosed(state);
    return;
  }
  if (state.step <= 6) {
    root.innerHTML = renderStep(state);
  } else if (state.step === ELICITATION_STEP) {
    root.innerHTML = renderElicitation(rows, state.rowIssues);
  } else if (state.step === RESULTS_STEP) {
    root.innerHTML = state.noMatch || state.ranking === null
      ? renderNoMatch()
      : renderResults(resultsView(state.ranking));
  }
}

function collectInputs(): Record<string, string> {
  const inputs: Record<string, string> = {};
  for (const field of stepSpec(state.step).fields) {
    const element = document.getElementById(field.id) as
      | HTMLInputElement
      | HTMLSelectElement
      | null;
    if (element) inputs[field.id] = element.value;
  }
  return inputs;
}

function showError(error: unknown): void {
  const banner = document.createElement("div");
  banner.className = "banner";
  banner.textContent = error instanceof Error ? error.message : String(error);
  banner.addEventListener("click", () => banner.remove());
  root.prepend(banner);
}

async function onAction(action: string, target: HTMLElement): Promise<void> {
  try {
    if (action === "back") {
      state = goBack(state);
    } else if (action === "next") {
      state = submitStep(state, collectInputs());
      if (state.step === ELICITATION_STEP) {
        state = await finishCriteria(state, api);
      }
    } else if (action === "toggle") {
      rows = toggleDirection(rows, Number(target.dataset.row));
    } else if (action === "submit-elicitation") {
      state = await submitElicitation(state, api, rows);
    } else if (action === "choose") {
      state = await chooseModel(state, api, target.dataset.model as string);
    } else if (action === "build-new") {
      state = await buildNewModel(state, api);
    }
    draw();
  } catch (error) {
    draw();
    showError(error);
  }
}

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest("[data-action]");
  if (target instanceof HTMLElement) {
    event.preventDefault();
    void onAction(target.dataset.action as string, target);
  }
});

root.addEventListener("change", (event) => {
  const target = event.target as HTMLInputElement;
  if (target.type === "radio" && target.name.startsWith("pair-")) {
    const index = Number(target.name.slice("pair-".length));
    rows = setIntensity(rows, index, target.value as PairRow["intensity"] & string);
  }
});

draw();
