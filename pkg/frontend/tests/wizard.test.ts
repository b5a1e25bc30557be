import { describe, expect, it } from "vitest";

import {
  allConditions,
  buildNewModel,
  chooseModel,
  finishCriteria,
  goBack,
  initialState,
  queryText,
  submitElicitation,
  submitStep,
  ELICITATION_STEP,
  RESULTS_STEP,
} from "../src/wizard.js";
import type { WizardApi, WizardState } from "../src/wizard.js";
import type { SessionView } from "../src/types.js";
import { RECORDED_RANKING, scenarioRows } from "./fixtures.js";

function sessionView(partial: Partial<SessionView>): SessionView {
  return {
    id: "s1",
    state: "Created",
    criteria: null,
    candidates: [],
    weights: null,
    ranking: [],
    outcome: null,
    ...partial,
  };
}

interface FakeOptions {
  candidates?: string[];
  autoRanked?: boolean;
}

/** Scripted service double that records every call in order. */
function fakeApi(options: FakeOptions = {}) {
  const candidates = options.candidates ?? ["med-skin-resnet", "med-vgg-fog", "med-mobilenet-edge"];
  const calls: string[] = [];
  const api: WizardApi = {
    async createSession() {
      calls.push("createSession");
      return { id: "s1" };
    },
    async submitCriteria(sessionId, query) {
      calls.push(`submitCriteria:${query}`);
      return sessionView({ id: sessionId, state: "CriteriaCollected" });
    },
    async runQuery(sessionId) {
      calls.push("runQuery");
      return sessionView({
        id: sessionId,
        state: options.autoRanked ? "Ranked" : "Queried",
        candidates,
      });
    },
    async submitComparisons(sessionId, comparisons) {
      calls.push(`submitComparisons:${comparisons.length}`);
      return sessionView({ id: sessionId, state: "Ranked", candidates });
    },
    async ranking() {
      calls.push("ranking");
      return RECORDED_RANKING;
    },
    async choose(sessionId, modelId) {
      calls.push(`choose:${modelId}`);
      return sessionView({
        id: sessionId,
        state: "Closed",
        candidates,
        outcome: { kind: "chosen", model_id: modelId },
      });
    },
    async buildNew() {
      calls.push("buildNew");
      return { id: "synth-1", provenance: "synthesized" };
    },
  };
  return { api, calls };
}

function throughStepSix(state: WizardState): WizardState {
  state = submitStep(state, {
    business_focus: "Medical",
    total_budget: "14000",
    num_devices: "10",
  });
  for (let step = 2; step <= 6; step += 1) {
    state = submitStep(state, {});
  }
  return state;
}

describe("step gating", () => {
  it("advances only when the current step validates", () => {
    let state = initialState();
    state = submitStep(state, { total_budget: "not money" });
    expect(state.step).toBe(1);
    expect(state.issues).toHaveLength(1);
    state = submitStep(state, { total_budget: "14000" });
    expect(state.step).toBe(2);
    expect(state.issues).toEqual([]);
  });

  it("Back preserves entered values and re-advancing keeps them", () => {
    let state = initialState();
    state = submitStep(state, {
      business_focus: "Medical",
      total_budget: "14000",
      num_devices: "10",
    });
    expect(state.step).toBe(2);
    state = goBack(state);
    expect(state.step).toBe(1);
    expect(state.values.total_budget).toBe("14000");
    state = submitStep(state, {});
    expect(state.step).toBe(2);
    expect(allConditions(state)).toHaveLength(3);
  });

  it("collects conditions across all six steps into one query", () => {
    let state = initialState();
    state = submitStep(state, { business_focus: "Medical", num_devices: "10" });
    state = submitStep(state, { min_layers: "50", training_dataset: "medical" });
    for (let step = 3; step <= 6; step += 1) state = submitStep(state, {});
    expect(state.step).toBe(ELICITATION_STEP);
    expect(queryText(state)).toBe(
      'SELECT * WHERE { model.application_area = "Medical" ; ' +
        'model.num_iot_devices >= 10 ; dln.training_dataset contains "medical" ; ' +
        "dln.num_layers >= 50 }",
    );
  });
});

describe("session flow", () => {
  it("runs exactly one session with the prescribed event sequence", async () => {
    const { api, calls } = fakeApi();
    let state = throughStepSix(initialState());
    state = await finishCriteria(state, api);
    expect(state.step).toBe(ELICITATION_STEP);
    expect(state.candidates).toHaveLength(3);
    state = await submitElicitation(state, api, scenarioRows());
    expect(state.step).toBe(RESULTS_STEP);
    expect(state.ranking).not.toBeNull();
    state = await chooseModel(state, api, "med-skin-resnet");
    expect(state.outcome).toEqual({ kind: "chosen", modelId: "med-skin-resnet" });

    expect(calls.filter((c) => c === "createSession")).toHaveLength(1);
    expect(calls.map((c) => c.split(":")[0])).toEqual([
      "createSession",
      "submitCriteria",
      "runQuery",
      "submitComparisons",
      "ranking",
      "choose",
    ]);
    expect(calls[1]).toContain('model.application_area = "Medical"');
  });

  it("zero candidates short-circuit to the no-match results screen", async () => {
    const { api, calls } = fakeApi({ candidates: [] });
    let state = throughStepSix(initialState());
    state = await finishCriteria(state, api);
    expect(state.step).toBe(RESULTS_STEP);
    expect(state.noMatch).toBe(true);
    state = await buildNewModel(state, api);
    expect(state.outcome?.kind).toBe("synthesized");
    expect(state.draft?.id).toBe("synth-1");
    expect(calls).toEqual([
      "createSession",
      expect.stringContaining("submitCriteria"),
      "runQuery",
      "buildNew",
    ]);
  });

  it("a single auto-ranked candidate jumps straight to results", async () => {
    const { api, calls } = fakeApi({ candidates: ["med-vgg-fog"], autoRanked: true });
    let state = throughStepSix(initialState());
    state = await finishCriteria(state, api);
    expect(state.step).toBe(RESULTS_STEP);
    expect(state.ranking).not.toBeNull();
    expect(calls).toContain("ranking");
    expect(calls).not.toContain("submitComparisons:7");
  });

  it("elicitation with a touched-but-unset row stays put with a prompt", async () => {
    const { api, calls } = fakeApi();
    let state = throughStepSix(initialState());
    state = await finishCriteria(state, api);
    const rows = scenarioRows();
    rows.push({ left: "performance", right: "security", intensity: null, dominant: "right", touched: true });
    state = await submitElicitation(state, api, rows);
    expect(state.step).toBe(ELICITATION_STEP);
    expect(state.rowIssues).toHaveLength(1);
    expect(calls).not.toContain("submitComparisons:7");
  });

  it("submitStep refuses to run on non-criteria steps", async () => {
    const { api } = fakeApi();
    let state = throughStepSix(initialState());
    state = await finishCriteria(state, api);
    expect(() => submitStep(state, {})).toThrow(/criteria steps/);
  });
});
