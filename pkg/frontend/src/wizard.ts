/**
 * Wizard state machine. Steps 1-6 collect criteria (one schema class each),
 * step 7 is preference elicitation, step 8 shows ranked results with the
 * Choose / Build New decision.
 *
 * A run issues exactly one decision session and drives it through
 * criteria -> run-query -> [comparisons] -> ranking -> (choose | build-new).
 * All scores, weights, and card values come from service responses.
 */

import {
  buildQueryText,
  stepSpec,
  validateStep,
  WIZARD_STEPS,
} from "./criteria.js";
import type { Condition, FieldIssue } from "./criteria.js";
import { buildComparisons, rowIssues } from "./elicitation.js";
import type { PairRow, RowIssue } from "./elicitation.js";
import type {
  ComparisonPayload,
  ModelRecordJson,
  RankingResponse,
  SessionView,
} from "./types.js";

/** The slice of the service client the wizard drives. */
export interface WizardApi {
  createSession(): Promise<{ id: string }>;
  submitCriteria(sessionId: string, queryText: string): Promise<SessionView>;
  runQuery(sessionId: string): Promise<SessionView>;
  submitComparisons(sessionId: string, comparisons: ComparisonPayload[]): Promise<SessionView>;
  ranking(sessionId: string): Promise<RankingResponse>;
  choose(sessionId: string, modelId: string): Promise<SessionView>;
  buildNew(sessionId: string, maxMethods?: number): Promise<ModelRecordJson>;
}

export const ELICITATION_STEP = 7;
export const RESULTS_STEP = 8;

export interface WizardOutcome {
  kind: "chosen" | "synthesized" | "abandoned";
  modelId: string | null;
}

export interface WizardState {
  step: number;
  /** raw input per field id; Back keeps everything the user typed */
  values: Record<string, string>;
  conditionsByStep: Record<number, Condition[]>;
  issues: FieldIssue[];
  sessionId: string | null;
  candidates: string[];
  noMatch: boolean;
  ranking: RankingResponse | null;
  rowIssues: RowIssue[];
  outcome: WizardOutcome | null;
  draft: ModelRecordJson | null;
}

export function initialState(): WizardState {
  return {
    step: 1,
    values: {},
    conditionsByStep: {},
    issues: [],
    sessionId: null,
    candidates: [],
    noMatch: false,
    ranking: null,
    rowIssues: [],
    outcome: null,
    draft: null,
  };
}

export function allConditions(state: WizardState): Condition[] {
  return WIZARD_STEPS.flatMap((spec) => state.conditionsByStep[spec.step] ?? []);
}

export function queryText(state: WizardState): string {
  return buildQueryText(allConditions(state));
}

/**
 * Validate the current step's inputs. On success the step advances (through
 * step 6); on failure the step stays put with inline issues. Values are
 * merged either way so Back never loses input.
 */
export function submitStep(state: WizardState, inputs: Record<string, string>): WizardState {
  if (state.step < 1 || state.step > 6) {
    throw new Error(`submitStep is only valid on criteria steps, not step ${state.step}`);
  }
  const values = { ...state.values, ...inputs };
  const { conditions, issues } = validateStep(stepSpec(state.step), values);
  if (issues.length > 0) {
    return { ...state, values, issues };
  }
  return {
    ...state,
    values,
    issues: [],
    conditionsByStep: { ...state.conditionsByStep, [state.step]: conditions },
    step: state.step + 1,
  };
}

/** Step back one screen, preserving everything entered so far. */
export function goBack(state: WizardState): WizardState {
  if (state.step <= 1) return state;
  return { ...state, step: state.step - 1, issues: [], rowIssues: [] };
}

/**
 * Called once step 6 has validated (state.step is then 7): opens the single
 * session, posts the accumulated criteria, and runs the query. Zero matches
 * flip to the no-match results screen; a single match is already ranked by
 * the service and jumps straight to results.
 */
export async function finishCriteria(state: WizardState, api: WizardApi): Promise<WizardState> {
  if (state.step !== ELICITATION_STEP) {
    throw new Error("finishCriteria requires all six criteria steps to be complete");
  }
  let sessionId = state.sessionId;
  if (sessionId === null) {
    sessionId = (await api.createSession()).id;
  }
  await api.submitCriteria(sessionId, queryText(state));
  const view = await api.runQuery(sessionId);
  if (view.candidates.length === 0) {
    return { ...state, sessionId, candidates: [], noMatch: true, step: RESULTS_STEP };
  }
  if (view.state === "Ranked") {
    const ranking = await api.ranking(sessionId);
    return { ...state, sessionId, candidates: view.candidates, ranking, step: RESULTS_STEP };
  }
  return { ...state, sessionId, candidates: view.candidates, step: ELICITATION_STEP };
}

/** Post the touched comparison rows, then fetch weights and ranking. */
export async function submitElicitation(
  state: WizardState,
  api: WizardApi,
  rows: PairRow[],
): Promise<WizardState> {
  if (state.step !== ELICITATION_STEP || state.sessionId === null) {
    throw new Error("elicitation requires an open session on step 7");
  }
  const issues = rowIssues(rows);
  if (issues.length > 0) {
    return { ...state, rowIssues: issues };
  }
  await api.submitComparisons(state.sessionId, buildComparisons(rows));
  const ranking = await api.ranking(state.sessionId);
  return { ...state, rowIssues: [], ranking, step: RESULTS_STEP };
}

export async function chooseModel(
  state: WizardState,
  api: WizardApi,
  modelId: string,
): Promise<WizardState> {
  if (state.sessionId === null) throw new Error("no open session");
  const view = await api.choose(state.sessionId, modelId);
  return {
    ...state,
    outcome: { kind: "chosen", modelId: view.outcome?.model_id ?? modelId },
  };
}

export async function buildNewModel(
  state: WizardState,
  api: WizardApi,
  maxMethods?: number,
): Promise<WizardState> {
  if (state.sessionId === null) throw new Error("no open session");
  const draft = await api.buildNew(state.sessionId, maxMethods);
  return {
    ...state,
    draft,
    outcome: { kind: "synthesized", modelId: draft.id },
  };
}
