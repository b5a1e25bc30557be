/**
 * The six criteria steps of the modeling request, one per schema class.
 * Every field either maps to one query condition or, when left at ANY/blank,
 * contributes nothing. Bounded fields emit <= (budgets, maxima) or >=
 * (device counts, minima); the accumulated conditions become the query text
 * posted to the decision session.
 */

export const ANY = "ANY";

export type FieldKind = "choice" | "money" | "integer" | "number" | "yesno" | "text";
export type Operator = "=" | "<=" | ">=" | "contains";

export interface FieldSpec {
  id: string;
  label: string;
  path: string;
  kind: FieldKind;
  op: Operator;
  options?: string[];
}

export interface StepSpec {
  step: number;
  title: string;
  fields: FieldSpec[];
}

export interface Condition {
  path: string;
  op: Operator;
  literal: string | number | boolean;
}

export interface FieldIssue {
  fieldId: string;
  message: string;
}

export const WIZARD_STEPS: StepSpec[] = [
  {
    step: 1,
    title: "Tell me more about your project",
    fields: [
      {
        id: "business_focus",
        label: "Business focus",
        path: "model.application_area",
        kind: "choice",
        op: "=",
        options: [ANY, "Medical", "Retail", "Agriculture", "Industrial"],
      },
      { id: "total_budget", label: "Total budget", path: "model.total_cost", kind: "money", op: "<=" },
      {
        id: "num_devices",
        label: "Number of IoT devices",
        path: "model.num_iot_devices",
        kind: "integer",
        op: ">=",
      },
      {
        id: "device_type",
        label: "Types of IoT devices",
        path: "device.name",
        kind: "choice",
        op: "=",
        options: [ANY, "Raspberry Pi 3", "Jetson Nano", "Coral Dev Board"],
      },
    ],
  },
  {
    step: 2,
    title: "Tell me more about the deep learning network",
    fields: [
      {
        id: "network_specs",
        label: "Network specs",
        path: "dln.name",
        kind: "choice",
        op: "=",
        options: [ANY, "ResNet-50", "MobileNet V3", "VGG-16", "YOLOv5-nano"],
      },
      { id: "training_dataset", label: "Training dataset", path: "dln.training_dataset", kind: "text", op: "contains" },
      { id: "min_layers", label: "No of layers (at least)", path: "dln.num_layers", kind: "integer", op: ">=" },
    ],
  },
  {
    step: 3,
    title: "Cloud server preferences",
    fields: [
      { id: "cloud_host", label: "Host", path: "cloud.host_address", kind: "text", op: "contains" },
      {
        id: "shielded",
        label: "Shielded execution",
        path: "cloud.shielded_execution",
        kind: "yesno",
        op: "=",
      },
      {
        id: "max_response",
        label: "Max cloud response time (ms)",
        path: "cloud.response_time_ms",
        kind: "number",
        op: "<=",
      },
    ],
  },
  {
    step: 4,
    title: "End device specifications",
    fields: [
      { id: "min_memory", label: "Min memory (MB)", path: "device.memory_mb", kind: "integer", op: ">=" },
      { id: "max_price", label: "Max device price", path: "device.price", kind: "money", op: "<=" },
      { id: "framework", label: "DL mobile framework", path: "device.dl_framework", kind: "text", op: "contains" },
    ],
  },
  {
    step: 5,
    title: "Optimization methods",
    fields: [
      {
        id: "required_method",
        label: "Required optimization method",
        path: "optimization.methods",
        kind: "choice",
        op: "contains",
        options: [
          ANY,
          "Pruning",
          "KnowledgeDistillation",
          "Quantization",
          "FogComputing",
          "ShieldedExecution",
          "TensorDecomposition",
          "HardwareOptimization",
          "FineTuning",
        ],
      },
    ],
  },
  {
    step: 6,
    title: "Minimum accepted performance",
    fields: [
      { id: "min_accuracy", label: "Min accuracy (%)", path: "performance.accuracy_pct", kind: "number", op: ">=" },
      {
        id: "max_latency",
        label: "Max system latency (ms)",
        path: "performance.system_latency_ms",
        kind: "number",
        op: "<=",
      },
      { id: "min_stability", label: "Min stability (%)", path: "performance.stability_pct", kind: "number", op: ">=" },
      {
        id: "max_memory",
        label: "Max runtime memory (MB)",
        path: "performance.runtime_memory_mb",
        kind: "number",
        op: "<=",
      },
    ],
  },
];

export function stepSpec(step: number): StepSpec {
  const spec = WIZARD_STEPS.find((s) => s.step === step);
  if (!spec) throw new Error(`no such criteria step: ${step}`);
  return spec;
}

function isBlank(raw: string | undefined): boolean {
  return raw === undefined || raw.trim() === "" || raw.trim().toUpperCase() === ANY;
}

/** Parse one field's raw input into a condition, or null when left at ANY. */
export function fieldCondition(
  field: FieldSpec,
  raw: string | undefined,
): Condition | null | FieldIssue {
  if (isBlank(raw)) return null;
  const text = (raw as string).trim();
  switch (field.kind) {
    case "money": {
      const value = Number(text.replace(/[$,\s]/g, ""));
      if (!Number.isFinite(value) || value < 0) {
        return { fieldId: field.id, message: `${field.label} must be a non-negative amount` };
      }
      return { path: field.path, op: field.op, literal: value };
    }
    case "integer": {
      const value = Number(text.replace(/,/g, ""));
      if (!Number.isInteger(value) || value < 0) {
        return { fieldId: field.id, message: `${field.label} must be a whole number` };
      }
      return { path: field.path, op: field.op, literal: value };
    }
    case "number": {
      const value = Number(text);
      if (!Number.isFinite(value)) {
        return { fieldId: field.id, message: `${field.label} must be a number` };
      }
      return { path: field.path, op: field.op, literal: value };
    }
    case "yesno": {
      const lowered = text.toLowerCase();
      if (lowered !== "yes" && lowered !== "no") {
        return { fieldId: field.id, message: `${field.label} must be yes or no` };
      }
      return { path: field.path, op: field.op, literal: lowered === "yes" };
    }
    case "choice":
    case "text":
      return { path: field.path, op: field.op, literal: text };
  }
}

export interface StepResult {
  conditions: Condition[];
  issues: FieldIssue[];
}

/** Validate one step's inputs; conditions are only usable when issues is empty. */
export function validateStep(spec: StepSpec, values: Record<string, string>): StepResult {
  const conditions: Condition[] = [];
  const issues: FieldIssue[] = [];
  for (const field of spec.fields) {
    const outcome = fieldCondition(field, values[field.id]);
    if (outcome === null) continue;
    if ("message" in outcome) issues.push(outcome);
    else conditions.push(outcome);
  }
  return { conditions, issues };
}

function literalText(literal: string | number | boolean): string {
  if (typeof literal === "string") return JSON.stringify(literal);
  if (typeof literal === "boolean") return literal ? "true" : "false";
  return String(literal);
}

/** Render accumulated conditions as query text for the service to parse. */
export function buildQueryText(conditions: Condition[]): string {
  if (conditions.length === 0) return "SELECT * WHERE { }";
  const body = conditions.map((c) => `${c.path} ${c.op} ${literalText(c.literal)}`).join(" ; ");
  return `SELECT * WHERE { ${body} }`;
}
