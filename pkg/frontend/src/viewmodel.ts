/** Framework-free state for the advisor screen.
 *
 * The DOM layer and the end-to-end tests drive this class identically.  The
 * SAMPLE MORE / STOP badge always reflects the latest advice returned by the
 * service for the live session; what-if previews run through the stateless
 * /v1/advise endpoint and are kept strictly separate so exploration can
 * never corrupt the audit log or masquerade as the real verdict.
 */

import {
  AdviceJson,
  ApiClient,
  ApiError,
  CostJson,
  DistJson,
  ModelJson,
  ObservationJson,
  PlanJson,
} from "./api.js";

export interface FormInputs {
  mu: string;
  a: string;
  b: string;
  c: string;
}

export type FieldErrors = Partial<Record<keyof FormInputs, string>>;

export type Badge = "NO OBSERVATIONS" | "SAMPLE MORE" | "STOP";

export interface WhatIfState {
  c: number;
  b: number;
  advice: AdviceJson | null;
}

export interface PlanView {
  diverges: boolean;
  nStar: number | null;
  curve: [number, number][];
}

function parseField(name: keyof FormInputs, raw: string): number | string {
  const value = Number(raw.trim());
  if (raw.trim() === "" || !Number.isFinite(value)) {
    return "enter a finite number";
  }
  if (name === "a" && value <= 0) return "worth spread must be > 0";
  if (name === "b" && value < 0) return "error spread must be >= 0";
  if (name === "c" && value < 0) return "cost must be >= 0";
  return value;
}

export function validateInputs(inputs: FormInputs): { model?: ModelJson; cost?: CostJson; errors: FieldErrors } {
  const errors: FieldErrors = {};
  const parsed: Partial<Record<keyof FormInputs, number>> = {};
  for (const name of ["mu", "a", "b", "c"] as const) {
    const result = parseField(name, inputs[name]);
    if (typeof result === "string") {
      errors[name] = result;
    } else {
      parsed[name] = result;
    }
  }
  if (Object.keys(errors).length > 0) {
    return { errors };
  }
  return {
    model: { mu: parsed.mu!, a: parsed.a!, b: parsed.b! },
    cost: { c: parsed.c! },
    errors,
  };
}

export class AdvisorViewModel {
  inputs: FormInputs = { mu: "0", a: "1", b: "0", c: "0.1" };
  fieldErrors: FieldErrors = {};
  serviceError: string | null = null;

  sessionId: string | null = null;
  model: ModelJson | null = null;
  cost: CostJson | null = null;
  log: ObservationJson[] = [];
  bestMeasured: number | null = null;
  advice: AdviceJson | null = null;

  whatIf: WhatIfState | null = null;
  plan: PlanView | null = null;

  constructor(private readonly api: ApiClient) {}

  /** Server-authoritative verdict for the live session. */
  get badge(): Badge {
    if (!this.advice || this.log.length === 0) return "NO OBSERVATIONS";
    return this.advice.recommendation === "sample_more" ? "SAMPLE MORE" : "STOP";
  }

  get bestWorth(): number | null {
    if (this.bestMeasured === null || !this.model) return null;
    return this.model.mu + this.bestMeasured;
  }

  /** Validates the form client-side; no request is sent on failure. */
  async startSession(): Promise<boolean> {
    const { model, cost, errors } = validateInputs(this.inputs);
    this.fieldErrors = errors;
    this.serviceError = null;
    if (!model || !cost) return false;
    try {
      const created = await this.api.createSession(model, cost);
      this.sessionId = created.session_id;
      this.model = model;
      this.cost = cost;
      this.log = [];
      this.bestMeasured = null;
      this.advice = null;
      this.whatIf = { c: cost.c, b: model.b, advice: null };
      this.plan = null;
      return true;
    } catch (error) {
      this.serviceError = describe(error);
      return false;
    }
  }

  /** Rebuild the whole view from the server (page refresh / deep link). */
  async restore(sessionId: string): Promise<boolean> {
    try {
      const summary = await this.api.getSession(sessionId);
      this.sessionId = summary.session_id;
      this.model = summary.model;
      this.cost = summary.cost;
      this.inputs = {
        mu: String(summary.model.mu),
        a: String(summary.model.a),
        b: String(summary.model.b),
        c: String(summary.cost.c),
      };
      this.log = summary.observations;
      this.bestMeasured = summary.best_measured;
      this.advice = summary.advice;
      this.whatIf = { c: summary.cost.c, b: summary.model.b, advice: null };
      this.serviceError = null;
      return true;
    } catch (error) {
      this.serviceError = describe(error);
      return false;
    }
  }

  /** Log one measurement (worth scale). Non-numeric input never leaves the client. */
  async logMeasurement(raw: string): Promise<boolean> {
    if (!this.sessionId) {
      this.serviceError = "start a session first";
      return false;
    }
    const value = Number(raw.trim());
    if (raw.trim() === "" || !Number.isFinite(value)) {
      this.fieldErrors = { ...this.fieldErrors };
      this.serviceError = `not a number: ${raw}`;
      return false;
    }
    try {
      this.advice = await this.api.addObservation(this.sessionId, value);
      const summary = await this.api.getSession(this.sessionId);
      this.log = summary.observations;
      this.bestMeasured = summary.best_measured;
      this.serviceError = null;
      return true;
    } catch (error) {
      this.serviceError = describe(error);
      return false;
    }
  }

  /** What-if preview for different cost/noise; leaves the session untouched. */
  async updateWhatIf(changes: Partial<{ c: number; b: number }>): Promise<AdviceJson | null> {
    if (!this.model || !this.cost) return null;
    const c = changes.c ?? this.whatIf?.c ?? this.cost.c;
    const b = changes.b ?? this.whatIf?.b ?? this.model.b;
    const advice = await this.api.advise(
      { mu: this.model.mu, a: this.model.a, b },
      { c },
      this.log.map((entry) => entry.measured_worth),
    );
    this.whatIf = { c, b, advice };
    return advice;
  }

  /** Gain curve g(n) with n* for the current model, for the planned-n view. */
  async loadPlan(nMax = 60): Promise<PlanView | null> {
    if (!this.model || !this.cost) return null;
    this.plan = planView(await this.api.planNoisy(this.model, this.cost, nMax));
    return this.plan;
  }

  /** Ideal-measurement planning for an arbitrary family (the planning tab). */
  async loadIdealPlan(dist: DistJson, c: number, nMax = 60): Promise<PlanView> {
    try {
      return planView(await this.api.planIdeal(dist, { c }, nMax));
    } catch (error) {
      if (error instanceof ApiError && error.body.error === "divergent_gain") {
        return { diverges: true, nStar: null, curve: [] };
      }
      throw error;
    }
  }
}

function planView(plan: PlanJson): PlanView {
  return { diverges: plan.diverges, nStar: plan.n_star, curve: plan.gain_curve };
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  return error instanceof Error ? error.message : String(error);
}
