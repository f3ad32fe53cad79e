/** Typed client for the optistop /v1 JSON API (the only backend the UI talks to). */

export interface ModelJson {
  mu: number;
  a: number;
  b: number;
}

export interface CostJson {
  c: number;
}

export interface AdviceJson {
  z0: number | null;
  v_plus: number | null;
  value_of_one_more: number | null;
  cost: number;
  recommendation: "sample_more" | "stop";
  posterior_best_worth: number | null;
}

export interface ObservationJson {
  measured_worth: number;
  posterior_worth: number;
}

export interface SessionSummaryJson {
  session_id: string;
  model: ModelJson;
  cost: CostJson;
  observations: ObservationJson[];
  best_measured: number | null;
  created: number;
  updated: number;
  advice: AdviceJson;
}

export interface PlanJson {
  n_star: number;
  expected_gain: number | null;
  diverges: boolean;
  rationale: string;
  gain_curve: [number, number][];
  marginals: [number, number][];
}

export type DistJson =
  | { family: "std_normal" }
  | { family: "normal"; mean: number; spread: number }
  | { family: "uniform"; lo: number; hi: number }
  | { family: "pareto"; alpha: number };

export interface ApiErrorBody {
  error: string;
  field?: string;
}

/** Service-reported failure (validation, unknown session, divergent gain). */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.field ? `${body.error} (${body.field})` : body.error);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  createSession(model: ModelJson, cost: CostJson): Promise<{ session_id: string }> {
    return this.request("POST", "/v1/sessions", { model, cost });
  }

  addObservation(sessionId: string, measuredWorth: number): Promise<AdviceJson> {
    return this.request("POST", `/v1/sessions/${sessionId}/observations`, {
      measured_worth: measuredWorth,
    });
  }

  getSession(sessionId: string): Promise<SessionSummaryJson> {
    return this.request("GET", `/v1/sessions/${sessionId}`);
  }

  /** Stateless what-if advice; never touches a stored session. */
  advise(model: ModelJson, cost: CostJson, measuredWorths: number[]): Promise<AdviceJson> {
    return this.request("POST", "/v1/advise", {
      model,
      cost,
      measured_worths: measuredWorths,
    });
  }

  planNoisy(model: ModelJson, cost: CostJson, nMax: number): Promise<PlanJson> {
    return this.request("POST", "/v1/plan", { model, cost, n_max: nMax });
  }

  planIdeal(dist: DistJson, cost: CostJson, nMax: number): Promise<PlanJson> {
    return this.request("POST", "/v1/plan", { dist, cost, n_max: nMax });
  }
}
