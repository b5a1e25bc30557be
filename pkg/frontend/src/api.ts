/** Thin typed client over the service's /api/v1 endpoints. */

import type {
  ApiErrorBody,
  ComparisonPayload,
  ModelRecordJson,
  RankingResponse,
  SessionView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly detail?: unknown,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class DlomApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let parsed: ApiErrorBody = { code: "internal", message: response.statusText };
      try {
        parsed = (await response.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body: keep the status text
      }
      throw new ApiError(response.status, parsed.code, parsed.message, parsed.detail);
    }
    if (response.headers.get("content-type")?.startsWith("text/plain")) {
      return (await response.text()) as T;
    }
    return (await response.json()) as T;
  }

  listModels(): Promise<ModelRecordJson[]> {
    return this.request("GET", "/models");
  }

  getModel(id: string): Promise<ModelRecordJson> {
    return this.request("GET", `/models/${encodeURIComponent(id)}`);
  }

  addModel(record: ModelRecordJson): Promise<{ id: string }> {
    return this.request("POST", "/models", record);
  }

  createSession(): Promise<{ id: string }> {
    return this.request("POST", "/sessions");
  }

  submitCriteria(sessionId: string, queryText: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/criteria`, { query: queryText });
  }

  runQuery(sessionId: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/run-query`);
  }

  submitComparisons(
    sessionId: string,
    comparisons: ComparisonPayload[],
  ): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/comparisons`, comparisons);
  }

  ranking(sessionId: string): Promise<RankingResponse> {
    return this.request("GET", `/sessions/${sessionId}/ranking`);
  }

  choose(sessionId: string, modelId: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${sessionId}/choose`, { model_id: modelId });
  }

  buildNew(sessionId: string, maxMethods?: number): Promise<ModelRecordJson> {
    return this.request(
      "POST",
      `/sessions/${sessionId}/build-new`,
      maxMethods === undefined ? {} : { max_methods: maxMethods },
    );
  }
}
