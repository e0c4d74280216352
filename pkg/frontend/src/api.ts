import type {
  AnalysisDoc,
  ErrorDoc,
  SessionHandleDoc,
  SummaryDoc,
  TrialRecordDoc,
} from "./types";

export class ServiceError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: unknown[] = []
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client for the session service; fetch is injectable so
 * tests can run against recorded fixtures. */
export class ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init)
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let doc: Partial<ErrorDoc> = {};
      try {
        doc = (await response.json()) as ErrorDoc;
      } catch {
        // non-JSON error body; fall through with bare status
      }
      throw new ServiceError(
        response.status,
        doc.code ?? "error",
        doc.message ?? `request failed with status ${response.status}`,
        doc.details ?? []
      );
    }
    return (await response.json()) as T;
  }

  uploadScenario(document: unknown): Promise<{ scenario_id: string }> {
    return this.request("POST", "/scenarios", document);
  }

  getAnalysis(scenarioId: string): Promise<AnalysisDoc> {
    return this.request("GET", `/scenarios/${scenarioId}/analysis`);
  }

  createSession(
    scenarioId: string,
    options: {
      trial_limit: number;
      seed?: number;
      merged_monitoring?: boolean;
      blind?: boolean;
    }
  ): Promise<SessionHandleDoc> {
    return this.request("POST", `/scenarios/${scenarioId}/sessions`, options);
  }

  postTrial(sessionId: string, strategy: number[]): Promise<TrialRecordDoc> {
    return this.request("POST", `/sessions/${sessionId}/trials`, { strategy });
  }

  getSummary(sessionId: string): Promise<SummaryDoc> {
    return this.request("GET", `/sessions/${sessionId}/summary`);
  }
}
