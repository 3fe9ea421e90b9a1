/** Typed client for the cop-ahp HTTP service. All numbers shown in the UI
 * come from these responses; the client never computes indices itself. */

export interface MatrixDocument {
  n: number;
  upper: Array<[number, number, number | string]>;
  labels?: string[];
}

export interface MatrixCreated {
  id: string;
  n: number;
  on_scale: boolean;
}

export interface Analysis {
  n: number;
  on_scale: boolean;
  cr: number;
  gci: number;
  gci_threshold: number;
  transitive: boolean;
  cycle: number[] | null;
  index_exchangeable: boolean;
  /** 1-based quadruples [i, j, k, l]: pair (i,j) vs pair (k,l). */
  witnesses: Array<[number, number, number, number]>;
  actual_ranking: number[] | null;
  labels?: string[];
}

export interface Prioritization {
  method: string;
  w: number[];
  nv: number;
  deviation?: number;
  optimal?: boolean;
}

export interface RevisionChange {
  i: number;
  j: number;
  old: number;
  new: number;
}

export interface RevisionOutcome {
  status: 'Optimal' | 'Incumbent' | 'Infeasible';
  npr: number;
  aoc: number;
  j: number;
  changes: RevisionChange[];
  w: number[];
  revised_upper: Array<[number, number, number]>;
}

export interface IncumbentEvent {
  incumbent_j: number;
  gap: number | null;
  elapsed: number;
}

export interface ReviseResponse {
  result: RevisionOutcome;
  events: IncumbentEvent[];
}

export interface SessionCreated {
  id: string;
  n: number;
}

export interface PinsResponse {
  pins: Array<[number, number, number]>;
}

export interface HistoryEntry {
  kind: string;
  payload: unknown;
}

export interface History {
  id: string;
  history: HistoryEntry[];
}

export interface ErrorBody {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

/** Error raised for any non-2xx service response. */
export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly details: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = 'ServiceError';
  }
}

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      const raw = (await response.json().catch(() => ({}))) as Partial<ErrorBody>;
      throw new ServiceError(
        response.status,
        raw.code ?? 'Unknown',
        raw.message ?? `request failed with status ${response.status}`,
        raw.details ?? {},
      );
    }
    return (await response.json()) as T;
  }

  uploadMatrix(doc: MatrixDocument): Promise<MatrixCreated> {
    return this.request('POST', '/matrices', doc);
  }

  getAnalysis(matrixId: string): Promise<Analysis> {
    return this.request('GET', `/matrices/${matrixId}/analysis`);
  }

  prioritize(
    matrixId: string,
    options: { method?: string; mnv?: boolean; time_limit?: number } = {},
  ): Promise<Prioritization> {
    return this.request('POST', `/matrices/${matrixId}/prioritize`, options);
  }

  createSession(matrix: MatrixDocument): Promise<SessionCreated> {
    return this.request('POST', '/sessions', { matrix });
  }

  setPins(
    sessionId: string,
    pins: Array<[number, number, number | string]>,
  ): Promise<PinsResponse> {
    return this.request('POST', `/sessions/${sessionId}/pins`, { pins });
  }

  revise(
    sessionId: string,
    options: { gci_bar?: number; alpha?: number; time_limit?: number } = {},
  ): Promise<ReviseResponse> {
    return this.request('POST', `/sessions/${sessionId}/revise`, options);
  }

  getHistory(sessionId: string): Promise<History> {
    return this.request('GET', `/sessions/${sessionId}/history`);
  }
}
