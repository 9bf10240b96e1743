// Typed client for the scaffolding service. All server interaction goes
// through here; the fetch function is injectable so tests run offline.

import type {
  AuditRecord,
  SentenceResponse,
  SessionInfo,
  ViewSettings,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiRequestError> {
  let code = "error";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep defaults
  }
  return new ApiRequestError(response.status, code, message);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  createSession(
    text: string,
    language?: string,
    settings?: ViewSettings,
  ): Promise<SessionInfo> {
    return this.request<SessionInfo>("/api/v1/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, language: language ?? null, settings }),
    });
  }

  getSession(sessionId: string): Promise<SessionInfo> {
    return this.request<SessionInfo>(`/api/v1/sessions/${sessionId}`);
  }

  getSentence(
    sessionId: string,
    index: number,
    advance = false,
  ): Promise<SentenceResponse> {
    const suffix = advance ? "?advance=true" : "";
    return this.request<SentenceResponse>(
      `/api/v1/sessions/${sessionId}/sentences/${index}${suffix}`,
    );
  }

  /** Raw response body of a sentence view, for byte-level comparisons. */
  async getSentenceRaw(sessionId: string, index: number): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/v1/sessions/${sessionId}/sentences/${index}`,
    );
    if (!response.ok) throw await parseError(response);
    return response.text();
  }

  patchSettings(
    sessionId: string,
    patch: Partial<ViewSettings>,
  ): Promise<ViewSettings> {
    return this.request<ViewSettings>(`/api/v1/sessions/${sessionId}/settings`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(patch),
    });
  }

  submitAudits(records: AuditRecord[]): Promise<{ accepted: number }> {
    return this.request<{ accepted: number }>("/api/v1/audits", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(records),
    });
  }

  imageUrl(pictogramId: number): string {
    return `${this.baseUrl}/api/v1/pictograms/${pictogramId}/image`;
  }
}
