/** Thin HTTP client for the portfolio service. */

import type {
  ErrorBody,
  ModelDocument,
  ScenariosDocument,
  SolveDocument,
  SolveRequestBody,
  SweepDocument,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly field?: string,
  ) {
    super(message);
  }
}

export type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const text = await response.text();
    if (!response.ok) {
      let body: ErrorBody = { code: "unknown", message: text };
      try {
        body = JSON.parse(text) as ErrorBody;
      } catch {
        /* non-JSON error body; keep raw text as the message */
      }
      throw new ApiError(response.status, body.code, body.message, body.field);
    }
    return text;
  }

  async health(): Promise<{ status: string }> {
    return JSON.parse(await this.request("/health"));
  }

  async model(): Promise<ModelDocument> {
    return JSON.parse(await this.request("/model"));
  }

  async scenarios(): Promise<ScenariosDocument> {
    return JSON.parse(await this.request("/scenarios"));
  }

  /** Raw response text is returned alongside the parsed document so the
   * caller can cache byte-identical payloads. */
  async solve(body: SolveRequestBody): Promise<{ raw: string; doc: SolveDocument }> {
    const raw = await this.request("/solve", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return { raw, doc: JSON.parse(raw) as SolveDocument };
  }

  async sweep(budgets: number[], body: Omit<SolveRequestBody, "budget">): Promise<SweepDocument> {
    const raw = await this.request("/sweep", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ budgets, ...body }),
    });
    return JSON.parse(raw) as SweepDocument;
  }
}
