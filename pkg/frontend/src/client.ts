/**
 * Thin typed HTTP client for the session service. Validates every response
 * against the wire schemas; domain failures become ApiError with the
 * server's stable error code.
 */
import {
  Command,
  CommandResult,
  CommandResultSchema,
  ErrorBodySchema,
  EventsPage,
  EventsPageSchema,
  Policy,
  SessionView,
  SessionViewSchema,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export interface ClientOptions {
  /** Injectable for tests; defaults to the global fetch. */
  fetchImpl?: FetchLike;
  bearerToken?: string;
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;
  private readonly headers: Record<string, string>;

  constructor(
    readonly baseUrl: string,
    options: ClientOptions = {},
  ) {
    this.fetchImpl = options.fetchImpl ?? (fetch as unknown as FetchLike);
    this.headers = { "content-type": "application/json" };
    if (options.bearerToken) {
      this.headers["authorization"] = `Bearer ${options.bearerToken}`;
    }
  }

  private async request(path: string, init?: { method?: string; body?: unknown }): Promise<unknown> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: init?.method ?? "GET",
      headers: this.headers,
      body: init?.body === undefined ? undefined : JSON.stringify(init.body),
    });
    const payload = await response.json();
    if (response.status >= 400) {
      const parsed = ErrorBodySchema.safeParse(payload);
      if (parsed.success) {
        throw new ApiError(parsed.data.error.code, response.status, parsed.data.error.message);
      }
      throw new ApiError("HTTP_ERROR", response.status, `unexpected ${response.status} response`);
    }
    return payload;
  }

  async health(): Promise<boolean> {
    try {
      const body = (await this.request("/healthz")) as { status?: string };
      return body.status === "ok";
    } catch {
      return false;
    }
  }

  async createSession(text: string, policy?: Partial<Policy>): Promise<SessionView> {
    const body = (await this.request("/sessions", {
      method: "POST",
      body: policy ? { text, policy } : { text },
    })) as { session_id: string; view: unknown };
    return SessionViewSchema.parse(body.view);
  }

  async getView(sessionId: string): Promise<SessionView> {
    return SessionViewSchema.parse(await this.request(`/sessions/${sessionId}`));
  }

  async command(sessionId: string, command: Command): Promise<CommandResult> {
    const body = await this.request(`/sessions/${sessionId}/commands`, {
      method: "POST",
      body: command,
    });
    return CommandResultSchema.parse(body);
  }

  async events(sessionId: string, since: number): Promise<EventsPage> {
    return EventsPageSchema.parse(
      await this.request(`/sessions/${sessionId}/events?since=${since}`),
    );
  }

  async telemetry(sessionId: string): Promise<Record<string, unknown>> {
    return (await this.request(`/sessions/${sessionId}/telemetry`)) as Record<string, unknown>;
  }
}
