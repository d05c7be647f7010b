/** Typed client for the game session HTTP API. All scores come from here;
 * the browser never evaluates anything locally. */

export interface ClickRecord {
  click_index: number;
  x1: number;
  x2: number;
  score: number;
}

export interface SessionState {
  session_id: string;
  user_id: string;
  mode: number;
  budget: number;
  clicks_used: number;
  clicks_remaining: number;
  state: "active" | "finished" | "expired";
  history: ClickRecord[];
  target_value?: number;
  cumulative_score?: number;
  summary?: GameSummary;
}

export interface ClickResult {
  score: number;
  clicks_remaining: number;
  history: ClickRecord[];
  cumulative_score?: number;
}

export interface GameSummary {
  user_id: string;
  game_end_timestamp: number;
  mode: number;
  n_clicks: number;
  best_score: number;
  simple_regret: number;
  cumulative_regret: number;
  function_id: number;
  function_name: string;
}

export class ApiError extends Error {
  constructor(
    public kind: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError("unreachable", `service unreachable: ${err}`, 0);
  }
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const e = (body as { error?: { kind?: string; message?: string } }).error ?? {};
    throw new ApiError(e.kind ?? "unknown", e.message ?? response.statusText, response.status);
  }
  return body as T;
}

export class GameApi {
  constructor(private baseUrl: string) {}

  createSession(userId: string, mode: number): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ user_id: userId, mode }),
    });
  }

  click(sessionId: string, x1: number, x2: number): Promise<ClickResult> {
    return request(`${this.baseUrl}/sessions/${sessionId}/clicks`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ x1, x2 }),
    });
  }

  getState(sessionId: string): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions/${sessionId}`);
  }

  finish(sessionId: string): Promise<GameSummary> {
    return request(`${this.baseUrl}/sessions/${sessionId}/finish`, { method: "POST" });
  }
}
