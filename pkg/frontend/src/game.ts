/** Game controller: session lifecycle, the marker display model, and the
 * guard rails (budget, finished state). Everything displayed about scores
 * originates from service responses; this module adds no scoring of its
 * own. */

import { ClickRecord, GameApi, GameSummary, SessionState } from "./api.js";
import { markerColor, markerRadius } from "./markers.js";

export interface Marker {
  clickIndex: number;
  x1: number;
  x2: number;
  score: number;
  radius: number;
  color: string;
}

export type Phase = "idle" | "active" | "finished";

export interface GameView {
  phase: Phase;
  mode: number;
  budget: number;
  clicksRemaining: number;
  targetValue?: number; // mode 2 only
  cumulativeScore?: number; // mode 3 only
  markers: Marker[];
  lastScore?: number;
  summary?: GameSummary;
  notice?: string; // transient messages (budget exhausted, errors)
}

function toMarker(c: ClickRecord): Marker {
  return {
    clickIndex: c.click_index,
    x1: c.x1,
    x2: c.x2,
    score: c.score,
    radius: markerRadius(c.score),
    color: markerColor(c.score),
  };
}

export class GameController {
  private sessionId = "";
  private view: GameView = { phase: "idle", mode: 0, budget: 0, clicksRemaining: 0, markers: [] };
  private listeners: Array<(v: GameView) => void> = [];

  constructor(private api: GameApi) {}

  onChange(fn: (v: GameView) => void): void {
    this.listeners.push(fn);
  }

  getView(): GameView {
    return { ...this.view, markers: [...this.view.markers] };
  }

  private update(patch: Partial<GameView>): void {
    this.view = { ...this.view, ...patch };
    for (const fn of this.listeners) fn(this.getView());
  }

  private applySession(s: SessionState): void {
    this.sessionId = s.session_id;
    this.update({
      phase: s.state === "active" ? "active" : "finished",
      mode: s.mode,
      budget: s.budget,
      clicksRemaining: s.clicks_remaining,
      targetValue: s.target_value,
      cumulativeScore: s.cumulative_score,
      markers: s.history.map(toMarker),
      summary: s.summary,
      notice: undefined,
    });
  }

  /** Start a fresh game; on service failure no partial game remains. */
  async start(userId: string, mode: number): Promise<void> {
    try {
      this.applySession(await this.api.createSession(userId, mode));
    } catch (err) {
      this.sessionId = "";
      this.update({ phase: "idle", markers: [], notice: `could not start game: ${err}` });
      throw err;
    }
  }

  /** Rehydrate an existing session (page reload). */
  async resume(sessionId: string): Promise<void> {
    const s = await this.api.getState(sessionId);
    this.applySession(s);
  }

  /** Score one click at normalized coordinates. Out-of-budget clicks are
   * ignored locally with a notice; no request is sent. */
  async click(x1: number, x2: number): Promise<number | undefined> {
    if (this.view.phase !== "active") {
      this.update({ notice: "game is not active" });
      return undefined;
    }
    if (this.view.clicksRemaining <= 0) {
      this.update({ notice: "no clicks left; finish the game" });
      return undefined;
    }
    const result = await this.api.click(this.sessionId, x1, x2);
    this.update({
      clicksRemaining: result.clicks_remaining,
      cumulativeScore: result.cumulative_score,
      markers: result.history.map(toMarker),
      lastScore: result.score,
      notice: undefined,
    });
    return result.score;
  }

  canFinish(): boolean {
    return this.view.phase === "active" && this.view.markers.length > 0;
  }

  async finish(): Promise<GameSummary | undefined> {
    if (!this.canFinish()) {
      this.update({ notice: "click at least once before finishing" });
      return undefined;
    }
    const summary = await this.api.finish(this.sessionId);
    this.update({ phase: "finished", summary, notice: undefined });
    return summary;
  }
}
