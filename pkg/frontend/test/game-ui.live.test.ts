/** UI contract tests, driven through the DOM against the live service
 * started by global-setup. These cover: target-value visibility by mode,
 * marker persistence, radius monotonicity, scores always coming from the
 * service, and budget exhaustion disabling clicks. */

import { beforeEach, describe, expect, it } from "vitest";

import { GameApi, SessionState } from "../src/api.js";
import { GameController } from "../src/game.js";
import { createApp, App } from "../src/main.js";
import { recordedFrames } from "./canvas-stub.js";

const API_BASE = "http://127.0.0.1:8787";
const BUDGET = 5;

const api = new GameApi(API_BASE);

function $(app: App, id: string): HTMLElement {
  return app.root.querySelector(`#${id}`) as HTMLElement;
}

async function waitFor(cond: () => boolean, what: string, timeoutMs = 10000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (cond()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for ${what}`);
}

function mount(apiBase = API_BASE): App {
  document.body.innerHTML = `<div id="app"></div>`;
  return createApp(document.getElementById("app") as HTMLElement, apiBase);
}

async function startGame(app: App, mode: number, user = "webtest"): Promise<void> {
  ($(app, "user-id") as HTMLInputElement).value = user;
  ($(app, "mode") as HTMLSelectElement).value = String(mode);
  $(app, "start-form").dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
  await waitFor(() => app.controller.getView().phase === "active", "game to start");
}

function clickBoard(app: App, px: number, py: number): void {
  $(app, "board").dispatchEvent(new MouseEvent("click", { clientX: px, clientY: py, bubbles: true }));
}

async function clickAndSettle(app: App, px: number, py: number): Promise<void> {
  const before = app.controller.getView().markers.length;
  clickBoard(app, px, py);
  await waitFor(() => app.controller.getView().markers.length === before + 1, "click to score");
}

function sessionId(app: App): string {
  // round-trip through the service keeps the client honest; the id is in the view-model free controller
  return (app.controller as unknown as { sessionId: string })["sessionId"];
}

describe("starting games", () => {
  let app: App;
  beforeEach(() => {
    app = mount();
  });

  it("mode 1 hides the target value", async () => {
    await startGame(app, 1);
    expect($(app, "target").classList.contains("hidden")).toBe(true);
    expect($(app, "target").textContent).toBe("");
    expect($(app, "game").classList.contains("hidden")).toBe(false);
  });

  it("mode 2 shows the target value from the service", async () => {
    await startGame(app, 2);
    expect($(app, "target").classList.contains("hidden")).toBe(false);
    expect($(app, "target").textContent).toContain("100");
  });

  it("displays the budget from the service descriptor", async () => {
    await startGame(app, 1);
    const state: SessionState = await api.getState(sessionId(app));
    expect(state.budget).toBe(BUDGET);
    expect($(app, "budget").textContent).toBe(`clicks left: ${BUDGET} / ${BUDGET}`);
  });

  it("mode 3 shows the running total from the service", async () => {
    await startGame(app, 3);
    await clickAndSettle(app, 200, 200);
    await clickAndSettle(app, 400, 400);
    const state: SessionState = await api.getState(sessionId(app));
    expect(state.cumulative_score).toBeDefined();
    expect($(app, "cumulative").classList.contains("hidden")).toBe(false);
    expect($(app, "cumulative").textContent).toContain(state.cumulative_score!.toFixed(1));
  });

  it("unreachable service shows a banner and leaves no partial game", async () => {
    const broken = mount("http://127.0.0.1:9");
    ($(broken, "user-id") as HTMLInputElement).value = "nobody";
    $(broken, "start-form").dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await waitFor(() => !$(broken, "banner").classList.contains("hidden"), "error banner");
    expect($(broken, "banner").textContent).toContain("could not start game");
    expect($(broken, "game").classList.contains("hidden")).toBe(true);
    expect(broken.controller.getView().phase).toBe("idle");
  });
});

describe("clicking", () => {
  let app: App;
  beforeEach(async () => {
    app = mount();
    await startGame(app, 1);
  });

  it("markers persist across the whole game and scores come from the service", async () => {
    const spots: Array<[number, number]> = [
      [60, 60],
      [540, 90],
      [300, 300],
      [120, 510],
    ];
    for (const [px, py] of spots) {
      await clickAndSettle(app, px, py);
    }
    const view = app.controller.getView();
    expect(view.markers.length).toBe(4);
    expect(view.markers.map((m) => m.clickIndex)).toEqual([1, 2, 3, 4]);

    // every displayed score equals the service's record of the session
    const state: SessionState = await api.getState(sessionId(app));
    expect(view.markers.map((m) => m.score)).toEqual(state.history.map((h) => h.score));
    const last = state.history[state.history.length - 1];
    expect($(app, "last-score").textContent).toContain(last.score.toFixed(1));

    // all four markers are actually painted in the final frame
    const frames = recordedFrames($(app, "board") as HTMLCanvasElement);
    const lastFrame = frames[frames.length - 1];
    expect(lastFrame.length).toBe(4);

    // marker radius is strictly monotone in score
    const byScore = [...view.markers].sort((a, b) => a.score - b.score);
    for (let i = 1; i < byScore.length; i++) {
      if (byScore[i].score > byScore[i - 1].score) {
        expect(byScore[i].radius).toBeGreaterThan(byScore[i - 1].radius);
      }
    }
    const drawnRadii = new Set(lastFrame.map((a) => a.radius.toFixed(6)));
    for (const m of view.markers) {
      expect(drawnRadii.has(m.radius.toFixed(6))).toBe(true);
    }
  });

  it("ignores clicks outside the canvas without a request", async () => {
    await clickAndSettle(app, 300, 300);
    clickBoard(app, 900, 300); // beyond the 600px board
    await new Promise((r) => setTimeout(r, 300));
    const state: SessionState = await api.getState(sessionId(app));
    expect(state.clicks_used).toBe(1);
    expect(app.controller.getView().markers.length).toBe(1);
  });

  it("budget exhaustion disables clicking with a visible notice", async () => {
    for (let i = 0; i < BUDGET; i++) {
      await clickAndSettle(app, 80 + i * 90, 200);
    }
    expect($(app, "budget").textContent).toBe(`clicks left: 0 / ${BUDGET}`);

    clickBoard(app, 300, 300); // over budget: ignored locally
    await waitFor(() => ($(app, "notice").textContent ?? "").length > 0, "notice");
    expect($(app, "notice").textContent).toContain("no clicks left");
    const state: SessionState = await api.getState(sessionId(app));
    expect(state.clicks_used).toBe(BUDGET);
    expect(app.controller.getView().markers.length).toBe(BUDGET);
  });
});

describe("finishing", () => {
  let app: App;
  beforeEach(async () => {
    app = mount();
    await startGame(app, 1);
  });

  it("finish is disabled until the first click", async () => {
    expect(($(app, "finish") as HTMLButtonElement).disabled).toBe(true);
    await clickAndSettle(app, 150, 450);
    expect(($(app, "finish") as HTMLButtonElement).disabled).toBe(false);
  });

  it("summary mirrors the service response and further clicks are disabled", async () => {
    await clickAndSettle(app, 150, 450);
    await clickAndSettle(app, 450, 150);
    const sid = sessionId(app);
    $(app, "finish").dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await waitFor(() => app.controller.getView().phase === "finished", "finish");

    const state: SessionState = await api.getState(sid);
    const summary = state.summary!;
    expect($(app, "fn-name").textContent).toBe(summary.function_name);
    expect($(app, "best-score").textContent).toBe(summary.best_score.toFixed(1));
    expect($(app, "simple-regret").textContent).toBe(summary.simple_regret.toFixed(2));
    expect($(app, "cumulative-regret").textContent).toBe(summary.cumulative_regret.toFixed(2));

    clickBoard(app, 300, 300);
    await new Promise((r) => setTimeout(r, 300));
    expect((await api.getState(sid)).clicks_used).toBe(2);
  });

  it("marker order and positions round-trip against session state after reload", async () => {
    await clickAndSettle(app, 90, 90);
    await clickAndSettle(app, 510, 330);
    const sid = sessionId(app);
    const fresh = new GameController(new GameApi(API_BASE));
    await fresh.resume(sid);
    const before = app.controller.getView().markers;
    const after = fresh.getView().markers;
    expect(after).toEqual(before);
  });
});
