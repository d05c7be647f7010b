/** DOM wiring for the search game. Exported as a factory so the automated
 * tests can mount the same app against a live service inside jsdom. */

import { GameApi } from "./api.js";
import { pixelToNormalized } from "./coords.js";
import { GameController, GameView } from "./game.js";
import { markerColor, markerRadius } from "./markers.js";
import { drawBoard, drawLegend } from "./render.js";

const MODE_TEXT: Record<number, string> = {
  1: "Mode 1: find the maximum. Its value is not shown.",
  2: "Mode 2: find the maximum. It is worth exactly the target value shown.",
  3: "Mode 3: maximize the total of all your clicks.",
};

export interface App {
  controller: GameController;
  root: HTMLElement;
}

export function createApp(root: HTMLElement, apiBase: string): App {
  root.innerHTML = `
    <h1>Black-box search</h1>
    <form id="start-form">
      <input id="user-id" placeholder="player name" value="player" />
      <select id="mode">
        <option value="1">mode 1: max (value unknown)</option>
        <option value="2">mode 2: max (value known)</option>
        <option value="3">mode 3: total score</option>
      </select>
      <button id="start" type="submit">start game</button>
    </form>
    <div id="banner" class="hidden"></div>
    <div id="game" class="hidden">
      <p id="mode-text"></p>
      <p>
        <span id="budget"></span>
        <span id="target" class="hidden"></span>
        <span id="cumulative" class="hidden"></span>
        <span id="last-score"></span>
      </p>
      <canvas id="board" width="600" height="600"></canvas>
      <canvas id="legend" width="600" height="40"></canvas>
      <p><button id="finish" disabled>finish</button> <span id="notice"></span></p>
    </div>
    <div id="summary" class="hidden"></div>
  `;

  const el = <T extends HTMLElement>(id: string) => root.querySelector(`#${id}`) as T;
  const board = el<HTMLCanvasElement>("board");
  const controller = new GameController(new GameApi(apiBase));

  function render(view: GameView): void {
    el("banner").classList.toggle("hidden", !view.notice || view.phase !== "idle");
    if (view.notice && view.phase === "idle") el("banner").textContent = view.notice;
    el("game").classList.toggle("hidden", view.phase === "idle");

    el("mode-text").textContent = MODE_TEXT[view.mode] ?? "";
    el("budget").textContent = `clicks left: ${view.clicksRemaining} / ${view.budget}`;

    const target = el("target");
    target.classList.toggle("hidden", view.targetValue === undefined);
    target.textContent = view.targetValue !== undefined ? ` target value: ${view.targetValue}` : "";

    const cumulative = el("cumulative");
    cumulative.classList.toggle("hidden", view.cumulativeScore === undefined);
    cumulative.textContent =
      view.cumulativeScore !== undefined ? ` total so far: ${view.cumulativeScore.toFixed(1)}` : "";

    el("last-score").textContent =
      view.lastScore !== undefined ? ` last score: ${view.lastScore.toFixed(1)}` : "";
    el("notice").textContent = view.notice ?? "";

    (el("finish") as HTMLButtonElement).disabled = !controller.canFinish();
    drawBoard(board, view.markers);

    const summary = el("summary");
    if (view.summary) {
      summary.classList.remove("hidden");
      summary.innerHTML = `
        <h2>game over</h2>
        <p>the hidden function was <b id="fn-name">${view.summary.function_name}</b></p>
        <p>best score <span id="best-score">${view.summary.best_score.toFixed(1)}</span>,
           simple regret <span id="simple-regret">${view.summary.simple_regret.toFixed(2)}</span>,
           cumulative regret <span id="cumulative-regret">${view.summary.cumulative_regret.toFixed(2)}</span></p>
      `;
    } else {
      summary.classList.add("hidden");
      summary.innerHTML = "";
    }
  }

  controller.onChange(render);

  el("start-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    const userId = (el<HTMLInputElement>("user-id").value || "player").trim();
    const mode = parseInt(el<HTMLSelectElement>("mode").value, 10);
    controller.start(userId, mode).catch(() => {
      /* notice already shown via the banner */
    });
  });

  board.addEventListener("click", (ev: MouseEvent) => {
    const rect = board.getBoundingClientRect();
    const scaleX = rect.width > 0 ? board.width / rect.width : 1;
    const scaleY = rect.height > 0 ? board.height / rect.height : 1;
    const px = (ev.clientX - rect.left) * scaleX;
    const py = (ev.clientY - rect.top) * scaleY;
    if (px < 0 || py < 0 || px > board.width || py > board.height) return; // outside: no request
    const p = pixelToNormalized(px, py, board.width, board.height);
    controller.click(p.x1, p.x2).catch(() => {
      /* notice shown via view */
    });
  });

  el("finish").addEventListener("click", () => {
    controller.finish().catch(() => {
      /* notice shown via view */
    });
  });

  drawLegend(
    el<HTMLCanvasElement>("legend"),
    [0, 25, 50, 75, 100].map((score) => ({ score, radius: markerRadius(score), color: markerColor(score) })),
  );

  return { controller, root };
}

declare global {
  interface Window {
    SEARCHLAB_API?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  createApp(document.getElementById("app") as HTMLElement, window.SEARCHLAB_API ?? "http://127.0.0.1:8000");
}
