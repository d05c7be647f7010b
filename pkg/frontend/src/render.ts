/** Canvas drawing for the game board: all persisted markers, nothing about
 * the hidden function. */

import { normalizedToPixel } from "./coords.js";
import { Marker } from "./game.js";

export function drawBoard(canvas: HTMLCanvasElement, markers: Marker[]): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#11151c";
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  for (const m of markers) {
    const { px, py } = normalizedToPixel(m, canvas.width, canvas.height);
    ctx.beginPath();
    ctx.arc(px, py, m.radius, 0, 2 * Math.PI);
    ctx.fillStyle = m.color;
    ctx.fill();
    ctx.strokeStyle = "rgba(255,255,255,0.7)";
    ctx.lineWidth = 1;
    ctx.stroke();
  }
}

export function drawLegend(canvas: HTMLCanvasElement, sample: Array<{ score: number; radius: number; color: string }>): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const step = canvas.width / sample.length;
  sample.forEach((s, i) => {
    ctx.beginPath();
    ctx.arc(step * (i + 0.5), canvas.height / 2, s.radius, 0, 2 * Math.PI);
    ctx.fillStyle = s.color;
    ctx.fill();
    ctx.fillStyle = "#ccc";
    ctx.font = "10px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(String(s.score), step * (i + 0.5), canvas.height - 4);
  });
}
