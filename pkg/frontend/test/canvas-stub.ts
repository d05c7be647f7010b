/** jsdom ships no 2D canvas; record drawing calls instead so tests can
 * assert what would be painted. */

export interface RecordedArc {
  x: number;
  y: number;
  radius: number;
  fillStyle: string;
}

interface Recording {
  frames: RecordedArc[][]; // one frame per clearRect
}

const recordings = new WeakMap<HTMLCanvasElement, Recording>();

export function recordedFrames(canvas: HTMLCanvasElement): RecordedArc[][] {
  return recordings.get(canvas)?.frames ?? [];
}

function makeContext(canvas: HTMLCanvasElement) {
  const rec: Recording = { frames: [] };
  recordings.set(canvas, rec);
  let current: RecordedArc[] = [];
  let pendingArc: RecordedArc | null = null;
  const ctx = {
    canvas,
    fillStyle: "" as string,
    strokeStyle: "" as string,
    lineWidth: 1,
    font: "",
    textAlign: "left",
    clearRect() {
      current = [];
      rec.frames.push(current);
    },
    fillRect() {},
    beginPath() {
      pendingArc = null;
    },
    arc(x: number, y: number, radius: number) {
      pendingArc = { x, y, radius, fillStyle: "" };
    },
    fill() {
      if (pendingArc) {
        pendingArc.fillStyle = String(ctx.fillStyle);
        current.push(pendingArc);
        pendingArc = null;
      }
    },
    stroke() {},
    fillText() {},
  };
  return ctx;
}

const contexts = new WeakMap<HTMLCanvasElement, ReturnType<typeof makeContext>>();

(HTMLCanvasElement.prototype as unknown as { getContext: unknown }).getContext = function (
  this: HTMLCanvasElement,
) {
  let ctx = contexts.get(this);
  if (!ctx) {
    ctx = makeContext(this);
    contexts.set(this, ctx);
  }
  return ctx;
};
