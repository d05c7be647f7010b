import { describe, expect, it } from "vitest";

import { inUnitSquare, normalizedToPixel, pixelToNormalized } from "../src/coords.js";

describe("canvas coordinate mapping", () => {
  it("flips the vertical axis (screen-down to math-up)", () => {
    const topLeft = pixelToNormalized(0, 0, 600, 600);
    expect(topLeft).toEqual({ x1: 0, x2: 1 });
    const bottomLeft = pixelToNormalized(0, 600, 600, 600);
    expect(bottomLeft).toEqual({ x1: 0, x2: 0 });
  });

  it("round-trips within float precision", () => {
    for (const [px, py] of [[0, 0], [300, 150], [599.5, 0.25], [600, 600]] as const) {
      const p = pixelToNormalized(px, py, 600, 600);
      const back = normalizedToPixel(p, 600, 600);
      expect(back.px).toBeCloseTo(px, 9);
      expect(back.py).toBeCloseTo(py, 9);
    }
  });

  it("clamps pixels just outside the board", () => {
    const p = pixelToNormalized(-3, 610, 600, 600);
    expect(inUnitSquare(p)).toBe(true);
    expect(p.x1).toBe(0);
    expect(p.x2).toBe(0);
  });
});
