/** Canvas pixels <-> normalized search coordinates.
 *
 * The search space is the unit square with x2 growing upward (math
 * convention); canvas y grows downward, so the vertical axis flips here and
 * nowhere else. */

export interface Point2 {
  x1: number;
  x2: number;
}

export function pixelToNormalized(px: number, py: number, width: number, height: number): Point2 {
  return {
    x1: clamp01(px / width),
    x2: clamp01(1 - py / height),
  };
}

export function normalizedToPixel(p: Point2, width: number, height: number): { px: number; py: number } {
  return {
    px: p.x1 * width,
    py: (1 - p.x2) * height,
  };
}

export function inUnitSquare(p: Point2): boolean {
  return p.x1 >= 0 && p.x1 <= 1 && p.x2 >= 0 && p.x2 <= 1;
}

function clamp01(v: number): number {
  return Math.max(0, Math.min(1, v));
}
