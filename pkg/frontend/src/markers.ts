/** Visual encoding of scored clicks: radius and color are both strictly
 * monotone in the score so the feedback reads at a glance. */

export const MIN_RADIUS = 4;
export const MAX_RADIUS = 14;

/** Linear radius map: 0 -> 4 display units, 100 -> 14. */
export function markerRadius(score: number): number {
  const s = Math.max(0, Math.min(100, score));
  return MIN_RADIUS + (MAX_RADIUS - MIN_RADIUS) * (s / 100);
}

/** Cold-to-hot interpolation: hue 240 (blue) down to 0 (red). */
export function markerColor(score: number): string {
  const s = Math.max(0, Math.min(100, score));
  const hue = 240 * (1 - s / 100);
  return `hsl(${hue.toFixed(1)}, 85%, 50%)`;
}

/** Hue back out of a marker color, for tests and the legend. */
export function colorHue(color: string): number {
  const m = /^hsl\(([\d.]+),/.exec(color);
  if (!m) throw new Error(`not a marker color: ${color}`);
  return parseFloat(m[1]);
}
