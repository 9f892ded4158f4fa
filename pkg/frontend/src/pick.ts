// Picking against the display list: nearest-first hit test so the user
// picks exactly what paints on top. Attributes come verbatim from the
// document; nothing is recomputed here.

import type { DisplayItem } from "./render.js";

function pointInPolygon(x: number, y: number, pts: number[]): boolean {
  let inside = false;
  const n = pts.length / 2;
  for (let i = 0, j = n - 1; i < n; j = i++) {
    const xi = pts[i * 2], yi = pts[i * 2 + 1];
    const xj = pts[j * 2], yj = pts[j * 2 + 1];
    if (yi > y !== yj > y && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

function nearSegment(
  x: number, y: number,
  x0: number, y0: number, x1: number, y1: number,
  tolerance: number,
): boolean {
  const dx = x1 - x0;
  const dy = y1 - y0;
  const lengthSq = dx * dx + dy * dy;
  let t = 0;
  if (lengthSq > 0) {
    t = Math.min(1, Math.max(0, ((x - x0) * dx + (y - y0) * dy) / lengthSq));
  }
  const px = x0 + t * dx;
  const py = y0 + t * dy;
  return Math.hypot(x - px, y - py) <= tolerance;
}

function hits(item: DisplayItem, x: number, y: number): boolean {
  switch (item.kind) {
    case "face":
      return pointInPolygon(x, y, item.pts);
    case "edge":
      return nearSegment(x, y, item.pts[0], item.pts[1], item.pts[2], item.pts[3], 3);
    case "polyline": {
      const tolerance = Math.max(3, item.size);
      for (let i = 0; i + 3 < item.pts.length; i += 2) {
        if (nearSegment(x, y, item.pts[i], item.pts[i + 1],
                        item.pts[i + 2], item.pts[i + 3], tolerance)) {
          return true;
        }
      }
      return false;
    }
    case "marker": {
      const r = Math.max(3, item.size / 2 + 1);
      return Math.abs(x - item.pts[0]) <= r && Math.abs(y - item.pts[1]) <= r;
    }
  }
}

/**
 * Instance index under a screen point, or null for background. `items`
 * must be in painter order (far to near); the scan runs near to far.
 */
export function pickAt(items: readonly DisplayItem[], x: number, y: number): number | null {
  for (let i = items.length - 1; i >= 0; i--) {
    if (hits(items[i], x, y)) return items[i].instance;
  }
  return null;
}
