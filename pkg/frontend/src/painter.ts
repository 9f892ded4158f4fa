// Canvas 2D backend for the display list.

import type { DisplayItem } from "./render.js";

export function drawDisplayList(
  ctx: CanvasRenderingContext2D,
  items: readonly DisplayItem[],
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, width, height);
  for (const item of items) {
    ctx.globalAlpha = item.alpha;
    if (item.kind === "face") {
      ctx.fillStyle = item.colour;
      ctx.strokeStyle = item.colour;
      ctx.lineWidth = 0.5;
      ctx.beginPath();
      ctx.moveTo(item.pts[0], item.pts[1]);
      for (let i = 2; i < item.pts.length; i += 2) {
        ctx.lineTo(item.pts[i], item.pts[i + 1]);
      }
      ctx.closePath();
      ctx.fill();
      ctx.stroke();
    } else if (item.kind === "edge" || item.kind === "polyline") {
      ctx.strokeStyle = item.colour;
      ctx.lineWidth = item.kind === "edge" ? item.size : Math.max(1, item.size);
      ctx.beginPath();
      ctx.moveTo(item.pts[0], item.pts[1]);
      for (let i = 2; i < item.pts.length; i += 2) {
        ctx.lineTo(item.pts[i], item.pts[i + 1]);
      }
      ctx.stroke();
    } else {
      const r = Math.max(1.5, item.size / 2);
      ctx.fillStyle = item.colour;
      ctx.fillRect(item.pts[0] - r, item.pts[1] - r, 2 * r, 2 * r);
    }
  }
  ctx.globalAlpha = 1;
}
