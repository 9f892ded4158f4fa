// From a loaded scene to a painter-ordered display list of 2D items.
// Pure data in, pure data out: the canvas painter and the pick logic both
// walk the same list, so whatever can be clicked is exactly what was drawn.

import type { OrbitCamera } from "./camera.js";
import type { GeometryInstance, Instance, Vec3 } from "./types.js";

export type RenderStyle = "wireframe" | "surface";

export interface DisplayItem {
  kind: "face" | "edge" | "polyline" | "marker";
  instance: number; // index into the document's instance list
  pts: number[]; // flat [x0, y0, x1, y1, ...] pixels
  depth: number;
  colour: string;
  alpha: number;
  size: number; // marker size or line width
}

export function cssColour(colour: number[]): string {
  const r = Math.round(colour[0] * 255);
  const g = Math.round(colour[1] * 255);
  const b = Math.round(colour[2] * 255);
  return `rgb(${r},${g},${b})`;
}

function newellNormal(world: readonly number[][], face: number[]): Vec3 {
  let nx = 0, ny = 0, nz = 0;
  for (let i = 0; i < face.length; i++) {
    const p = world[face[i]];
    const q = world[face[(i + 1) % face.length]];
    nx += (p[1] - q[1]) * (p[2] + q[2]);
    ny += (p[2] - q[2]) * (p[0] + q[0]);
    nz += (p[0] - q[0]) * (p[1] + q[1]);
  }
  return [nx, ny, nz];
}

export interface RenderOptions {
  width: number;
  height: number;
  style: RenderStyle;
  showAuxiliaryEdges: boolean;
}

/** Indices of instances that are visible under flags and filters. */
export function buildDisplayList(
  instances: readonly Instance[],
  renderedIndexes: readonly number[],
  camera: OrbitCamera,
  options: RenderOptions,
): DisplayItem[] {
  const { width, height } = options;
  const depthItems: DisplayItem[] = [];
  const { w } = camera.basis();

  for (const index of renderedIndexes) {
    const inst = instances[index];
    if (inst.type === "geometry") {
      renderGeometry(inst, index, camera, options, depthItems, w);
    } else if (inst.type === "trajectory") {
      const proj = camera.project(inst.points, width, height);
      if (inst.points.length >= 2 && inst.draw_line) {
        const pts: number[] = [];
        let depth = 0;
        for (let i = 0; i < inst.points.length; i++) {
          pts.push(proj[i * 3], proj[i * 3 + 1]);
          depth += proj[i * 3 + 2];
        }
        depthItems.push({
          kind: "polyline",
          instance: index,
          pts,
          depth: depth / inst.points.length,
          colour: cssColour(inst.colour),
          alpha: inst.colour[3] ?? 1,
          size: 1.5,
        });
      }
      if (inst.draw_points) {
        for (let i = 0; i < inst.points.length; i++) {
          depthItems.push({
            kind: "marker",
            instance: index,
            pts: [proj[i * 3], proj[i * 3 + 1]],
            depth: proj[i * 3 + 2],
            colour: cssColour(inst.colour),
            alpha: inst.colour[3] ?? 1,
            size: inst.point_size,
          });
        }
      }
    } else {
      const proj = camera.project([inst.position], width, height);
      depthItems.push({
        kind: "marker",
        instance: index,
        pts: [proj[0], proj[1]],
        depth: proj[2],
        colour: cssColour(inst.colour),
        alpha: inst.colour[3] ?? 1,
        size: inst.size,
      });
    }
  }
  // painter order: far first, stable for ties
  return depthItems
    .map((item, i) => [item, i] as const)
    .sort((a, b) => a[0].depth - b[0].depth || a[1] - b[1])
    .map(([item]) => item);
}

function renderGeometry(
  inst: GeometryInstance,
  index: number,
  camera: OrbitCamera,
  options: RenderOptions,
  out: DisplayItem[],
  towardsViewer: Vec3,
): void {
  const { width, height, showAuxiliaryEdges } = options;
  const style: RenderStyle =
    inst.forced_style === "wireframe" || inst.forced_style === "surface"
      ? (inst.forced_style as RenderStyle)
      : options.style;
  const mesh = inst.mesh;
  const proj = camera.project(mesh.vertices, width, height);

  if (style === "surface") {
    for (const face of mesh.faces) {
      let depth = 0;
      for (const idx of face) depth += proj[idx * 3 + 2];
      depth /= face.length;
      // flat headlight shade from the world-space normal
      const [nx, ny, nz] = newellNormal(mesh.vertices, face);
      const n = Math.hypot(nx, ny, nz);
      let shade = 1.0;
      if (n > 0) {
        const cosine =
          (nx * towardsViewer[0] + ny * towardsViewer[1] + nz * towardsViewer[2]) / n;
        shade = Math.max(0.25, Math.abs(cosine));
      }
      const pts: number[] = [];
      for (const idx of face) pts.push(proj[idx * 3], proj[idx * 3 + 1]);
      out.push({
        kind: "face",
        instance: index,
        pts,
        depth,
        colour: cssColour([
          inst.colour[0] * shade,
          inst.colour[1] * shade,
          inst.colour[2] * shade,
        ]),
        alpha: inst.colour[3] ?? 1,
        size: 0,
      });
    }
  } else {
    for (const [a, b, kind] of mesh.edges) {
      if (kind === "auxiliary" && !showAuxiliaryEdges) continue;
      out.push({
        kind: "edge",
        instance: index,
        pts: [proj[a * 3], proj[a * 3 + 1], proj[b * 3], proj[b * 3 + 1]],
        depth: (proj[a * 3 + 2] + proj[b * 3 + 2]) / 2,
        colour: cssColour(inst.colour),
        alpha: inst.colour[3] ?? 1,
        size: 1,
      });
    }
  }
}
