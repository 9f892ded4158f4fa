// Orbit camera: spherical viewpoint around a target, screen-plane panning,
// multiplicative zoom. Orthographic projection to pixel coordinates.

import type { Vec3 } from "./types.js";

function norm(v: Vec3): number {
  return Math.hypot(v[0], v[1], v[2]);
}

function scale(v: Vec3, s: number): Vec3 {
  return [v[0] * s, v[1] * s, v[2] * s];
}

function cross(a: Vec3, b: Vec3): Vec3 {
  return [
    a[1] * b[2] - a[2] * b[1],
    a[2] * b[0] - a[0] * b[2],
    a[0] * b[1] - a[1] * b[0],
  ];
}

export interface CameraBasis {
  x: Vec3;
  y: Vec3;
  w: Vec3; // towards the viewer
}

export class OrbitCamera {
  theta = Math.PI / 3; // polar angle of the viewpoint
  phi = Math.PI / 6;
  zoom = 1.0;
  target: Vec3 = [0, 0, 0];
  radius = 1.0; // scene extent radius, set on load

  setExtent(centre: Vec3, radius: number): void {
    this.target = [...centre] as Vec3;
    this.radius = Math.max(radius, 1e-9);
  }

  basis(): CameraBasis {
    const st = Math.sin(this.theta);
    const w: Vec3 = [
      st * Math.cos(this.phi),
      st * Math.sin(this.phi),
      Math.cos(this.theta),
    ];
    let up: Vec3 = [0, 1, 0];
    if (Math.abs(w[0] * up[0] + w[1] * up[1] + w[2] * up[2]) > 1 - 1e-9) {
      up = [0, 0, 1];
    }
    let x = cross(up, w);
    x = scale(x, 1 / norm(x));
    const y = cross(w, x);
    return { x, y, w };
  }

  orbit(dTheta: number, dPhi: number): void {
    this.theta = Math.min(Math.PI - 1e-3, Math.max(1e-3, this.theta + dTheta));
    this.phi += dPhi;
  }

  /** Pan by screen pixels; the target slides in the camera plane. */
  pan(dxPx: number, dyPx: number, width: number, height: number): void {
    const { x, y } = this.basis();
    const halfH = this.radius / this.zoom;
    const halfW = (halfH * width) / height;
    const sx = (-dxPx / width) * 2 * halfW;
    const sy = (dyPx / height) * 2 * halfH;
    this.target = [
      this.target[0] + x[0] * sx + y[0] * sy,
      this.target[1] + x[1] * sx + y[1] * sy,
      this.target[2] + x[2] * sx + y[2] * sy,
    ];
  }

  zoomBy(factor: number): void {
    this.zoom = Math.min(1e4, Math.max(1e-4, this.zoom * factor));
  }

  /**
   * Project world points to [xPx, yPx, depth] triples. Pixel y points down
   * (canvas convention); depth grows towards the viewer.
   */
  project(points: readonly number[][], width: number, height: number): Float64Array {
    const { x, y, w } = this.basis();
    const halfH = this.radius / this.zoom;
    const halfW = (halfH * width) / height;
    const out = new Float64Array(points.length * 3);
    const [tx, ty, tz] = this.target;
    for (let i = 0; i < points.length; i++) {
      const px = points[i][0] - tx;
      const py = points[i][1] - ty;
      const pz = points[i][2] - tz;
      const u = px * x[0] + py * x[1] + pz * x[2];
      const v = px * y[0] + py * y[1] + pz * y[2];
      const d = px * w[0] + py * w[1] + pz * w[2];
      out[i * 3] = (0.5 + u / (2 * halfW)) * width;
      out[i * 3 + 1] = (0.5 - v / (2 * halfH)) * height;
      out[i * 3 + 2] = d;
    }
    return out;
  }
}
