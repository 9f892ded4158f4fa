// The viewer's mutable state around an immutable document: per-instance
// visibility, the filter chain, the camera, and style toggles. The
// rendered instance set is always document order restricted by visibility
// and filters.

import { OrbitCamera } from "./camera.js";
import { SceneDocument } from "./document.js";
import { instancePasses, type AttFilter } from "./filters.js";
import { buildDisplayList, type DisplayItem, type RenderStyle } from "./render.js";
import type { Vec3 } from "./types.js";

export class LoadedScene {
  readonly doc: SceneDocument;
  readonly visibility: boolean[];
  filters: AttFilter[] = [];
  readonly camera = new OrbitCamera();
  style: RenderStyle;
  showAuxiliaryEdges: boolean;

  constructor(doc: SceneDocument) {
    this.doc = doc;
    this.visibility = doc.instances.map((inst) =>
      inst.type === "geometry" ? inst.visible : true,
    );
    const view = doc.data.header.view;
    this.style = view.style === "wireframe" ? "wireframe" : "surface";
    this.showAuxiliaryEdges = Boolean(view.auxiliary_edges);
    const { centre, radius } = this.extent();
    this.camera.setExtent(centre, radius);
  }

  static fromText(text: string): LoadedScene {
    return new LoadedScene(SceneDocument.parse(text));
  }

  extent(): { centre: Vec3; radius: number } {
    const lo: Vec3 = [Infinity, Infinity, Infinity];
    const hi: Vec3 = [-Infinity, -Infinity, -Infinity];
    const take = (p: readonly number[]) => {
      for (let a = 0; a < 3; a++) {
        if (p[a] < lo[a]) lo[a] = p[a];
        if (p[a] > hi[a]) hi[a] = p[a];
      }
    };
    for (const inst of this.doc.instances) {
      if (inst.type === "geometry") inst.mesh.vertices.forEach(take);
      else if (inst.type === "trajectory") inst.points.forEach(take);
      else take(inst.position);
    }
    if (!Number.isFinite(lo[0])) {
      return { centre: [0, 0, 0], radius: 1 };
    }
    const centre: Vec3 = [
      (lo[0] + hi[0]) / 2,
      (lo[1] + hi[1]) / 2,
      (lo[2] + hi[2]) / 2,
    ];
    const radius =
      Math.hypot(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]) / 2;
    return { centre, radius: Math.max(radius, 1e-9) };
  }

  /** Indexes rendered right now: document instances ∩ visibility ∩ filters. */
  renderedIndexes(): number[] {
    const out: number[] = [];
    this.doc.instances.forEach((inst, i) => {
      if (!this.visibility[i]) return;
      if (!instancePasses(inst, this.filters)) return;
      out.push(i);
    });
    return out;
  }

  displayList(width: number, height: number): DisplayItem[] {
    return buildDisplayList(this.doc.instances, this.renderedIndexes(), this.camera, {
      width,
      height,
      style: this.style,
      showAuxiliaryEdges: this.showAuxiliaryEdges,
    });
  }

  setFilter(filter: AttFilter): void {
    this.filters = [...this.filters, filter];
  }

  clearFilters(): void {
    this.filters = [];
  }

  toggleVisibility(index: number): void {
    this.visibility[index] = !this.visibility[index];
  }
}
