import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { describe, expect, it } from "vitest";

import { pickAt } from "../src/pick.js";
import { LoadedScene } from "../src/state.js";

const fixtureText = readFileSync(
  resolve(process.cwd(), "tests/fixtures/b1-events.scene.json"),
  "utf-8",
);

function load(): LoadedScene {
  return LoadedScene.fromText(fixtureText);
}

describe("display list and picking", () => {
  it("renders items for all four geometry instances", () => {
    const scene = load();
    const items = scene.displayList(800, 600);
    const geometryIndexes = new Set(
      scene.doc.instances
        .map((inst, i) => (inst.type === "geometry" ? i : -1))
        .filter((i) => i >= 0),
    );
    const drawn = new Set(
      items.filter((it) => geometryIndexes.has(it.instance)).map((it) => it.instance),
    );
    expect(drawn.size).toBe(4);
  });

  it("sorts faces far to near", () => {
    const scene = load();
    const depths = scene.displayList(800, 600).map((i) => i.depth);
    const sorted = [...depths].sort((a, b) => a - b);
    expect(depths).toEqual(sorted);
  });

  it("wireframe style produces edges, surface produces faces", () => {
    const scene = load();
    scene.style = "surface";
    expect(scene.displayList(400, 300).some((i) => i.kind === "face")).toBe(true);
    scene.style = "wireframe";
    const wf = scene.displayList(400, 300);
    expect(wf.some((i) => i.kind === "edge")).toBe(true);
    expect(wf.some((i) => i.kind === "face")).toBe(false);
  });

  it("picking the nearest face wins; background picks nothing", () => {
    const scene = load();
    const items = scene.displayList(800, 600);
    // the topmost face at its own centroid must pick its own instance
    const top = items[items.length - 1];
    const xs = top.pts.filter((_, i) => i % 2 === 0);
    const ys = top.pts.filter((_, i) => i % 2 === 1);
    const cx = xs.reduce((a, b) => a + b) / xs.length;
    const cy = ys.reduce((a, b) => a + b) / ys.length;
    if (top.kind === "face") {
      expect(pickAt(items, cx, cy)).toBe(top.instance);
    }
    expect(pickAt(items, -50, -50)).toBeNull();
  });

  it("camera interactions change the projection but not the document", () => {
    const scene = load();
    const before = scene.displayList(400, 300);
    const snapshot = scene.doc.exportText();
    scene.camera.orbit(0.3, -0.4);
    scene.camera.pan(15, -10, 400, 300);
    scene.camera.zoomBy(1.4);
    const after = scene.displayList(400, 300);
    expect(after).not.toEqual(before);
    expect(scene.doc.exportText()).toBe(snapshot);
  });

  it("PN filter keeps only gamma trajectories and picking ignores hidden", () => {
    const scene = load();
    const trajectoryIndexes = scene.doc.instances
      .map((inst, i) => (inst.type === "trajectory" ? i : -1))
      .filter((i) => i >= 0);
    const gammas = trajectoryIndexes.filter(
      (i) => scene.doc.instances[i].attvalues.PN === "gamma",
    );
    expect(gammas.length).toBeGreaterThan(0);
    scene.setFilter({ key: "PN", op: "==", value: "gamma" });
    const rendered = new Set(scene.renderedIndexes());
    for (const i of trajectoryIndexes) {
      expect(rendered.has(i)).toBe(scene.doc.instances[i].attvalues.PN === "gamma");
    }
    // geometry is unaffected: it has no PN key
    expect([...rendered].filter(
      (i) => scene.doc.instances[i].type === "geometry",
    )).toHaveLength(4);
    // nothing pickable belongs to a hidden instance
    const items = scene.displayList(800, 600);
    for (const item of items) {
      expect(rendered.has(item.instance)).toBe(true);
    }
    scene.clearFilters();
    expect(scene.renderedIndexes().length).toBe(scene.doc.instances.length);
  });

  it("numeric filters compare the leading number of a dimensioned value", () => {
    const scene = load();
    scene.setFilter({ key: "IKE", op: ">", value: "800" });
    const rendered = new Set(scene.renderedIndexes());
    for (const [i, inst] of scene.doc.instances.entries()) {
      if (inst.type !== "trajectory") continue;
      const ike = parseFloat(inst.attvalues.IKE);
      const unit = inst.attvalues.IKE.endsWith("GeV") ? 1000 : 1;
      expect(rendered.has(i)).toBe(ike * unit > 800);
    }
  });
});
