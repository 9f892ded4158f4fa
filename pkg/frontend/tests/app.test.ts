// DOM-level test of the assembled viewer: load the reference export, check
// the rendered instances, pick a volume through a synthetic click, and hide
// trajectories with a PN filter.

import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { beforeEach, describe, expect, it, vi } from "vitest";

import { initApp, type App } from "../src/main.js";

const fixtureText = readFileSync(
  resolve(process.cwd(), "tests/fixtures/b1-events.scene.json"),
  "utf-8",
);

const indexHtml = readFileSync(resolve(process.cwd(), "index.html"), "utf-8");

function pageBody(): string {
  const body = indexHtml.slice(
    indexHtml.indexOf("<body>") + 6,
    indexHtml.indexOf("</body>"),
  );
  return body.replace(/<script[\s\S]*?<\/script>/, "");
}

function stubContext(): CanvasRenderingContext2D {
  const calls: string[] = [];
  const stub = {
    calls,
    fillStyle: "",
    strokeStyle: "",
    lineWidth: 1,
    globalAlpha: 1,
  } as unknown as Record<string, unknown>;
  for (const name of [
    "clearRect", "fillRect", "beginPath", "moveTo", "lineTo",
    "closePath", "fill", "stroke",
  ]) {
    stub[name] = (...args: unknown[]) => {
      calls.push(name);
      void args;
    };
  }
  return stub as unknown as CanvasRenderingContext2D;
}

function mouse(target: EventTarget, type: string, x: number, y: number,
               extra: MouseEventInit = {}): void {
  const event = new MouseEvent(type, { bubbles: true, ...extra });
  Object.defineProperty(event, "offsetX", { value: x });
  Object.defineProperty(event, "offsetY", { value: y });
  target.dispatchEvent(event);
}

function click(app: App, canvas: HTMLCanvasElement, x: number, y: number): void {
  mouse(canvas, "mousedown", x, y);
  mouse(canvas, "mouseup", x, y);
  void app;
}

describe("the assembled browser app", () => {
  let app: App;
  let canvas: HTMLCanvasElement;
  let ctx: CanvasRenderingContext2D;

  beforeEach(() => {
    document.body.innerHTML = pageBody();
    ctx = stubContext();
    vi.spyOn(HTMLCanvasElement.prototype, "getContext").mockReturnValue(
      ctx as never,
    );
    app = initApp(document);
    canvas = document.getElementById("view") as HTMLCanvasElement;
  });

  it("loads the reference export and renders the four volumes", () => {
    app.loadText(fixtureText);
    expect(document.getElementById("banner")!.textContent).toBe("");
    const geometryDrawn = new Set(
      app.lastDisplayList
        .filter((i) => app.scene!.doc.instances[i.instance].type === "geometry")
        .map((i) => i.instance),
    );
    expect(geometryDrawn.size).toBe(4);
    // the tree panel lists them with checkboxes
    const checkboxes = document.querySelectorAll("#tree input[type=checkbox]");
    expect(checkboxes).toHaveLength(4);
    expect(document.getElementById("tree")!.textContent).toContain("4 volumes");
    expect((ctx as unknown as { calls: string[] }).calls).toContain("fill");
  });

  it("shows a readable error banner for a wrong schema and renders nothing", () => {
    app.loadText(fixtureText.replace("multivis-scene/1", "multivis-scene/9"));
    const banner = document.getElementById("banner")!;
    expect(banner.classList.contains("error")).toBe(true);
    expect(banner.textContent).toContain("multivis-scene/9");
    expect(app.lastDisplayList).toHaveLength(0);
  });

  it("pick on a volume shows its attribute table verbatim from the document", () => {
    app.loadText(fixtureText);
    // hide World and Envelope through the tree checkboxes, as a user would
    const boxes = document.querySelectorAll<HTMLInputElement>(
      "#tree input[type=checkbox]",
    );
    boxes[0].dispatchEvent(new Event("change"));
    document
      .querySelectorAll<HTMLInputElement>("#tree input[type=checkbox]")[1]
      .dispatchEvent(new Event("change"));

    const shape2 = app.scene!.doc.instances.findIndex(
      (inst) => inst.name === "/World:0/Envelope:0/Shape2:0",
    );
    // click the centroid of the topmost Shape2 face
    const items = app.lastDisplayList;
    let target: { x: number; y: number } | null = null;
    for (let i = items.length - 1; i >= 0 && !target; i--) {
      const item = items[i];
      if (item.instance !== shape2 || item.kind !== "face") continue;
      const xs = item.pts.filter((_, k) => k % 2 === 0);
      const ys = item.pts.filter((_, k) => k % 2 === 1);
      const cx = xs.reduce((a, b) => a + b) / xs.length;
      const cy = ys.reduce((a, b) => a + b) / ys.length;
      const picked = app.pick(cx, cy);
      if (picked === shape2) target = { x: cx, y: cy };
    }
    expect(target).not.toBeNull();
    click(app, canvas, target!.x, target!.y);
    expect(app.picked).toBe(shape2);
    const rows = document.querySelectorAll("#attributes tr");
    const table: Record<string, string> = {};
    rows.forEach((row) => {
      const cells = row.querySelectorAll("td");
      table[cells[0].textContent!] = cells[1].textContent!;
    });
    const docValues = app.scene!.doc.instances[shape2].attvalues;
    expect(table.Material).toBe("G4_BONE_COMPACT_ICRU");
    expect(table.Density).toBe("1.85 g/cm3");
    expect(table).toEqual(docValues);

    // click the background: the panel clears
    click(app, canvas, 2, 2);
    expect(app.picked).toBeNull();
    expect(document.getElementById("attributes")!.textContent).toContain(
      "Nothing picked",
    );
  });

  it("pick on a trajectory shows PN, Ch and IKE rows", () => {
    app.loadText(fixtureText);
    const instances = app.scene!.doc.instances;
    const items = app.lastDisplayList;
    let picked: number | null = null;
    for (let i = items.length - 1; i >= 0; i--) {
      const item = items[i];
      if (instances[item.instance].type !== "trajectory") continue;
      if (item.kind !== "polyline") continue;
      const got = app.pick((item.pts[0] + item.pts[2]) / 2,
                           (item.pts[1] + item.pts[3]) / 2);
      if (got !== null && instances[got].type === "trajectory") {
        picked = got;
        break;
      }
    }
    expect(picked).not.toBeNull();
    const text = document.getElementById("attributes")!.textContent!;
    for (const key of ["PN", "Ch", "IKE"]) {
      expect(text).toContain(key);
    }
  });

  it("a PN filter hides non-matching trajectories and clear restores them", () => {
    app.loadText(fixtureText);
    const all = app.scene!.renderedIndexes().length;
    (document.getElementById("filter-key") as HTMLInputElement).value = "PN";
    (document.getElementById("filter-op") as HTMLSelectElement).value = "==";
    (document.getElementById("filter-value") as HTMLInputElement).value = "gamma";
    document.getElementById("filter-form")!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    const instances = app.scene!.doc.instances;
    const rendered = new Set(app.scene!.renderedIndexes());
    instances.forEach((inst, i) => {
      if (inst.type === "trajectory") {
        expect(rendered.has(i)).toBe(inst.attvalues.PN === "gamma");
      }
    });
    for (const item of app.lastDisplayList) {
      const inst = instances[item.instance];
      if (inst.type === "trajectory") {
        expect(inst.attvalues.PN).toBe("gamma");
      }
    }
    document.getElementById("filter-clear")!.dispatchEvent(new Event("click"));
    expect(app.scene!.renderedIndexes().length).toBe(all);
  });

  it("orbit and zoom change the drawing but never the document", () => {
    app.loadText(fixtureText);
    const before = JSON.stringify(app.lastDisplayList.slice(0, 20));
    const snapshot = app.exportDebug();
    mouse(canvas, "mousedown", 100, 100);
    mouse(canvas, "mousemove", 160, 130);
    mouse(canvas, "mouseup", 160, 130);
    canvas.dispatchEvent(new WheelEvent("wheel", { deltaY: -120, cancelable: true }));
    const after = JSON.stringify(app.lastDisplayList.slice(0, 20));
    expect(after).not.toBe(before);
    expect(app.exportDebug()).toBe(snapshot);
    expect(app.exportDebug()).toBe(fixtureText);
  });

  it("style toggle switches between faces and edges", () => {
    app.loadText(fixtureText);
    expect(app.lastDisplayList.some((i) => i.kind === "face")).toBe(true);
    document.getElementById("style-toggle")!.dispatchEvent(new Event("click"));
    expect(app.lastDisplayList.some((i) => i.kind === "face")).toBe(false);
    expect(app.lastDisplayList.some((i) => i.kind === "edge")).toBe(true);
  });
});
