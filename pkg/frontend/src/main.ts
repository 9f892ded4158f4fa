// Application wiring: file loading (drag-drop and picker), canvas
// interaction (drag = orbit, shift-drag = pan, wheel = zoom), style and
// filter controls, pick-to-attributes.

import { SceneLoadError } from "./document.js";
import type { AttFilter, FilterOp } from "./filters.js";
import { drawDisplayList } from "./painter.js";
import { renderAttPanel, renderInstanceTree } from "./panel.js";
import { pickAt } from "./pick.js";
import type { DisplayItem } from "./render.js";
import { LoadedScene } from "./state.js";

export interface App {
  scene: LoadedScene | null;
  picked: number | null;
  lastDisplayList: DisplayItem[];
  loadText(text: string): void;
  redraw(): void;
  pick(x: number, y: number): number | null;
  applyFilter(filter: AttFilter): void;
  clearFilters(): void;
  setStyle(style: "wireframe" | "surface"): void;
  exportDebug(): string | null;
}

function el<T extends HTMLElement>(root: Document, id: string): T {
  const node = root.getElementById(id);
  if (!node) throw new Error(`missing #${id} in the page`);
  return node as T;
}

export function initApp(root: Document): App {
  const canvas = el<HTMLCanvasElement>(root, "view");
  const banner = el<HTMLElement>(root, "banner");
  const attPanel = el<HTMLElement>(root, "attributes");
  const treePanel = el<HTMLElement>(root, "tree");
  const styleButton = el<HTMLButtonElement>(root, "style-toggle");
  const filterForm = el<HTMLFormElement>(root, "filter-form");
  const filterKey = el<HTMLInputElement>(root, "filter-key");
  const filterOp = el<HTMLSelectElement>(root, "filter-op");
  const filterValue = el<HTMLInputElement>(root, "filter-value");
  const clearButton = el<HTMLButtonElement>(root, "filter-clear");
  const fileInput = el<HTMLInputElement>(root, "file-input");
  const dropZone = el<HTMLElement>(root, "drop-zone");

  const ctx = canvas.getContext("2d");

  const app: App = {
    scene: null,
    picked: null,
    lastDisplayList: [],

    loadText(text: string) {
      try {
        app.scene = LoadedScene.fromText(text);
        banner.textContent = "";
        banner.classList.remove("error");
        app.picked = null;
      } catch (err) {
        app.scene = null;
        app.picked = null;
        banner.textContent =
          err instanceof SceneLoadError ? err.message : `load failed: ${err}`;
        banner.classList.add("error");
      }
      app.redraw();
    },

    redraw() {
      const width = canvas.width;
      const height = canvas.height;
      if (app.scene === null) {
        app.lastDisplayList = [];
        if (ctx) {
          ctx.clearRect(0, 0, width, height);
        }
      } else {
        app.lastDisplayList = app.scene.displayList(width, height);
        if (ctx) {
          drawDisplayList(ctx, app.lastDisplayList, width, height);
        }
      }
      renderAttPanel(attPanel, app.scene?.doc ?? null, app.picked);
      renderInstanceTree(
        treePanel,
        app.scene?.doc ?? null,
        app.scene?.renderedIndexes() ?? [],
        (index) => {
          app.scene?.toggleVisibility(index);
          app.redraw();
        },
      );
      styleButton.textContent = `style: ${app.scene?.style ?? "surface"}`;
    },

    pick(x: number, y: number) {
      app.picked = pickAt(app.lastDisplayList, x, y);
      renderAttPanel(attPanel, app.scene?.doc ?? null, app.picked);
      return app.picked;
    },

    applyFilter(filter: AttFilter) {
      app.scene?.setFilter(filter);
      if (app.picked !== null &&
          app.scene !== null &&
          !app.scene.renderedIndexes().includes(app.picked)) {
        app.picked = null;
      }
      app.redraw();
    },

    clearFilters() {
      app.scene?.clearFilters();
      app.redraw();
    },

    setStyle(style) {
      if (app.scene) {
        app.scene.style = style;
        app.redraw();
      }
    },

    exportDebug() {
      return app.scene?.doc.exportText() ?? null;
    },
  };

  // --- interaction -----------------------------------------------------

  let dragging = false;
  let panning = false;
  let moved = false;
  let lastX = 0;
  let lastY = 0;

  canvas.addEventListener("mousedown", (event) => {
    dragging = true;
    moved = false;
    panning = event.shiftKey;
    lastX = event.offsetX;
    lastY = event.offsetY;
  });
  canvas.addEventListener("mousemove", (event) => {
    if (!dragging || app.scene === null) return;
    const dx = event.offsetX - lastX;
    const dy = event.offsetY - lastY;
    if (Math.abs(dx) + Math.abs(dy) > 1) moved = true;
    lastX = event.offsetX;
    lastY = event.offsetY;
    if (panning) {
      app.scene.camera.pan(dx, dy, canvas.width, canvas.height);
    } else {
      app.scene.camera.orbit(dy * 0.01, -dx * 0.01);
    }
    app.redraw();
  });
  canvas.addEventListener("mouseup", (event) => {
    if (dragging && !moved) {
      app.pick(event.offsetX, event.offsetY);
    }
    dragging = false;
  });
  canvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    app.scene?.camera.zoomBy(event.deltaY < 0 ? 1.1 : 1 / 1.1);
    app.redraw();
  });

  styleButton.addEventListener("click", () => {
    app.setStyle(app.scene?.style === "surface" ? "wireframe" : "surface");
  });

  filterForm.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!filterKey.value) return;
    app.applyFilter({
      key: filterKey.value,
      op: filterOp.value as FilterOp,
      value: filterValue.value,
    });
  });
  clearButton.addEventListener("click", () => app.clearFilters());

  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (file) {
      void file.text().then((text) => app.loadText(text));
    }
  });
  dropZone.addEventListener("dragover", (event) => event.preventDefault());
  dropZone.addEventListener("drop", (event) => {
    event.preventDefault();
    const file = event.dataTransfer?.files?.[0];
    if (file) {
      void file.text().then((text) => app.loadText(text));
    }
  });

  app.redraw();
  return app;
}
