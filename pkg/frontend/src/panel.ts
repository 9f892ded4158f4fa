// DOM rendering for the attribute panel and the instance tree.

import type { SceneDocument } from "./document.js";

export function renderAttPanel(
  container: HTMLElement,
  doc: SceneDocument | null,
  instanceIndex: number | null,
): void {
  container.textContent = "";
  if (doc === null || instanceIndex === null) {
    const empty = container.ownerDocument.createElement("p");
    empty.className = "empty";
    empty.textContent = "Nothing picked.";
    container.appendChild(empty);
    return;
  }
  const inst = doc.instances[instanceIndex];
  const defs = doc.attdefsFor(inst.type);
  const heading = container.ownerDocument.createElement("h3");
  heading.textContent = inst.name;
  container.appendChild(heading);
  const table = container.ownerDocument.createElement("table");
  table.className = "attvalues";
  for (const key of Object.keys(inst.attvalues).sort()) {
    const row = container.ownerDocument.createElement("tr");
    row.dataset.key = key;
    const keyCell = container.ownerDocument.createElement("td");
    keyCell.textContent = key;
    keyCell.title = defs[key]?.description ?? "";
    const valueCell = container.ownerDocument.createElement("td");
    valueCell.textContent = inst.attvalues[key];
    row.appendChild(keyCell);
    row.appendChild(valueCell);
    table.appendChild(row);
  }
  container.appendChild(table);
}

export function renderInstanceTree(
  container: HTMLElement,
  doc: SceneDocument | null,
  renderedIndexes: readonly number[],
  onToggle: (index: number) => void,
): void {
  container.textContent = "";
  if (doc === null) return;
  const rendered = new Set(renderedIndexes);
  const list = container.ownerDocument.createElement("ul");
  list.className = "instances";
  doc.instances.forEach((inst, index) => {
    if (inst.type !== "geometry") return;
    const item = container.ownerDocument.createElement("li");
    const checkbox = container.ownerDocument.createElement("input");
    checkbox.type = "checkbox";
    checkbox.checked = rendered.has(index);
    checkbox.addEventListener("change", () => onToggle(index));
    const label = container.ownerDocument.createElement("span");
    label.textContent = inst.name;
    item.appendChild(checkbox);
    item.appendChild(label);
    list.appendChild(item);
  });
  const counts = container.ownerDocument.createElement("p");
  counts.className = "counts";
  const nGeometry = doc.instancesOf("geometry").length;
  const nTrajectories = doc.instancesOf("trajectory").length;
  const nHits = doc.instancesOf("hit").length;
  counts.textContent =
    `${nGeometry} volumes, ${nTrajectories} trajectories, ${nHits} hits`;
  container.appendChild(counts);
  container.appendChild(list);
}
