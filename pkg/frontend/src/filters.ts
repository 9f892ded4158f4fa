// Attribute filters: the client-side analog of drawing-time trajectory
// filtering. A filter only constrains instances that carry its key, so a
// PN filter hides non-matching trajectories without touching geometry.

import type { Instance } from "./types.js";

export type FilterOp = "==" | "!=" | "contains" | "<" | ">";

export interface AttFilter {
  key: string;
  op: FilterOp;
  value: string;
}

// Dimensioned values compare in the exporter's internal units (mm, MeV, g),
// so "1.2 GeV" and a plain "800" (MeV) order correctly.
const UNIT_FACTORS: Record<string, number> = {
  eV: 1e-6, keV: 1e-3, MeV: 1, GeV: 1e3, TeV: 1e6,
  nm: 1e-6, um: 1e-3, mm: 1, cm: 10, m: 1000, km: 1e6,
  ug: 1e-6, mg: 1e-3, g: 1, kg: 1e3,
  mm3: 1, cm3: 1e3, m3: 1e9,
};

function leadingNumber(text: string): number | null {
  const m = /^\s*([-+0-9.eE]+)(?:\s+([A-Za-z0-9/+]+))?/.exec(text);
  if (!m) return null;
  const v = Number(m[1]);
  if (!Number.isFinite(v)) return null;
  const factor = m[2] !== undefined ? UNIT_FACTORS[m[2]] : undefined;
  return factor !== undefined ? v * factor : v;
}

export function matches(filter: AttFilter, attvalue: string): boolean {
  switch (filter.op) {
    case "==":
      return attvalue === filter.value;
    case "!=":
      return attvalue !== filter.value;
    case "contains":
      return attvalue.includes(filter.value);
    case "<":
    case ">": {
      const a = leadingNumber(attvalue);
      const b = leadingNumber(filter.value);
      if (a === null || b === null) return false;
      return filter.op === "<" ? a < b : a > b;
    }
  }
}

export function instancePasses(inst: Instance, filters: readonly AttFilter[]): boolean {
  for (const f of filters) {
    const value = inst.attvalues?.[f.key];
    if (value === undefined) continue; // key absent: unconstrained
    if (!matches(f, value)) return false;
  }
  return true;
}
