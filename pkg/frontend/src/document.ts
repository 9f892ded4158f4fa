// Loading and validation of scene documents. The parsed data is frozen:
// nothing in the viewer ever mutates it, and the debug export returns the
// original bytes.

import type { AttDef, Instance, SceneDocumentData, TypeEntry } from "./types.js";

export const SUPPORTED_SCHEMA = "multivis-scene/1";

export class SceneLoadError extends Error {}

function deepFreeze<T>(value: T): T {
  if (value && typeof value === "object" && !Object.isFrozen(value)) {
    Object.freeze(value);
    for (const key of Object.keys(value as object)) {
      deepFreeze((value as Record<string, unknown>)[key]);
    }
  }
  return value;
}

export class SceneDocument {
  readonly data: SceneDocumentData;
  readonly sourceText: string;

  private constructor(data: SceneDocumentData, sourceText: string) {
    this.data = data;
    this.sourceText = sourceText;
  }

  static parse(text: string): SceneDocument {
    let raw: unknown;
    try {
      raw = JSON.parse(text);
    } catch (err) {
      throw new SceneLoadError(`not a scene document: ${(err as Error).message}`);
    }
    const data = raw as SceneDocumentData;
    if (data.schema !== SUPPORTED_SCHEMA) {
      throw new SceneLoadError(
        `unsupported scene schema "${data.schema ?? "(missing)"}"` +
          ` (this viewer reads ${SUPPORTED_SCHEMA})`,
      );
    }
    if (!Array.isArray(data.instances) || typeof data.types !== "object") {
      throw new SceneLoadError("scene document is missing types or instances");
    }
    const doc = new SceneDocument(deepFreeze(data), text);
    for (const inst of data.instances) {
      const defs = doc.attdefsFor(inst.type);
      for (const key of Object.keys(inst.attvalues ?? {})) {
        if (!(key in defs)) {
          throw new SceneLoadError(
            `instance "${inst.name}": attvalue key "${key}" has no AttDef`,
          );
        }
      }
    }
    return doc;
  }

  get instances(): readonly Instance[] {
    return this.data.instances;
  }

  instancesOf(type: string): Instance[] {
    return this.data.instances.filter((i) => i.type === type);
  }

  /** AttDefs of a type merged with its ancestors'. */
  attdefsFor(typeName: string): Record<string, AttDef> {
    const merged: Record<string, AttDef> = {};
    let name: string | null = typeName;
    while (name !== null) {
      const entry: TypeEntry | undefined = this.data.types[name];
      if (entry === undefined) {
        throw new SceneLoadError(`unknown instance type "${name}"`);
      }
      Object.assign(merged, entry.attdefs);
      name = entry.parent;
    }
    return merged;
  }

  /** Debug export: byte-identical to what was loaded. */
  exportText(): string {
    return this.sourceText;
  }
}
