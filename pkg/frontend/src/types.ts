// Shapes of the multivis-scene/1 document (see docs/scene-format.md).

export interface AttDef {
  description: string;
  kind: string; // text | int | double | 3-vector
  dimensioned: boolean;
}

export interface TypeEntry {
  parent: string | null;
  attdefs: Record<string, AttDef>;
}

export type EdgeKind = "real" | "auxiliary";

export interface MeshData {
  vertices: number[][];
  faces: number[][];
  edges: [number, number, EdgeKind][];
}

export interface ViewHeader {
  viewpoint: number[];
  up: number[];
  light_direction: number[];
  zoom: number;
  style: string;
  auxiliary_edges: boolean;
  segments_per_circle: number;
  projection: string;
}

export interface GeometryInstance {
  type: "geometry";
  name: string;
  colour: number[];
  visible: boolean;
  forced_style: string;
  mesh: MeshData;
  attvalues: Record<string, string>;
}

export interface TrajectoryInstance {
  type: "trajectory";
  name: string;
  colour: number[];
  draw_line: boolean;
  draw_points: boolean;
  point_size: number;
  points: number[][];
  attvalues: Record<string, string>;
}

export interface HitInstance {
  type: "hit";
  name: string;
  colour: number[];
  size: number;
  position: number[];
  attvalues: Record<string, string>;
}

export type Instance = GeometryInstance | TrajectoryInstance | HitInstance;

export interface SceneDocumentData {
  schema: string;
  header: { generator: string; timestamp: string; view: ViewHeader };
  types: Record<string, TypeEntry>;
  instances: Instance[];
}

export type Vec3 = [number, number, number];
