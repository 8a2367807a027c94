// Shapes of the planning service's JSON payloads.

export interface SurfaceInfo {
  id: number;
  bounds: [number, number, number, number]; // xmin, ymin, xmax, ymax (m)
  height: [number, number, number];         // z = a*x + b*y + c
}

export interface ObstacleInfo {
  letter: number;
  surface: number;
  representative: [number, number];
  cells: [number, number][];
}

export interface OccupancyLayer {
  surface: number;
  cells: [number, number][];
}

export interface BeamPieceInfo {
  surface: number;
  x: number;
  y_lo: number;
  y_hi: number;
}

export interface BeamInfo {
  letter: number;
  surface: number;
  anchor: [number, number];
  pieces: BeamPieceInfo[];
}

export interface GateInfo {
  letter: number;
  lower: number;
  upper: number;
  cells: [number, number][];
}

export interface WorldPayload {
  format_version: number;
  resolution_m: number;
  inflation_radius_m: number;
  surfaces: SurfaceInfo[];
  obstacle_count: number;
  obstacles: ObstacleInfo[];
  occupancy: OccupancyLayer[];
  beams: BeamInfo[];
  gates: GateInfo[];
}

export interface RefPathDoc {
  id: string;
  polyline: [number, number, number][];
  word: string;
  h_word: string;
}

export interface FootPoseDoc {
  x: number;
  y: number;
  z: number;
  theta: number;
  surface: number;
}

export interface FootStateDoc {
  left: FootPoseDoc;
  right: FootPoseDoc;
  moving: "left" | "right";
  sig: string;
}

export interface PlanRecord {
  format_version: number;
  plan_id?: string;
  query_id: string;
  status: "success" | "cap_exceeded" | "exhausted";
  cost_mm: number | null;
  path: FootStateDoc[];
  queues: string[];
  expansions: Record<string, number>;
  heuristic_evals: Record<string, number>;
  settled_states: number;
  expansion_cap: number;
}

export interface PlanRequest {
  id?: string;
  start: {
    left: { x: number; y: number; theta: number; surface: number };
    right: { x: number; y: number; theta: number; surface: number };
  };
  goal: { center: { x: number; y: number; surface: number }; radius_m: number };
  w1?: number;
  w2?: number;
  expansion_cap?: number;
  use_reference_paths?: string[] | "all";
  params?: Record<string, unknown>;
}
