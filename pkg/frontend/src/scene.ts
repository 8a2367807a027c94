// Scene model: everything rendered derives from service payloads.
//
// Rendering is split in two: this module turns payloads into flat lists of
// draw operations per surface layer, and painter.ts executes them on a
// canvas.  Keeping the ops inspectable lets the contract tests check that
// each footstep and heatmap cell really reaches the screen.

import { HeatmapTable, heatColor, heatmapValueAt } from "./csv";
import { cellOf } from "./grid";
import { PlanRecord, RefPathDoc, WorldPayload } from "./types";

export type DrawOp =
  | { kind: "cell"; gx: number; gy: number; color: string; alpha?: number }
  | { kind: "line"; x0: number; y0: number; x1: number; y1: number;
      color: string; width: number; dash?: boolean }
  | { kind: "polyline"; points: [number, number][]; color: string; width: number }
  | { kind: "marker"; x: number; y: number; color: string; radius: number;
      shape: "circle" | "triangle"; theta?: number }
  | { kind: "label"; x: number; y: number; text: string; color: string };

export type LayerOps = Map<number, DrawOp[]>;

const OBSTACLE_COLOR = "#4a4a4a";
const BEAM_COLOR = "#2c7fb8";
const GATE_COLOR = "#e66101";
const START_COLOR = "#d7191c";
const GOAL_COLOR = "#1a9641";
const LEFT_FOOT_COLOR = "#d7191c";
const RIGHT_FOOT_COLOR = "#1a9641";
const REFPATH_COLORS = ["#7b3294", "#008837", "#c51b7d", "#4d9221"];

function layerMap(world: WorldPayload): LayerOps {
  const layers: LayerOps = new Map();
  for (const s of world.surfaces) layers.set(s.id, []);
  return layers;
}

export function worldLayers(world: WorldPayload): LayerOps {
  const layers = layerMap(world);
  for (const layer of world.occupancy) {
    const ops = layers.get(layer.surface);
    if (!ops) continue;
    for (const [gx, gy] of layer.cells) {
      ops.push({ kind: "cell", gx, gy, color: OBSTACLE_COLOR });
    }
  }
  for (const beam of world.beams) {
    for (const piece of beam.pieces) {
      const ops = layers.get(piece.surface);
      if (!ops) continue;
      ops.push({ kind: "line", x0: piece.x, y0: piece.y_lo, x1: piece.x,
                 y1: piece.y_hi, color: BEAM_COLOR, width: 1, dash: true });
    }
    const home = layers.get(beam.surface);
    if (home) {
      home.push({ kind: "label", x: beam.anchor[0], y: beam.anchor[1],
                  text: `t${beam.letter}`, color: BEAM_COLOR });
    }
  }
  for (const gate of world.gates) {
    for (const surface of [gate.lower, gate.upper]) {
      const ops = layers.get(surface);
      if (!ops) continue;
      for (const [gx, gy] of gate.cells) {
        ops.push({ kind: "cell", gx, gy, color: GATE_COLOR, alpha: 0.5 });
      }
      // Gate badge: the letter plus where the layer switch leads.
      const [gx, gy] = gate.cells[0] ?? [0, 0];
      const r = world.resolution_m;
      const other = surface === gate.lower ? gate.upper : gate.lower;
      ops.push({ kind: "label", x: (gx + 0.5) * r, y: (gy + 0.5) * r,
                 text: `g${gate.letter}→${other}`, color: GATE_COLOR });
    }
  }
  return layers;
}

export function heatmapLayers(world: WorldPayload, table: HeatmapTable): LayerOps {
  const layers = layerMap(world);
  for (const [k, value] of table.values) {
    const [surface, gx, gy] = k.split(":").map(Number);
    const ops = layers.get(surface);
    if (!ops) continue;
    ops.push({ kind: "cell", gx, gy, color: heatColor(value, table.vmax),
               alpha: 0.65 });
  }
  return layers;
}

export function refPathLayers(world: WorldPayload, paths: RefPathDoc[]): LayerOps {
  const layers = layerMap(world);
  paths.forEach((path, i) => {
    const color = REFPATH_COLORS[i % REFPATH_COLORS.length];
    let run: [number, number][] = [];
    let surface: number | null = null;
    const flush = () => {
      if (surface !== null && run.length > 1) {
        layers.get(surface)?.push({ kind: "polyline", points: run, color, width: 2 });
      }
    };
    for (const [x, y, sid] of path.polyline) {
      if (surface !== null && sid !== surface) {
        flush();
        run = [];
      }
      surface = sid;
      run.push([x, y]);
    }
    flush();
  });
  return layers;
}

export function markerLayers(world: WorldPayload,
                             start: { x: number; y: number; surface: number } | null,
                             goal: { x: number; y: number; surface: number } | null): LayerOps {
  const layers = layerMap(world);
  if (start) {
    layers.get(start.surface)?.push({ kind: "marker", x: start.x, y: start.y,
                                      color: START_COLOR, radius: 6, shape: "circle" });
  }
  if (goal) {
    layers.get(goal.surface)?.push({ kind: "marker", x: goal.x, y: goal.y,
                                     color: GOAL_COLOR, radius: 6, shape: "circle" });
  }
  return layers;
}

/** One oriented triangle per foot per footstep; every step in the record
 * is rendered on its foot's surface layer. */
export function planLayers(world: WorldPayload, record: PlanRecord): LayerOps {
  const layers = layerMap(world);
  for (const state of record.path) {
    for (const foot of ["left", "right"] as const) {
      const pose = state[foot];
      const ops = layers.get(pose.surface);
      if (!ops) continue;
      ops.push({
        kind: "marker", x: pose.x, y: pose.y,
        color: foot === "left" ? LEFT_FOOT_COLOR : RIGHT_FOOT_COLOR,
        radius: 3, shape: "triangle", theta: (pose.theta * Math.PI) / 8,
      });
    }
  }
  return layers;
}

/** The per-queue expansion counts shown beside a finished plan. */
export function expansionSummary(record: PlanRecord): string[] {
  return record.queues.map((q) => `${q}: ${record.expansions[q] ?? 0}`);
}

export function planStatusLine(record: PlanRecord): string {
  if (record.status !== "success" || record.cost_mm === null) {
    return record.status === "cap_exceeded"
      ? `no plan: expansion cap ${record.expansion_cap} exhausted`
      : "no plan: search space exhausted (goal unreachable)";
  }
  return `cost ${(record.cost_mm / 1000).toFixed(2)} m, `
    + `${record.path.length} steps, ${record.settled_states} states`;
}

/** The word line displayed next to a drawn path: exactly the service's
 * rendering, never computed locally. */
export function refPathCaption(doc: RefPathDoc): string {
  return `${doc.id}: ${doc.word} → ${doc.h_word}`;
}

export function displayedWord(doc: RefPathDoc): string {
  return doc.h_word;
}

export function cellUnderCursor(world: WorldPayload, x: number, y: number): [number, number] {
  return cellOf(x, y, world.resolution_m);
}
