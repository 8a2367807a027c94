// Stroke capture: raw pointer samples become a grid-snapped polyline.

import { snapToCellCenter } from "./grid";

export interface Stroke {
  surface: number;
  samples: [number, number][]; // world meters
}

/** Snap every sample to its cell center and drop consecutive duplicates,
 * so the posted polyline is exactly what the planner traces. */
export function strokeToPolyline(stroke: Stroke, resolution: number):
    [number, number, number][] {
  const out: [number, number, number][] = [];
  for (const [x, y] of stroke.samples) {
    const [sx, sy] = snapToCellCenter(x, y, resolution);
    const prev = out[out.length - 1];
    if (prev && prev[0] === sx && prev[1] === sy && prev[2] === stroke.surface) {
      continue;
    }
    out.push([sx, sy, stroke.surface]);
  }
  return out;
}

/** Join per-surface strokes into one polyline (layer switches mid-draw). */
export function joinStrokes(strokes: Stroke[], resolution: number):
    [number, number, number][] {
  const out: [number, number, number][] = [];
  for (const stroke of strokes) {
    for (const point of strokeToPolyline(stroke, resolution)) {
      const prev = out[out.length - 1];
      if (prev && prev[0] === point[0] && prev[1] === point[1]
          && prev[2] === point[2]) {
        continue;
      }
      out.push(point);
    }
  }
  return out;
}
