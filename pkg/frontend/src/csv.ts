// Heatmap CSV parsing: "surface,x,y,value_mm" rows from the service.

import { cellOf } from "./grid";

export interface HeatmapTable {
  resolution: number;
  values: Map<string, number>; // "surface:gx:gy" -> value_mm
  vmax: number;
}

function key(surface: number, gx: number, gy: number): string {
  return `${surface}:${gx}:${gy}`;
}

export function parseHeatmapCsv(text: string, resolution: number): HeatmapTable {
  const lines = text.trim().split(/\r?\n/);
  if (lines[0] !== "surface,x,y,value_mm") {
    throw new Error(`unexpected heatmap header: ${lines[0]}`);
  }
  const values = new Map<string, number>();
  let vmax = 0;
  for (const line of lines.slice(1)) {
    if (!line) continue;
    const [s, xs, ys, vs] = line.split(",");
    const surface = Number(s);
    const value = Number(vs);
    const [gx, gy] = cellOf(Number(xs), Number(ys), resolution);
    values.set(key(surface, gx, gy), value);
    if (value > vmax) vmax = value;
  }
  return { resolution, values, vmax };
}

/** Value at a cell, or null where the service settled nothing. */
export function heatmapValueAt(
  table: HeatmapTable, surface: number, gx: number, gy: number,
): number | null {
  const v = table.values.get(key(surface, gx, gy));
  return v === undefined ? null : v;
}

/** Viridis-ish three-stop ramp; enough for an overlay. */
export function heatColor(value: number, vmax: number): string {
  const t = vmax > 0 ? Math.min(value / vmax, 1) : 0;
  const stops: [number, number, number][] = [
    [68, 1, 84], [33, 145, 140], [253, 231, 37],
  ];
  const pos = t * (stops.length - 1);
  const i = Math.min(Math.floor(pos), stops.length - 2);
  const f = pos - i;
  const mix = stops[i].map((c, k) => Math.round(c + f * (stops[i + 1][k] - c)));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}
