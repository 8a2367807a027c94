// Grid snapping and world-to-canvas transforms for one surface layer.

import { SurfaceInfo } from "./types";

export interface Viewport {
  surface: SurfaceInfo;
  pxPerMeter: number;
  heightPx: number;
}

export function cellOf(x: number, y: number, resolution: number): [number, number] {
  return [Math.floor(x / resolution + 1e-9), Math.floor(y / resolution + 1e-9)];
}

export function cellCenter(gx: number, gy: number, resolution: number): [number, number] {
  const round = (v: number) => Math.round(v * 1e6) / 1e6;
  return [round((gx + 0.5) * resolution), round((gy + 0.5) * resolution)];
}

/** Snap a world point onto its cell center (drawn strokes become the exact
 * polylines the planner reasons about). */
export function snapToCellCenter(x: number, y: number, resolution: number): [number, number] {
  const [gx, gy] = cellOf(x, y, resolution);
  return cellCenter(gx, gy, resolution);
}

export function makeViewport(surface: SurfaceInfo, pxPerMeter: number): Viewport {
  const [, ymin, , ymax] = surface.bounds;
  return { surface, pxPerMeter, heightPx: (ymax - ymin) * pxPerMeter };
}

/** World meters to canvas pixels; canvas y grows downward. */
export function toCanvas(view: Viewport, x: number, y: number): [number, number] {
  const [xmin, ymin] = view.surface.bounds;
  return [(x - xmin) * view.pxPerMeter, view.heightPx - (y - ymin) * view.pxPerMeter];
}

export function toWorld(view: Viewport, px: number, py: number): [number, number] {
  const [xmin, ymin] = view.surface.bounds;
  return [xmin + px / view.pxPerMeter, ymin + (view.heightPx - py) / view.pxPerMeter];
}

export function surfaceContains(surface: SurfaceInfo, x: number, y: number): boolean {
  const [xmin, ymin, xmax, ymax] = surface.bounds;
  return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
}
