// Single-page app wiring: layer tabs, path drawing, planning, overlays.

import { PlannerClient, ServiceError } from "./api";
import { parseHeatmapCsv } from "./csv";
import { Stroke, joinStrokes } from "./draw";
import { Viewport, makeViewport, surfaceContains, toWorld } from "./grid";
import { paint } from "./painter";
import {
  LayerOps,
  expansionSummary,
  heatmapLayers,
  markerLayers,
  planLayers,
  planStatusLine,
  refPathCaption,
  refPathLayers,
  worldLayers,
} from "./scene";
import { PlanRecord, RefPathDoc, WorldPayload } from "./types";

const PX_PER_METER = 60;

type ClickMode = "draw" | "start" | "goal";

interface AppState {
  world: WorldPayload;
  activeSurface: number;
  refpaths: RefPathDoc[];
  selected: Set<string>;
  strokes: Stroke[];
  start: { x: number; y: number; surface: number } | null;
  goal: { x: number; y: number; surface: number } | null;
  plan: PlanRecord | null;
  heatmap: LayerOps | null;
  mode: ClickMode;
  planInFlight: boolean;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function banner(text: string, isError = false): void {
  const node = el<HTMLDivElement>("banner");
  node.textContent = text;
  node.className = isError ? "banner error" : "banner";
}

async function start(): Promise<void> {
  const client = new PlannerClient("");
  const world = await client.world();
  const state: AppState = {
    world,
    activeSurface: world.surfaces[0].id,
    refpaths: await client.listRefPaths(),
    selected: new Set(),
    strokes: [],
    start: null,
    goal: null,
    plan: null,
    heatmap: null,
    mode: "draw",
    planInFlight: false,
  };

  const canvas = el<HTMLCanvasElement>("canvas");
  const ctx = canvas.getContext("2d")!;
  const base = worldLayers(world);

  const viewports = new Map<number, Viewport>(
    world.surfaces.map((s) => [s.id, makeViewport(s, PX_PER_METER)]));

  function repaint(): void {
    const view = viewports.get(state.activeSurface)!;
    const [xmin, , xmax] = view.surface.bounds;
    canvas.width = (xmax - xmin) * PX_PER_METER;
    canvas.height = view.heightPx;
    ctx.fillStyle = "#f7f7f7";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    const layerSets: (LayerOps | null)[] = [
      state.heatmap,
      base,
      refPathLayers(world, state.refpaths.filter((r) => state.selected.has(r.id))),
      markerLayers(world, state.start, state.goal),
      state.plan ? planLayers(world, state.plan) : null,
    ];
    for (const layers of layerSets) {
      const ops = layers?.get(state.activeSurface);
      if (ops) paint(ctx, view, ops, world.resolution_m);
    }
    if (state.strokes.length) {
      const pts = joinStrokes(state.strokes, world.resolution_m)
        .filter(([, , sid]) => sid === state.activeSurface)
        .map(([x, y]) => [x, y] as [number, number]);
      paint(ctx, view, [{ kind: "polyline", points: pts, color: "#555", width: 1 }],
            world.resolution_m);
    }
  }

  function renderTabs(): void {
    const tabs = el<HTMLDivElement>("tabs");
    tabs.innerHTML = "";
    for (const s of world.surfaces) {
      const button = document.createElement("button");
      button.textContent = `surface ${s.id}`;
      button.disabled = s.id === state.activeSurface;
      button.onclick = () => { state.activeSurface = s.id; renderAll(); };
      tabs.appendChild(button);
    }
  }

  function renderRefPaths(): void {
    const list = el<HTMLUListElement>("refpaths");
    list.innerHTML = "";
    for (const doc of state.refpaths) {
      const item = document.createElement("li");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = state.selected.has(doc.id);
      box.onchange = () => {
        if (box.checked) state.selected.add(doc.id);
        else state.selected.delete(doc.id);
        repaint();
      };
      const caption = document.createElement("span");
      caption.textContent = refPathCaption(doc);
      const remove = document.createElement("button");
      remove.textContent = "x";
      remove.onclick = async () => {
        try {
          await client.deleteRefPath(doc.id);
          state.refpaths = state.refpaths.filter((r) => r.id !== doc.id);
          state.selected.delete(doc.id);
          renderAll();
        } catch (err) {
          banner(String(err instanceof Error ? err.message : err), true);
        }
      };
      item.append(box, caption, remove);
      list.appendChild(item);
    }
  }

  function renderStats(): void {
    const stats = el<HTMLDivElement>("stats");
    if (!state.plan) {
      stats.textContent = "";
      return;
    }
    stats.textContent = `${planStatusLine(state.plan)} | expansions `
      + expansionSummary(state.plan).join(", ");
  }

  function renderAll(): void {
    renderTabs();
    renderRefPaths();
    renderStats();
    repaint();
  }

  canvas.addEventListener("pointerdown", (event) => {
    const view = viewports.get(state.activeSurface)!;
    const rect = canvas.getBoundingClientRect();
    const [x, y] = toWorld(view, event.clientX - rect.left, event.clientY - rect.top);
    if (!surfaceContains(view.surface, x, y)) return;
    if (state.mode === "start") {
      state.start = { x, y, surface: state.activeSurface };
      state.mode = "draw";
    } else if (state.mode === "goal") {
      state.goal = { x, y, surface: state.activeSurface };
      state.mode = "draw";
    } else {
      const last = state.strokes[state.strokes.length - 1];
      if (last && last.surface === state.activeSurface) {
        last.samples.push([x, y]);
      } else {
        state.strokes.push({ surface: state.activeSurface, samples: [[x, y]] });
      }
    }
    repaint();
  });

  el<HTMLButtonElement>("mode-start").onclick = () => { state.mode = "start"; };
  el<HTMLButtonElement>("mode-goal").onclick = () => { state.mode = "goal"; };

  el<HTMLButtonElement>("finish-path").onclick = async () => {
    const polyline = joinStrokes(state.strokes, world.resolution_m);
    state.strokes = [];
    if (polyline.length === 0) return;
    try {
      const doc = await client.postRefPath(polyline);
      state.refpaths.push(doc);
      state.selected.add(doc.id);
      banner(`registered ${doc.id}: ${doc.h_word}`);
    } catch (err) {
      if (err instanceof ServiceError) banner(`path rejected: ${err.message}`, true);
      else throw err;
    }
    renderAll();
  };

  el<HTMLButtonElement>("clear-stroke").onclick = () => {
    state.strokes = [];
    repaint();
  };

  el<HTMLButtonElement>("run-plan").onclick = async () => {
    if (state.planInFlight || !state.start || !state.goal) {
      banner("place start and goal first", true);
      return;
    }
    state.planInFlight = true;
    const button = el<HTMLButtonElement>("run-plan");
    button.disabled = true;
    try {
      const sep = 0.1;
      state.plan = await client.plan({
        start: {
          left: { x: state.start.x - sep, y: state.start.y, theta: 0,
                  surface: state.start.surface },
          right: { x: state.start.x + sep, y: state.start.y, theta: 0,
                   surface: state.start.surface },
        },
        goal: { center: { ...state.goal, surface: state.goal.surface },
                radius_m: 0.2 },
        use_reference_paths: [...state.selected],
      });
      state.heatmap = null;
      banner(planStatusLine(state.plan), state.plan.status !== "success");
      renderHeatmapButtons();
    } catch (err) {
      banner(String(err instanceof Error ? err.message : err), true);
    } finally {
      state.planInFlight = false;
      button.disabled = false;
      renderAll();
    }
  };

  function renderHeatmapButtons(): void {
    const box = el<HTMLDivElement>("heatmaps");
    box.innerHTML = "";
    if (!state.plan?.plan_id) return;
    state.plan.queues.forEach((label, index) => {
      const button = document.createElement("button");
      button.textContent = `heatmap ${label}`;
      button.onclick = async () => {
        const csv = await client.heatmapCsv(state.plan!.plan_id!, index);
        state.heatmap = heatmapLayers(world, parseHeatmapCsv(csv, world.resolution_m));
        repaint();
      };
      box.appendChild(button);
    });
    const off = document.createElement("button");
    off.textContent = "heatmap off";
    off.onclick = () => { state.heatmap = null; repaint(); };
    box.appendChild(off);
  }

  renderAll();
}

start().catch((err) => banner(`failed to load world: ${err}`, true));
