"""Figure rendering for plan reports: world layout, heatmaps, footsteps.

Figures are written next to the CSV exports so a report directory is
self-contained.  Rendering is headless (Agg backend).
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .heuristics import INF_MM
from .world import World


def _surface_axes(world: World, fig, title: str):
    sids = sorted(world.surfaces)
    axes = fig.subplots(1, len(sids), squeeze=False)[0]
    fig.suptitle(title)
    for ax, sid in zip(axes, sids):
        b = world.surfaces[sid].bounds
        ax.set_xlim(b.xmin, b.xmax)
        ax.set_ylim(b.ymin, b.ymax)
        ax.set_aspect("equal")
        ax.set_title(f"surface {sid}")
    return dict(zip(sids, axes))


def _draw_world(world: World, axes: dict) -> None:
    r = world.resolution
    for sid, ax in axes.items():
        ws = world.workspaces[sid]
        for ix, iy in zip(*np.nonzero(ws.inflated)):
            gx, gy = ws.origin[0] + int(ix), ws.origin[1] + int(iy)
            ax.add_patch(plt.Rectangle((gx * r, gy * r), r, r,
                                       color="0.35", linewidth=0))
        for piece in world.beam_pieces_on(sid):
            ax.plot([piece.x, piece.x], [piece.y_lo, piece.y_hi],
                    color="tab:blue", linewidth=0.8, linestyle="--")
        for gate in world.gates_of(sid):
            xs = [(c[0] + 0.5) * r for c in gate.cells]
            ys = [(c[1] + 0.5) * r for c in gate.cells]
            ax.scatter(xs, ys, s=4, color="tab:orange", marker="s")
    for beam in world.beams:
        ax = axes[beam.surface_id]
        ax.annotate(f"t{beam.letter}", beam.anchor, fontsize=7, color="tab:blue")


def render_world_figure(world: World, out_png: str | Path) -> Path:
    fig = plt.figure(figsize=(4 * len(world.surfaces), 4))
    axes = _surface_axes(world, fig, "world")
    _draw_world(world, axes)
    out = Path(out_png)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out


def render_heatmap_figure(world: World, csv_text: str, title: str,
                          out_png: str | Path) -> Path:
    rows = [line.split(",") for line in csv_text.strip().splitlines()[1:]]
    fig = plt.figure(figsize=(4 * len(world.surfaces), 4))
    axes = _surface_axes(world, fig, title)
    _draw_world(world, axes)
    by_surface: dict[int, list] = {}
    for sid, x, y, value in rows:
        v = int(value)
        if v < INF_MM:
            by_surface.setdefault(int(sid), []).append((float(x), float(y), v))
    finite = [v for pts in by_surface.values() for _, _, v in pts]
    vmax = max(finite) if finite else 1
    for sid, pts in by_surface.items():
        xs, ys, vs = zip(*pts)
        axes[sid].scatter(xs, ys, c=vs, cmap="viridis", vmin=0, vmax=vmax,
                          s=6, marker="s", alpha=0.85)
    out = Path(out_png)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out


def render_plan_figure(world: World, record: dict, out_png: str | Path) -> Path:
    fig = plt.figure(figsize=(4 * len(world.surfaces), 4))
    axes = _surface_axes(world, fig, f"plan {record.get('query_id', '')} "
                                     f"[{record.get('status')}]")
    _draw_world(world, axes)
    for state in record.get("path", []):
        for foot, color in (("left", "tab:red"), ("right", "tab:green")):
            pose = state[foot]
            ax = axes.get(pose["surface"])
            if ax is None:
                continue
            theta = pose["theta"] * math.pi / 8
            ax.plot(pose["x"], pose["y"], marker=(3, 0, math.degrees(theta) - 90),
                    markersize=4, color=color)
    out = Path(out_png)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return out


def write_report(world: World, artifacts, out_dir: str | Path) -> list[Path]:
    """Heatmap CSVs with matching PNG figures plus world and plan figures."""
    from .heuristics import anchor_heatmap_csv, session_heatmap_csv

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    csv_text = anchor_heatmap_csv(world, artifacts.heuristics.anchor)
    csv_path = out_dir / "heuristic_anchor.csv"
    csv_path.write_text(csv_text)
    written.append(csv_path)
    written.append(render_heatmap_figure(world, csv_text, "anchor heuristic",
                                         out_dir / "heuristic_anchor.png"))

    session = artifacts.heuristics.session
    for i, ref in enumerate(artifacts.references):
        csv_text = session_heatmap_csv(world, session, ref.word)
        csv_path = out_dir / f"heuristic_{i + 1}_{ref.id}.csv"
        csv_path.write_text(csv_text)
        written.append(csv_path)
        written.append(render_heatmap_figure(
            world, csv_text, f"homotopy heuristic {ref.id}",
            out_dir / f"heuristic_{i + 1}_{ref.id}.png"))

    written.append(render_world_figure(world, out_dir / "world.png"))
    written.append(render_plan_figure(world, artifacts.record, out_dir / "plan.png"))
    return written
