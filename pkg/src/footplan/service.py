"""HTTP/JSON service wrapping the planning pipeline for the browser UI.

Read endpoints are freely concurrent over the immutable world.  Plans run
one at a time behind a lock (concurrent plan requests queue); reference
path mutations conflict with a running plan and return 409.
"""

from __future__ import annotations

import itertools
import threading

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .errors import FootplanError, FormatError
from .formats import FORMAT_VERSION, make_reference_path, parse_polyline
from .heuristics import anchor_heatmap_csv, session_heatmap_csv
from .pipeline import PlanArtifacts, plan_query
from .world import World, build_world


class RefPathRequest(BaseModel):
    id: str | None = None
    polyline: list = Field(min_length=1)


class PlanRequest(BaseModel):
    id: str | None = None
    start: dict
    goal: dict
    w1: float = 3.0
    w2: float = 2.0
    expansion_cap: int = 200_000
    use_reference_paths: list[str] | str | None = None
    params: dict = Field(default_factory=dict)
    goal_h_word: str | None = None


def world_payload(world: World) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "resolution_m": world.resolution,
        "inflation_radius_m": world.inflation_radius,
        "surfaces": [
            {"id": s.id,
             "bounds": [s.bounds.xmin, s.bounds.ymin, s.bounds.xmax, s.bounds.ymax],
             "height": list(s.height)}
            for s in world.surfaces.values()
        ],
        "obstacle_count": len(world.obstacles),
        "obstacles": [
            {"letter": o.letter, "surface": o.surface_id,
             "representative": list(o.representative),
             "cells": sorted(list(c) for c in o.cells)}
            for o in world.obstacles
        ],
        "occupancy": [
            {"surface": sid,
             "cells": sorted([ws.origin[0] + int(ix), ws.origin[1] + int(iy)]
                             for ix, iy in zip(*ws.inflated.nonzero()))}
            for sid, ws in sorted(world.workspaces.items())
        ],
        "beams": [
            {"letter": b.letter, "surface": b.surface_id, "anchor": list(b.anchor),
             "pieces": [{"surface": p.surface_id, "x": p.x,
                         "y_lo": p.y_lo, "y_hi": p.y_hi} for p in b.pieces]}
            for b in world.beams
        ],
        "gates": [
            {"letter": g.letter, "lower": g.lower, "upper": g.upper,
             "cells": sorted(list(c) for c in g.cells)}
            for g in world.gates
        ],
    }


def create_app(world_doc: dict) -> FastAPI:
    world = build_world(world_doc)
    app = FastAPI(title="footplan service")

    refpaths: dict[str, object] = {}
    plans: dict[str, PlanArtifacts] = {}
    plan_lock = threading.Lock()
    ref_counter = itertools.count(1)
    plan_counter = itertools.count(1)
    app.state.world = world
    app.state.refpaths = refpaths
    app.state.plans = plans
    app.state.plan_lock = plan_lock

    def guard_mutation() -> None:
        if plan_lock.locked():
            raise HTTPException(409, "a plan is running; retry when it finishes")

    @app.get("/world")
    def get_world() -> dict:
        return world_payload(world)

    @app.get("/refpaths")
    def list_refpaths() -> dict:
        return {"paths": [r.to_doc() for r in refpaths.values()]}

    @app.post("/refpaths")
    def post_refpath(req: RefPathRequest) -> dict:
        guard_mutation()
        try:
            polyline = parse_polyline(req.polyline)
            path_id = req.id or f"p{next(ref_counter)}"
            if path_id in refpaths:
                raise FormatError(f"reference path {path_id!r} already exists")
            ref = make_reference_path(world, path_id, polyline)
        except FootplanError as exc:
            raise HTTPException(400, str(exc)) from exc
        refpaths[path_id] = ref
        return ref.to_doc()

    @app.delete("/refpaths/{path_id}")
    def delete_refpath(path_id: str) -> dict:
        guard_mutation()
        if path_id not in refpaths:
            raise HTTPException(404, f"no reference path {path_id!r}")
        del refpaths[path_id]
        return {"deleted": path_id}

    @app.post("/plan")
    def post_plan(req: PlanRequest) -> dict:
        query = req.model_dump(exclude_none=True)
        query["format_version"] = FORMAT_VERSION
        with plan_lock:
            try:
                artifacts = plan_query(world, query, list(refpaths.values()))
            except FootplanError as exc:
                raise HTTPException(400, str(exc)) from exc
            plan_id = f"plan{next(plan_counter)}"
            artifacts.record["plan_id"] = plan_id
            plans[plan_id] = artifacts
        return artifacts.record

    @app.get("/plan/{plan_id}")
    def get_plan(plan_id: str) -> dict:
        if plan_id not in plans:
            raise HTTPException(404, f"no plan {plan_id!r}")
        return plans[plan_id].record

    @app.get("/heuristic/{plan_id}/{index}", response_class=PlainTextResponse)
    def get_heuristic(plan_id: str, index: int) -> str:
        if plan_id not in plans:
            raise HTTPException(404, f"no plan {plan_id!r}")
        artifacts = plans[plan_id]
        if index == 0:
            return anchor_heatmap_csv(world, artifacts.heuristics.anchor)
        refs = artifacts.references
        if not 1 <= index <= len(refs) or artifacts.heuristics.session is None:
            raise HTTPException(404, f"plan {plan_id!r} has no heuristic {index}")
        return session_heatmap_csv(world, artifacts.heuristics.session,
                                   refs[index - 1].word)

    return app
