"""End-to-end planning: world + query + reference paths -> plan record.

The same function backs the CLI and the HTTP service, so both produce
identical records for identical inputs (timing fields aside).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .errors import FormatError, InvalidQueryError
from .footstep import (
    LEFT,
    RIGHT,
    FootParams,
    FootPose,
    FootstepSpace,
    FootState,
    foot_pose_from_doc,
)
from .formats import FORMAT_VERSION, ReferencePath
from .heuristics import HeuristicSet, build_heuristic_set
from .signature import parse_word, render_word
from .smha import INF, SmhaConfig, plan as smha_plan
from .world import Vertex, World


@dataclass
class PlanArtifacts:
    """Everything a UI may want to inspect after a plan."""

    record: dict
    heuristics: HeuristicSet
    space: FootstepSpace
    references: list[ReferencePath] = field(default_factory=list)


def _foot_params(doc: dict) -> FootParams:
    params = FootParams()
    overrides = doc.get("params", {})
    known = {f for f in FootParams.__dataclass_fields__}
    unknown = set(overrides) - known
    if unknown:
        raise FormatError(f"unknown footstep params: {sorted(unknown)}")
    if "displacements" in overrides:
        overrides = dict(overrides)
        overrides["displacements"] = tuple(
            (float(dx), float(dy)) for dx, dy in overrides["displacements"])
    if "yaw_steps" in overrides:
        overrides = dict(overrides)
        overrides["yaw_steps"] = tuple(int(v) for v in overrides["yaw_steps"])
    return replace(params, **overrides)


def _goal_cell(world: World, goal_doc: dict) -> tuple[Vertex, int]:
    center = goal_doc.get("center")
    if center is None:
        raise FormatError("region goals need 'center'")
    pose = foot_pose_from_doc(world, center)
    radius_mm = int(round(float(goal_doc.get("radius_m", 0.0)) * 1000))
    return (pose.surface_id, pose.gx, pose.gy), radius_mm


def _pose_doc(world: World, pose: FootPose) -> dict:
    x, y = world.cell_center((pose.gx, pose.gy))
    return {
        "x": round(x, 6), "y": round(y, 6),
        "z": round(world.height_at(pose.surface_id, x, y), 6),
        "theta": pose.theta, "surface": pose.surface_id,
    }


def _state_doc(world: World, state: FootState) -> dict:
    return {
        "left": _pose_doc(world, state.left),
        "right": _pose_doc(world, state.right),
        "moving": "left" if state.moving == LEFT else "right",
        "sig": render_word(state.sig),
    }


def select_references(references: list[ReferencePath], selection) -> list[ReferencePath]:
    if selection in (None, "all"):
        return list(references)
    if not isinstance(selection, list):
        raise FormatError("'use_reference_paths' must be a list of ids or \"all\"")
    by_id = {r.id: r for r in references}
    missing = [rid for rid in selection if rid not in by_id]
    if missing:
        raise InvalidQueryError(f"unknown reference path ids: {missing}")
    return [by_id[rid] for rid in selection]


def plan_query(world: World, query: dict,
               references: list[ReferencePath] = ()) -> PlanArtifacts:
    params = _foot_params(query)
    w1 = float(query.get("w1", 3.0))
    w2 = float(query.get("w2", 2.0))
    cap = int(query.get("expansion_cap", 200_000))

    start_doc = query["start"]
    left = foot_pose_from_doc(world, start_doc["left"])
    right = foot_pose_from_doc(world, start_doc["right"])
    moving = {"left": LEFT, "right": RIGHT}[start_doc.get("moving", "left")]

    refs = select_references(list(references), query.get("use_reference_paths"))
    ref_words = [r.word for r in refs]

    goal_doc = query["goal"]
    goal_sig = parse_word(query["goal_h_word"]) if "goal_h_word" in query else None

    t0 = time.perf_counter()
    goal_cell, radius_mm = _goal_cell(world, goal_doc)
    heuristics = build_heuristic_set(world, goal_cell, ref_words, w2=w2,
                                     goal_radius_mm=radius_mm)
    build_ms = (time.perf_counter() - t0) * 1000

    space = FootstepSpace(world, params, track_signatures=bool(refs) or goal_sig is not None)
    if "feet" in goal_doc:
        space.set_goal_feet(foot_pose_from_doc(world, goal_doc["feet"]["left"]),
                            foot_pose_from_doc(world, goal_doc["feet"]["right"]),
                            goal_sig)
    else:
        space.set_goal_region(heuristics.anchor, radius_mm, goal_sig)

    if not space.is_valid(left, right):
        raise InvalidQueryError("start configuration is invalid")
    start = space.make_state(left, right, moving, ())
    if start is None:
        raise InvalidQueryError("start configuration projects outside the world")

    t1 = time.perf_counter()
    result = smha_plan(space, heuristics.evaluators(), start,
                       SmhaConfig(w1=w1, w2=w2, expansion_cap=cap))
    search_ms = (time.perf_counter() - t1) * 1000

    queues = ["anchor"] + [r.id for r in refs]
    record = {
        "format_version": FORMAT_VERSION,
        "query_id": str(query.get("id", "query")),
        "status": result.status,
        "heuristic_set": {
            "anchor": "backward_dijkstra",
            "references": [{"id": r.id, "word": render_word(r.word),
                            "h_word": render_word(r.h_word)} for r in refs],
            "w1": w1, "w2": w2,
        },
        "cost_mm": result.cost_mm if result.success else None,
        "path": [_state_doc(world, s) for s in result.path],
        "queues": queues,
        "expansions": dict(zip(queues, result.expansions)),
        "heuristic_evals": dict(sorted(heuristics.eval_counts.items())),
        "settled_states": result.settled,
        "expansion_cap": cap,
        "heuristic_build_ms": round(build_ms, 3),
        "search_ms": round(search_ms, 3),
    }
    return PlanArtifacts(record, heuristics, space, refs)
