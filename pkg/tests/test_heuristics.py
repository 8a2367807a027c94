"""Anchor table and homotopy estimators."""

import numpy as np
import pytest

from footplan.errors import InvalidQueryError
from footplan.footstep import FootPose, FootstepSpace, foot_pose_from_doc
from footplan.hbsp import INF_MM
from footplan.heuristics import (
    anchor_heatmap_csv,
    build_h_dijk,
    build_heuristic_set,
    session_heatmap_csv,
)
from footplan.signature import parse_word
from footplan.world import build_world

import oracles
import worldgen


def empty_room(n=10):
    return build_world({
        "format_version": 1, "resolution_m": 0.1,
        "surfaces": [{"id": 1, "bounds": [0, 0, n * 0.1, n * 0.1], "height": [0, 0, 0]}],
        "obstacles_3d": [],
    })


def test_h_dijk_goal_is_zero_and_occupied_rejected(five_beams_world):
    w = five_beams_world
    goal = (1, 10, 10)
    table = build_h_dijk(w, goal)
    assert table[goal] == 0
    with pytest.raises(InvalidQueryError):
        build_h_dijk(w, (1, 20, 5))


def test_h_dijk_octile_corner():
    w = empty_room(10)
    table = build_h_dijk(w, (1, 0, 0))
    # Straight diagonal: 9 steps at 141 mm each.
    assert table[(1, 9, 9)] == 9 * 141
    assert table[(1, 9, 0)] == 9 * 100


def test_h_dijk_through_gate_matches_union_oracle(ramp_world):
    goal = (1, 10, 10)
    table = build_h_dijk(ramp_world, goal)
    oracle = oracles.union_dijkstra(ramp_world, goal)
    assert table == oracle
    # Cells on the top level are reachable only via both gates.
    top = next(v for v in ramp_world.vertices() if v[0] == 3)
    assert table[top] < INF_MM


@pytest.mark.parametrize("seed", range(4))
def test_anchor_consistency_per_edge(seed):
    rng = np.random.default_rng(40 + seed)
    world = worldgen.random_world(rng, two_level=bool(seed % 2), nx=10,
                                  **({"ny": 10} if seed % 2 == 0 else
                                     {"floor_ny": 6, "ramp_ny": 6}))
    goal = worldgen.random_free_vertex(world, rng)
    table = build_h_dijk(world, goal)
    for v in world.vertices():
        for u, cost in world.neighbors(v):
            if v in table and u in table:
                assert abs(table[v] - table[u]) <= cost


def make_space_and_state(world, x, y, sid=1, sig=()):
    space = FootstepSpace(world)
    left = foot_pose_from_doc(world, {"x": x, "y": y + 0.1, "theta": 0, "surface": sid})
    right = foot_pose_from_doc(world, {"x": x, "y": y - 0.1, "theta": 0, "surface": sid})
    state = space.make_state(left, right, 0, tuple(sig))
    assert state is not None
    return space, state


def test_eval_anchor_at_goal_and_island(five_beams_world):
    w = five_beams_world
    goal = (1, 10, 10)
    hs = build_heuristic_set(w, goal)
    _, state = make_space_and_state(w, 1.05, 1.05)
    assert state.projected_cell == (1, 10, 10)
    assert hs.eval_anchor(state) == 0
    # A walled-off pocket has no finite anchor value.
    doc = {
        "format_version": 1, "resolution_m": 0.1,
        "surfaces": [{"id": 1, "bounds": [0, 0, 2.0, 2.0], "height": [0, 0, 0]}],
        "obstacles_3d": [{"box": [1.2, 0.0, 0.0, 1.4, 2.0, 0.2]}],
    }
    w2 = build_world(doc)
    hs2 = build_heuristic_set(w2, (1, 2, 10))
    _, pocket = make_space_and_state(w2, 1.75, 1.0)
    assert hs2.eval_anchor(pocket) == INF_MM


def test_eval_homotopy_examples(five_beams_world):
    w = five_beams_world
    goal = (1, 10, 10)          # cell of (1.05, 1.05)
    s = parse_word("t2.t3.t4.~t4.~t5")
    hs = build_heuristic_set(w, goal, [s], w2=2.0)
    assert hs.queue_count == 2

    # Start state in the trivial class: finite class-constrained estimate.
    space, start = make_space_and_state(w, 7.5, 9.5)
    value = hs.eval_homotopy(0, start)
    oracle = oracles.augmented_dijkstra(w, goal, [s])
    target = (1,) + tuple(w.cell_of((7.5, 9.5))) + (parse_word("t2.t3.~t5"),)
    assert value == oracle[target]
    assert value >= hs.eval_anchor(start)

    # A state at the goal whose signature completes the class: zero.
    _, done = make_space_and_state(w, 1.05, 1.05, sig=parse_word("t5.t4.~t4.~t3.~t2"))
    assert hs.eval_homotopy(0, done) == 0

    # A signature no suffix can complete: infinity sentinel.
    _, off = make_space_and_state(w, 7.5, 9.5, sig=parse_word("~t1"))
    assert hs.eval_homotopy(0, off) == INF_MM


def test_heatmap_exports(five_beams_world):
    w = five_beams_world
    s = parse_word("t2.t3.t4.~t4.~t5")
    hs = build_heuristic_set(w, (1, 10, 10), [s])
    csv = anchor_heatmap_csv(w, hs.anchor)
    assert csv.splitlines()[0] == "surface,x,y,value_mm"
    assert len(csv.splitlines()) == len(hs.anchor) + 1
    space, start = make_space_and_state(w, 7.5, 9.5)
    hs.eval_homotopy(0, start)
    scsv = session_heatmap_csv(w, hs.session, s)
    assert len(scsv.splitlines()) > 1


def test_eval_anchor_never_exceeds_footstep_optimum():
    # Exhaustive small instances: the anchor at the start state is a lower
    # bound on the true optimal footstep cost found by uniform-cost search.
    from footplan.footstep import FootParams, FootPose, FootstepSpace

    rng = np.random.default_rng(63)
    params = FootParams(yaw_steps=(0,))
    checked = 0
    while checked < 8:
        world = worldgen.random_world(rng, nx=8, ny=8, max_obstacles=2)
        space = FootstepSpace(world, params, track_signatures=False)
        verts = sorted(world.vertices())
        v = verts[int(rng.integers(0, len(verts)))]
        left = FootPose(v[1] - 1, v[2], 4, v[0])
        right = FootPose(v[1] + 1, v[2], 4, v[0])
        if not space.is_valid(left, right):
            continue
        start = space.make_state(left, right, 0, ())
        if start is None:
            continue
        goal_cell = worldgen.random_free_vertex(world, rng)
        hs = build_heuristic_set(world, goal_cell, [], goal_radius_mm=100)
        space.set_goal_region(hs.anchor, 100)
        optimal, _ = oracles.footstep_optimal(space, start)
        if optimal is None:
            continue
        assert hs.eval_anchor(start) <= optimal
        checked += 1
