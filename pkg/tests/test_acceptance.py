"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they complete.  Every tolerance and time budget is asserted here.
"""

import json
import time

import numpy as np
import pytest

from footplan.errors import InvalidQueryError
from footplan.footstep import FootPose, FootstepSpace
from footplan.formats import (
    canonical_json,
    load_query_doc,
    load_refpaths_doc,
    load_world_doc,
    make_reference_path,
    parse_polyline,
    strip_timings,
)
from footplan.hbsp import QueryStatus, drain, open_session, query
from footplan.pipeline import plan_query
from footplan.signature import (
    parse_word,
    path_signature,
    reduce_word,
    render_word,
    suffixes,
)
from footplan.world import build_world

import oracles
import worldgen
from conftest import FIVE_BEAMS_CURVE, RAMP_CURVE, REPO


class Budget:
    def __init__(self, seconds: float, label: str):
        self.seconds = seconds
        self.label = label

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            assert self.elapsed < self.seconds, (
                f"{self.label} took {self.elapsed:.1f}s, budget {self.seconds}s")
            print(f"[PASS] {self.label} ({self.elapsed:.2f}s)")
        return False


def test_criterion_signature_golden_vectors(five_beams_world, ramp_world):
    with Budget(1.0, "signature golden vectors"):
        word = path_signature(FIVE_BEAMS_CURVE, five_beams_world)
        assert render_word(word) == "t2.t3.t4.~t4.~t5"
        assert render_word(reduce_word(word, five_beams_world)) == "t2.t3.~t5"
        tau = path_signature(RAMP_CURVE, ramp_world)
        assert render_word(reduce_word(tau, ramp_world)) == "t8.~t7.t6.t4.~t2.t1"


def test_criterion_suffix_sets_and_completeness_regression(five_beams_world):
    with Budget(30.0, "suffix-set vectors and completeness regression"):
        w = five_beams_world
        unreduced = parse_word("t2.t3.t4.~t4.~t5")
        reduced = parse_word("t2.t3.~t5")
        s_full = suffixes([unreduced], w)
        assert set(s_full.members) == {
            parse_word("t2.t3.~t5"), parse_word("t2.t3.t4"),
            parse_word("t2.t3"), parse_word("t2"), ()}
        s_reduced = suffixes([reduced], w)
        assert set(s_reduced.members) == {
            parse_word("t2.t3.~t5"), parse_word("t2.t3"), parse_word("t2"), ()}

        # The cautionary case: pruning by the reduced word's suffixes loses
        # the class that must cross beam 4 twice.
        goal = (1,) + w.cell_of((1.0, 1.0))
        start = (1,) + w.cell_of((7.5, 9.5))
        target = start + (reduced,)
        with_full = open_session(w, goal, [unreduced])
        status, dist = query(with_full, target)
        assert status is QueryStatus.FOUND and dist > 0
        with_reduced = open_session(w, goal, [reduced])
        status, _ = query(with_reduced, target)
        assert status is QueryStatus.EXHAUSTED


def test_criterion_homotopy_invariance_500_pairs():
    with Budget(60.0, "homotopy invariance, 500 randomized pairs"):
        rng = np.random.default_rng(2024)
        deformed_pairs = 0
        distinct_pairs = 0
        round_robin = 0
        while deformed_pairs < 400 or distinct_pairs < 100:
            round_robin += 1
            two_level = round_robin % 3 == 0
            world = worldgen.random_world(
                rng, two_level=two_level, nx=12,
                **({"ny": 12} if not two_level else {"floor_ny": 7, "ramp_ny": 7}))
            mut = oracles.PathMutator(world, rng)

            if deformed_pairs < 400:
                pair = worldgen.two_connected_vertices(world, rng)
                if pair is None:
                    continue
                base = mut.random_path(*pair)
                word = reduce_word(path_signature(
                    oracles.path_polyline(world, base), world), world)
                for _ in range(5):
                    mutated = mut.mutate(base, moves=80)
                    got = reduce_word(path_signature(
                        oracles.path_polyline(world, mutated), world), world)
                    assert got == word, "elementary deformation changed the word"
                    deformed_pairs += 1

            if distinct_pairs < 100 and not two_level:
                obs = world.obstacles[int(rng.integers(0, len(world.obstacles)))]
                gxs = [c[0] for c in obs.cells]
                gys = [c[1] for c in obs.cells]
                free = set(world.vertices())
                corners = [(1, min(gxs) - 1, max(gys) + 1), (1, max(gxs) + 1, max(gys) + 1),
                           (1, min(gxs) - 1, min(gys) - 1)]
                if not all(c in free for c in corners):
                    continue
                lo, left_top, right_top = corners[2], corners[0], corners[1]
                p_left = mut.random_path(lo, left_top)
                p_right = mut.random_path(lo, right_top)
                bridge = mut.random_path(left_top, right_top)
                if None in (p_left, p_right, bridge):
                    continue
                path_a = p_left + bridge[1:]
                path_b = p_right
                winds = oracles.loop_windings(world, path_a, path_b)
                wa = reduce_word(path_signature(
                    oracles.path_polyline(world, path_a), world), world)
                wb = reduce_word(path_signature(
                    oracles.path_polyline(world, path_b), world), world)
                if max(abs(t) for t in winds) > 0.5:
                    assert wa != wb, "opposite-side pair got one word"
                    distinct_pairs += 1
        assert deformed_pairs >= 400 and distinct_pairs >= 100


def test_criterion_hbsp_oracle_equivalence_and_resumability():
    with Budget(120.0, "HBSP oracle equivalence + resumability, 50 worlds"):
        rng = np.random.default_rng(77)
        checked = 0
        while checked < 50:
            kind = checked % 3
            if kind == 0:
                world = worldgen.random_world(rng, nx=14, ny=14)
            elif kind == 1:
                world = worldgen.random_world(rng, two_level=True, nx=12,
                                              floor_ny=8, ramp_ny=8)
            else:
                world = build_world(worldgen.random_three_level_doc(rng, nx=10,
                                                                    level_ny=6))
            pair = worldgen.two_connected_vertices(world, rng)
            if pair is None:
                continue
            goal, other = pair
            mut = oracles.PathMutator(world, rng)
            ref = mut.random_path(goal, other)
            word = path_signature(oracles.path_polyline(world, ref), world)

            session = open_session(world, goal, [word])
            drain(session)
            oracle = oracles.augmented_dijkstra(world, goal, [word])
            assert session.dist == oracle, "settled distances diverge from oracle"

            interleaved = open_session(world, goal, [word])
            sigs = sorted(interleaved.suffix_set.members)
            verts = sorted(world.vertices())
            for _ in range(12):
                v = verts[int(rng.integers(0, len(verts)))]
                sig = sigs[int(rng.integers(0, len(sigs)))]
                bound = int(rng.integers(0, 6000))
                query(interleaved, (v[0], v[1], v[2], sig), bound)
            drain(interleaved)
            assert interleaved.dist == oracle, "interleaved queries lost work"
            checked += 1


def _random_footstep_query(rng, world, space):
    verts = sorted(world.vertices())
    for _ in range(200):
        v = verts[int(rng.integers(0, len(verts)))]
        left = FootPose(v[1] - 1, v[2], 4, v[0])
        right = FootPose(v[1] + 1, v[2], 4, v[0])
        if space.is_valid(left, right):
            start = space.make_state(left, right, 0, ())
            if start is not None:
                return start
    return None


def test_criterion_smha_bound_and_exact_anchor():
    from footplan.heuristics import build_heuristic_set
    from footplan.smha import SmhaConfig, plan

    with Budget(300.0, "SMHA* suboptimality bound, 100 footstep queries"):
        rng = np.random.default_rng(555)
        from footplan.footstep import FootParams
        params = FootParams(yaw_steps=(0,))
        solved = 0
        while solved < 100:
            world = worldgen.random_world(rng, nx=10, ny=10, max_obstacles=3)
            space = FootstepSpace(world, params, track_signatures=False)
            start = _random_footstep_query(rng, world, space)
            if start is None:
                continue
            goal_cell = worldgen.random_free_vertex(world, rng)
            heur = build_heuristic_set(world, goal_cell, [], w2=2.0,
                                       goal_radius_mm=150)
            space.set_goal_region(heur.anchor, 150)
            optimal, _ = oracles.footstep_optimal(space, start)
            if optimal is None:
                continue

            # Optionally guide with a random reference path.
            words = []
            if solved % 2 == 1:
                mut = oracles.PathMutator(world, rng)
                ref = mut.random_path(goal_cell, start.projected_cell)
                if ref is not None:
                    words = [path_signature(oracles.path_polyline(world, ref), world)]
            heur2 = build_heuristic_set(world, goal_cell, words, w2=2.0,
                                        goal_radius_mm=150)
            space2 = FootstepSpace(world, params, track_signatures=bool(words))
            space2.set_goal_region(heur2.anchor, 150)
            start2 = space2.make_state(start.left, start.right, 0, ())
            res = plan(space2, heur2.evaluators(), start2,
                       SmhaConfig(w1=3.0, w2=2.0, expansion_cap=250_000))
            assert res.success, "solvable instance not solved"
            assert res.cost_mm <= 6 * optimal, (
                f"bound violated: {res.cost_mm} > 6 x {optimal}")

            exact = plan(space, [lambda s: heur.eval_anchor(s)], start,
                         SmhaConfig(w1=1.0, w2=1.0, expansion_cap=500_000))
            assert exact.success and exact.cost_mm == optimal, (
                f"w1=w2=1 anchor-only returned {exact.cost_mm}, optimal {optimal}")
            solved += 1


SCEN_PARAMS = {"body_clearance_m": 0.1, "yaw_steps": [0]}

Q_NARROW = {
    "format_version": 1, "id": "narrow",
    "start": {"left": {"x": 0.65, "y": 0.45, "theta": 4, "surface": 1},
              "right": {"x": 0.85, "y": 0.45, "theta": 4, "surface": 1}},
    "goal": {"center": {"x": 0.75, "y": 2.0, "surface": 1}, "radius_m": 0.2},
    "w1": 3.0, "w2": 2.0, "expansion_cap": 300000,
    "params": SCEN_PARAMS,
}
AROUND = [[0.75, 2.0, 1], [0.15, 2.0, 1], [0.15, 0.45, 1], [0.75, 0.45, 1]]
THROUGH = [[0.75, 2.0, 1], [0.75, 0.45, 1]]

Q_RAMP = {
    "format_version": 1, "id": "ramp",
    "start": {"left": {"x": 2.35, "y": 0.45, "theta": 4, "surface": 1},
              "right": {"x": 2.55, "y": 0.45, "theta": 4, "surface": 1}},
    "goal": {"center": {"x": 2.45, "y": 3.75, "surface": 2}, "radius_m": 0.2},
    "w1": 3.0, "w2": 2.0, "expansion_cap": 50000,
    "params": {"body_clearance_m": 0.1},
}
AROUND_RAMP = [[2.45, 3.75, 2], [2.45, 3.05, 2], [2.45, 2.55, 1], [0.2, 2.55, 1],
               [0.2, 0.45, 1], [2.45, 0.45, 1]]


def _scenario(world_name, query, polylines, ids):
    world = build_world(load_world_doc(REPO / "worlds" / f"{world_name}.json"))
    refs = [make_reference_path(world, pid, parse_polyline(p))
            for pid, p in zip(ids, polylines)]
    return plan_query(world, query, refs).record


def test_criterion_speedup_direction():
    with Budget(120.0, "speedup direction on scripted scenarios"):
        set1 = _scenario("narrow_passage", {**Q_NARROW, "use_reference_paths": []},
                         [], [])
        set2 = _scenario("narrow_passage", {**Q_NARROW, "use_reference_paths": "all"},
                         [AROUND], ["around"])
        assert set1["status"] == "success", "anchor-only run must still succeed"
        assert set2["status"] == "success"
        e1 = sum(set1["expansions"].values())
        e2 = sum(set2["expansions"].values())
        assert e2 <= 0.25 * e1, f"guided run used {e2} vs {e1} expansions"

        ramp1 = _scenario("two_level_ramp", {**Q_RAMP, "use_reference_paths": []},
                          [], [])
        ramp2 = _scenario("two_level_ramp", {**Q_RAMP, "use_reference_paths": "all"},
                          [AROUND_RAMP], ["over"])
        assert ramp1["status"] == "cap_exceeded", "anchor-only run must hit the cap"
        assert sum(ramp1["expansions"].values()) >= 50000
        assert ramp2["status"] == "success"


def test_criterion_robust_to_bad_guidance():
    with Budget(60.0, "robustness to a misleading reference path"):
        good = _scenario("narrow_passage", {**Q_NARROW, "use_reference_paths": "all"},
                         [AROUND], ["around"])
        mixed = _scenario("narrow_passage", {**Q_NARROW, "use_reference_paths": "all"},
                          [THROUGH, AROUND], ["through", "around"])
        assert good["status"] == mixed["status"] == "success"
        e_good = sum(good["expansions"].values())
        e_mixed = sum(mixed["expansions"].values())
        assert e_mixed <= 2 * e_good, f"{e_mixed} > 2 x {e_good}"


def test_criterion_round_trips_and_parity(tmp_path):
    from fastapi.testclient import TestClient
    from footplan.service import create_app

    with Budget(60.0, "format round-trips and CLI/service parity"):
        for name in ("five_beams", "ramp_three_level", "narrow_passage",
                     "two_level_ramp"):
            doc = load_world_doc(REPO / "worlds" / f"{name}.json")
            blob = canonical_json(doc)
            p = tmp_path / f"{name}.json"
            p.write_text(blob)
            assert canonical_json(load_world_doc(p)) == blob

        world_path = REPO / "worlds" / "five_beams.json"
        query = load_query_doc(REPO / "queries" / "five_beams_short.json")
        world = build_world(load_world_doc(world_path))
        refs = load_refpaths_doc(REPO / "refpaths" / "five_beams.json", world)
        cli_record = plan_query(world, query, refs).record

        client = TestClient(create_app(load_world_doc(world_path)))
        polyline = json.loads(
            (REPO / "refpaths" / "five_beams.json").read_text())["paths"][0]
        client.post("/refpaths", json=polyline)
        req = {k: v for k, v in query.items() if k != "format_version"}
        service_record = client.post("/plan", json=req).json()
        service_record.pop("plan_id")
        assert strip_timings(cli_record) == strip_timings(service_record)
