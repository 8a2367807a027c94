"""Scratch calibration for the scripted scenario worlds (not shipped API)."""

import json
import sys
import time
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "tests"))

from footplan.formats import load_world_doc, make_reference_path, parse_polyline
from footplan.pipeline import plan_query
from footplan.world import build_world


def run(world_name, query, refs_polylines=(), label=""):
    world = build_world(load_world_doc(REPO / "worlds" / f"{world_name}.json"))
    refs = [make_reference_path(world, f"r{i}", parse_polyline(p))
            for i, p in enumerate(refs_polylines)]
    t0 = time.perf_counter()
    art = plan_query(world, query, refs)
    dt = time.perf_counter() - t0
    rec = art.record
    print(f"{label:28s} status={rec['status']:12s} cost={rec['cost_mm']} "
          f"expansions={rec['expansions']} settled={rec['settled_states']} "
          f"t={dt:.1f}s")
    return rec


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

if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "all"
    if which in ("narrow", "all"):
        r1 = run("narrow_passage", {**Q_NARROW, "use_reference_paths": []},
                 [], "narrow set1 (anchor)")
        r2 = run("narrow_passage", {**Q_NARROW, "use_reference_paths": "all"},
                 [AROUND], "narrow set2 (around ref)")
        r3 = run("narrow_passage", {**Q_NARROW, "use_reference_paths": "all"},
                 [THROUGH, AROUND], "narrow set3 (bad+good)")
        tot = lambda r: sum(r["expansions"].values())
        print(f"  set2/set1 = {tot(r2)/tot(r1):.3f}  set3/set2 = {tot(r3)/tot(r2):.3f}")
    if which in ("ramp", "all"):
        r1 = run("two_level_ramp", {**Q_RAMP, "use_reference_paths": []},
                 [], "ramp set1 (anchor)")
        r2 = run("two_level_ramp", {**Q_RAMP, "use_reference_paths": "all"},
                 [AROUND_RAMP], "ramp set2 (cross-level ref)")
