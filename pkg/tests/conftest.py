import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

REPO = Path(__file__).resolve().parent.parent
WORLDS = REPO / "worlds"

# Reference curve of the five-beam figure world, drawn goal-to-start.
FIVE_BEAMS_CURVE = [
    ((1.0, 1.0), 1), ((9.0, 1.0), 1), ((9.0, 7.0), 1), ((10.5, 7.0), 1),
    ((10.5, 9.5), 1), ((9.5, 9.5), 1), ((7.5, 9.5), 1),
]

# Curve tau of the three-level figure world (already in reduced form).
RAMP_CURVE = [
    ((7.5, 10.0), 3), ((9.5, 10.0), 3), ((9.5, 8.6), 3),
    ((9.5, 7.6), 2), ((7.0, 7.6), 2), ((7.0, 8.05), 2), ((8.95, 8.05), 2),
    ((8.95, 4.5), 2), ((4.0, 4.5), 2), ((4.0, 5.5), 2), ((5.5, 5.5), 2),
    ((5.5, 4.2), 2),
    ((5.5, 3.5), 1), ((5.5, 0.5), 1), ((1.0, 0.5), 1), ((1.0, 2.5), 1),
    ((3.0, 2.5), 1),
]


def load_world_doc(name: str) -> dict:
    return json.loads((WORLDS / f"{name}.json").read_text())


@pytest.fixture(scope="session")
def five_beams_world():
    from footplan.world import build_world
    return build_world(load_world_doc("five_beams"))


@pytest.fixture(scope="session")
def ramp_world():
    from footplan.world import build_world
    return build_world(load_world_doc("ramp_three_level"))
