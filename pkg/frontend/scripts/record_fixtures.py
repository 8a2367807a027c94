"""Record service responses and CLI outputs into frontend test fixtures.

Run from the repository root after changing worlds, fixture paths, or the
service: python3 frontend/scripts/record_fixtures.py
"""

import io
import json
import sys
from contextlib import redirect_stdout
from pathlib import Path

from fastapi.testclient import TestClient

REPO = Path(__file__).resolve().parent.parent.parent
OUT = REPO / "frontend" / "fixtures"

from footplan.cli import main as cli_main
from footplan.formats import load_world_doc
from footplan.service import create_app

WORD_PATHS = [
    {"id": "figure", "polyline": [[1.0, 1.0, 1], [9.0, 1.0, 1], [9.0, 7.0, 1],
                                  [10.5, 7.0, 1], [10.5, 9.5, 1], [9.5, 9.5, 1],
                                  [7.5, 9.5, 1]]},
    {"id": "one_beam", "polyline": [[1.0, 1.0, 1], [3.0, 1.0, 1]]},
    {"id": "trivial", "polyline": [[0.25, 2.0, 1], [0.25, 3.0, 1]]},
    {"id": "leftward", "polyline": [[4.0, 1.0, 1], [1.0, 1.0, 1]]},
    {"id": "loop", "polyline": [[1.0, 1.0, 1], [3.0, 1.0, 1], [3.0, 2.0, 1],
                                [1.0, 2.0, 1], [1.0, 1.0, 1]]},
]


def cli_words(world_path: Path, polyline) -> tuple[str, str]:
    doc = {"format_version": 1, "polyline": polyline}
    tmp = OUT / "_tmp_path.json"
    tmp.write_text(json.dumps(doc))
    buf = io.StringIO()
    with redirect_stdout(buf):
        rc = cli_main(["signature", str(world_path), str(tmp)])
    assert rc == 0
    tmp.unlink()
    word, h_word = buf.getvalue().splitlines()
    return word, h_word


def main() -> None:
    world_path = REPO / "worlds" / "five_beams.json"
    client = TestClient(create_app(load_world_doc(world_path)))

    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "world.json").write_text(json.dumps(client.get("/world").json(), indent=1))
    ramp_client = TestClient(create_app(load_world_doc(
        REPO / "worlds" / "ramp_three_level.json")))
    (OUT / "world_ramp.json").write_text(
        json.dumps(ramp_client.get("/world").json(), indent=1))

    cases = []
    for entry in WORD_PATHS:
        resp = client.post("/refpaths", json=entry)
        assert resp.status_code == 200, resp.text
        body = resp.json()
        word, h_word = cli_words(world_path, entry["polyline"])
        cases.append({
            "id": entry["id"], "polyline": entry["polyline"],
            "service": {"word": body["word"], "h_word": body["h_word"]},
            "cli": {"word": word, "h_word": h_word},
        })
    (OUT / "word_cases.json").write_text(json.dumps(cases, indent=1))

    rejected = client.post(
        "/refpaths", json={"id": "bad", "polyline": [[2.0, 0.5, 1], [2.5, 0.5, 1]]})
    (OUT / "rejected_refpath.json").write_text(json.dumps(
        {"status_code": rejected.status_code, "detail": rejected.json()["detail"]},
        indent=1))

    query = json.loads((REPO / "queries" / "five_beams_short.json").read_text())
    query.pop("format_version")
    query["use_reference_paths"] = ["figure"]
    record = client.post("/plan", json=query).json()
    assert record["status"] == "success"
    (OUT / "plan_record.json").write_text(json.dumps(record, indent=1))

    pid = record["plan_id"]
    (OUT / "heatmap_anchor.csv").write_text(client.get(f"/heuristic/{pid}/0").text)
    (OUT / "heatmap_ref.csv").write_text(client.get(f"/heuristic/{pid}/1").text)
    print(f"recorded fixtures into {OUT}")


if __name__ == "__main__":
    sys.exit(main())
