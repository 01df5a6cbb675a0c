"""Tests for decompforge.reporter"""

import json
from pathlib import Path

from decompforge.reporter import Reporter, get_reporter, stage_counts, stage_recorder


def test_reporter_write_csv(tmp_path: Path):
    r = Reporter()
    r.record(run="seed=1", method="algebraic", stage="template", action="built", seed=1, meta={"a": 3})
    r.record(run="seed=1", method="algebraic", stage="nibble", action="matched", seed=1, meta={"leave": 4})

    out_file = tmp_path / "events.csv"
    written = r.write_csv(out_file)

    assert written.exists()
    content = written.read_text().strip().splitlines()
    # header + 2 rows
    assert len(content) == 3
    header = content[0].split(",")
    assert header == ["timestamp", "run", "method", "stage", "action", "seed", "meta"]
    assert "a=3" in content[1]

    # append mode
    r.record(run="seed=2", method="algebraic", stage="template", action="built", seed=2)
    r.write_csv(out_file, overwrite=False)
    content2 = out_file.read_text().strip().splitlines()
    assert len(content2) == 4  # one more row, header not duplicated


def test_reporter_record_snapshot_and_count():
    r = Reporter()
    assert r.count() == 0
    r.record(run="seed=0", method="iterative", stage="vortex", action="built", meta={"tau": 2})
    r.record(run="seed=0", method="iterative", stage="cover_down", action="covered", seed=0, meta=None)
    snap = r.snapshot()
    assert isinstance(snap, list)
    assert r.count() == 2
    assert snap[0].stage == "vortex"
    assert snap[0].seed is None
    assert snap[1].meta == {}


def test_reporter_to_dicts_and_clear(tmp_path: Path):
    r = Reporter()
    r.record(run="seed=5", method="codegree", stage="absorbers", action="sampled", seed=5, meta={"size": 1})
    dicts = r.to_dicts()
    assert dicts and dicts[0]["method"] == "codegree"
    out = r.write_csv(tmp_path / "ev.csv")
    assert out.exists()
    r.clear()
    assert r.count() == 0


def test_reporter_write_json(tmp_path: Path):
    r = Reporter()
    r.record(run="seed=1", method="nibble", stage="nibble", action="matched", seed=1, meta={"size": 3})
    out = r.write_json(tmp_path / "nested" / "telemetry.json")
    data = json.loads(out.read_text())
    assert data["events"][0]["meta"] == {"size": 3}
    assert data["stages"] == [{"method": "nibble", "stage": "nibble", "action": "matched", "count": 1}]
    assert not list(out.parent.glob("*.tmp"))


def test_get_reporter_is_singleton():
    r1 = get_reporter()
    r2 = get_reporter()
    assert r1 is r2


def test_bound_recorder_fills_run_and_seed():
    r = Reporter()
    record = r.bind("iterative", 7)
    event = record("vortex", "built", sizes=[19, 10, 5])
    assert event is not None
    assert (event.run, event.method, event.seed) == ("seed=7", "iterative", 7)
    assert r.snapshot()[0].meta == {"sizes": [19, 10, 5]}


def test_recorder_without_reporter_is_a_no_op():
    assert stage_recorder(None, "algebraic", 1)("template", "built", a=3) is None


def test_stage_counts():
    r = Reporter()
    record = r.bind("codegree", 2)
    record("absorbers", "sampled")
    record("absorbers", "sampled")
    record("absorb", "absorbed")
    assert stage_counts(r.snapshot()) == {
        ("codegree", "absorbers", "sampled"): 2,
        ("codegree", "absorb", "absorbed"): 1,
    }
