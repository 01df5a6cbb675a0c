"""Tests for decompforge.main"""

from pathlib import Path

from decompforge.harness import ExperimentConfig, RunReport
from decompforge.main import run


def test_run_returns_summary(monkeypatch):
    """The programmatic API returns the orchestrator summary dict."""
    import decompforge.main as main_mod

    monkeypatch.setattr(main_mod, "setup_logging", lambda config, label=None: None)
    monkeypatch.setattr(
        main_mod,
        "run_experiment",
        lambda cfg, config: [
            RunReport(instance_digest="d", method=cfg.method, seed=s, outcome="success") for s in cfg.seeds
        ],
    )
    cfg = ExperimentConfig(method="exact", instance={"generator": "complete", "params": {"n": 7}}, seeds=[1, 2])
    summary = run(cfg)
    assert isinstance(summary, dict)
    assert summary["cells"] == 2
    assert summary["succeeded"] == 2
    assert summary["failed"] == 0


def test_run_reads_experiment_file(monkeypatch, tmp_path: Path):
    import decompforge.main as main_mod

    seen = {}
    monkeypatch.setattr(main_mod, "setup_logging", lambda config, label=None: None)
    monkeypatch.setattr(main_mod, "load_experiment", lambda path: seen.setdefault("path", path) and None)
    monkeypatch.setattr(main_mod, "run_experiment", lambda cfg, config: [])
    summary = run(tmp_path / "exp.yaml")
    assert seen["path"] == tmp_path / "exp.yaml"
    assert summary["cells"] == 0
