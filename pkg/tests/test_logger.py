"""Tests for decompforge.logger"""

import logging
from contextlib import contextmanager
from pathlib import Path

import pytest

from decompforge.config import Config
from decompforge.logger import NOISY_LOGGERS, resolve_target, setup_logging


@contextmanager
def isolated_root_logger():
    """Temporarily isolate the root logger.

    - Removes existing handlers so setup_logging configures fresh.
    - Restores previous handlers and level after the test.
    """
    root = logging.getLogger()
    old_level = root.level
    old_handlers = list(root.handlers)
    try:
        for h in list(root.handlers):
            root.removeHandler(h)
        yield root
    finally:
        for h in list(root.handlers):
            h.close()
            root.removeHandler(h)
        root.setLevel(old_level)
        for h in old_handlers:
            root.addHandler(h)


def _cfg(tmp_path: Path, level: str = "INFO", enabled: bool = True):
    class Cfg:
        logging = type("L", (), {"enabled": enabled, "level": level, "dir": str(tmp_path)})()

    return Cfg()


def test_setup_logging_no_console_output(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    with isolated_root_logger():
        setup_logging(_cfg(tmp_path, enabled=False))
        logger = logging.getLogger(__name__)
        logger.info("hello info")
        logger.warning("hello warning")

        out = capsys.readouterr()
        assert out.out == ""
        assert out.err == ""


def test_setup_logging_debug_level_writes_file(tmp_path: Path):
    with isolated_root_logger():
        path = setup_logging(_cfg(tmp_path, level="debug"))
        logging.getLogger(__name__).debug("[algebraic][seed=3] hello debug")

        files = list(tmp_path.glob("decomp-forge_*.log"))
        assert files, "expected a log file to be created"
        assert path == files[0]
        assert "DEBUG - [algebraic][seed=3] hello debug" in files[0].read_text()


def test_setup_logging_invalid_level_falls_back_to_info(tmp_path: Path):
    with isolated_root_logger():
        setup_logging(_cfg(tmp_path, level="not-a-level"))
        logger = logging.getLogger(__name__)
        logger.info("hello info")
        logger.debug("hello debug")

        content = next(tmp_path.glob("*.log")).read_text()
        assert "INFO - hello info" in content
        assert "DEBUG - hello debug" not in content


def test_setup_logging_disabled_creates_no_file(tmp_path: Path):
    with isolated_root_logger():
        assert setup_logging(_cfg(tmp_path, enabled=False)) is None
        logging.getLogger(__name__).info("hello info")
        assert not list(tmp_path.glob("*.log"))


def test_setup_logging_without_config_uses_info(tmp_path: Path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with isolated_root_logger() as root:
        setup_logging(None)
        assert root.level == logging.INFO
        assert list((tmp_path / "logs").glob("*.log"))


def test_setup_logging_quiets_third_party(tmp_path: Path):
    with isolated_root_logger():
        setup_logging(_cfg(tmp_path, level="DEBUG", enabled=False))
        for name in NOISY_LOGGERS:
            assert logging.getLogger(name).level == logging.WARNING


def test_setup_logging_label_in_file_name(tmp_path: Path):
    with isolated_root_logger():
        path = setup_logging(_cfg(tmp_path), label="experiment")
        assert path is not None
        assert path.name.startswith("decomp-forge_experiment_")


def test_resolve_target_reads_config_model(tmp_path: Path):
    target = resolve_target(Config({"logging": {"level": "WARNING", "dir": str(tmp_path), "enabled": False}}))
    assert target.level == logging.WARNING
    assert target.directory == tmp_path
    assert not target.enabled
