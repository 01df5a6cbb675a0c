"""File-only logging for pipeline runs.

The terminal belongs to the CLI's Rich output, so no console handler is ever
installed. Pipelines log through module loggers with a ``[method][seed=..]`` prefix.
"""

import logging
from contextlib import suppress
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Any

# Libraries whose INFO chatter would drown the per-stage pipeline lines.
NOISY_LOGGERS = ("numpy", "networkx", "matplotlib", "PIL")

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
DEFAULT_DIR = Path("./logs")


@dataclass(frozen=True, slots=True)
class LogTarget:
    level: int
    directory: Path
    enabled: bool

    def file_name(self, label: str | None = None) -> str:
        ts = datetime.now().strftime("%Y%m%d_%H%M%S")
        return f"decomp-forge_{label}_{ts}.log" if label else f"decomp-forge_{ts}.log"


def resolve_target(config: Any | None) -> LogTarget:
    """Read ``logging.level``, ``logging.dir`` and ``logging.enabled`` from a settings object.

    Accepts a :class:`~decompforge.config.Config`, anything shaped like it, or None.
    Unknown levels fall back to INFO; a missing section means INFO into ``./logs``.
    """
    section = getattr(config, "logging", None)
    if section is None:
        return LogTarget(level=logging.INFO, directory=DEFAULT_DIR, enabled=True)
    level_name = str(getattr(section, "level", "") or "INFO").upper()
    level = logging.getLevelNamesMapping().get(level_name, logging.INFO)
    directory = Path(str(getattr(section, "dir", DEFAULT_DIR))).expanduser()
    return LogTarget(level=level, directory=directory, enabled=bool(getattr(section, "enabled", True)))


def _file_handler(target: LogTarget, label: str | None) -> tuple[logging.Handler, Path] | None:
    try:
        target.directory.mkdir(parents=True, exist_ok=True)
        path = target.directory / target.file_name(label)
        handler = logging.FileHandler(path, encoding="utf-8")
    except OSError:
        return None
    handler.setLevel(target.level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    return handler, path


def setup_logging(config: Any | None = None, label: str | None = None) -> Path | None:
    """Route the root logger to a per-execution file and nowhere else.

    Args:
        config: Settings carrying a ``logging`` section; see :func:`resolve_target`.
        label: Optional command name placed in the file name, e.g. ``experiment``.

    Returns:
        Path of the log file, or None when file logging is off or the directory is unwritable.
    """
    target = resolve_target(config)
    root = logging.getLogger()
    for h in list(root.handlers):
        root.removeHandler(h)
    root.setLevel(target.level)

    log_path: Path | None = None
    if target.enabled:
        made = _file_handler(target, label)
        if made is not None:
            handler, log_path = made
            root.addHandler(handler)

    for name in NOISY_LOGGERS:
        with suppress(Exception):
            logging.getLogger(name).setLevel(logging.WARNING)
    return log_path
