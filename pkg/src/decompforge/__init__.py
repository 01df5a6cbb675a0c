from decompforge.config import load_config
from decompforge.logger import setup_logging
from decompforge.main import run
from decompforge.orchestrator import run_experiment

__all__ = ["run", "run_experiment", "load_config", "setup_logging"]
