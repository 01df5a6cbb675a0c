import logging
from pathlib import Path
from typing import Any

from decompforge.config import load_config
from decompforge.harness.experiment import ExperimentConfig, load_experiment
from decompforge.logger import setup_logging
from decompforge.orchestrator import run_experiment, summarize

logger = logging.getLogger(__name__)


def run(
    experiment: ExperimentConfig | str | Path,
    overrides: dict[str, Any] | None = None,
    config_file: Path | None = None,
) -> dict[str, Any]:
    """
    Programmatic API to run an experiment without printing to stdout.

    This function loads config, initializes logging, runs every seed of the
    experiment and returns a summary dict. All user-facing presentation (banner,
    live tables, summaries) is handled by the CLI or the caller.

    Args:
        experiment: An experiment model or the path of an experiment file.
        overrides: Runtime overrides of the decomp-forge settings.
        config_file: Optional explicit settings file.

    Returns:
        A summary dict with outcome counters, per-seed reports and recorded events.
    """
    config = load_config(overrides=overrides, config_file=config_file)
    setup_logging(config, label="experiment")

    cfg = experiment if isinstance(experiment, ExperimentConfig) else load_experiment(experiment)
    reports = run_experiment(cfg, config)
    summary = summarize(reports)
    logger.info("Experiment finished: %d/%d cells succeeded", summary["succeeded"], summary["cells"])
    return summary


def main() -> None:
    # Minimal __main__ execution: run the experiment file in the working directory
    run(Path("experiment.yaml"))


if __name__ == "__main__":
    main()
