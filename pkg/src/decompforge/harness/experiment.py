"""Experiment files and per-cell run reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from utilityhub_config import load_settings

from decompforge.core.codec import load_instance
from decompforge.core.errors import ConfigError
from decompforge.core.hypergraph import Hypergraph
from decompforge.harness.generators import generate

Method = Literal["nibble", "codegree-pm", "iterative", "algebraic", "exact", "lp"]
Outcome = Literal["success", "failed", "infeasible", "none", "invalid"]


class InstanceSpec(BaseModel):
    """Where the instance of an experiment comes from: a generator or a JSON file."""

    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    generator: str | None = Field(default=None, description="Generator name, e.g. 'dense' or 'codegree'.")
    params: dict[str, Any] = Field(default_factory=dict, description="Keyword parameters of the generator.")
    path: str | None = Field(default=None, description="JSON instance file, instead of a generator.")
    make_tridivisible: bool = Field(
        default=False,
        description="Edit a generated graph until it is tridivisible before running the pipeline.",
    )

    @model_validator(mode="after")
    def one_source(self) -> InstanceSpec:
        if (self.generator is None) == (self.path is None):
            raise ValueError("give exactly one of 'generator' and 'path'")
        return self

    def build(self) -> Hypergraph:
        if self.path is not None:
            return load_instance(self.path)
        assert self.generator is not None
        return generate(self.generator, **self.params)


class ExperimentConfig(BaseModel):
    """One pipeline run over a list of seeds on a single instance."""

    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    method: Method = Field(description="Pipeline to run on every seed.")
    instance: InstanceSpec = Field(description="Instance source.")
    seeds: list[int] = Field(min_length=1, description="Master seeds, one cell each.")
    output: str = Field(default="decomp-forge-runs", description="Directory for certificates and reports.")
    density: float | None = Field(
        default=None,
        description="Codegree density c for 'codegree-pm'; derived from the instance when unset.",
    )
    lp: Literal["pm", "triangles"] = Field(default="triangles", description="Relaxation solved by method 'lp'.")


def load_experiment(path: str | Path) -> ExperimentConfig:
    """Read an experiment file (YAML, TOML or JSON).

    Raises:
        ConfigError: if the file is missing or does not describe a valid experiment.
    """
    p = Path(path).expanduser()
    if not p.is_file():
        raise ConfigError(f"experiment file not found: {p}")
    try:
        cfg, _ = load_settings(
            ExperimentConfig,
            app_name="decomp-forge-experiment",
            env_prefix="DECOMP_FORGE_EXPERIMENT_",
            config_file=p,
        )
    except ValidationError as exc:
        raise ConfigError(f"invalid experiment {p}: {exc}") from exc
    except Exception as exc:
        raise ConfigError(f"could not read experiment {p}: {exc}") from exc
    return cfg


def experiment_from_dict(data: dict[str, Any]) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid experiment: {exc}") from exc


@dataclass(frozen=True, slots=True)
class RunReport:
    """Outcome of one (instance, seed) cell.

    ``outcome == "success"`` is only ever set after the certificate at ``certificate`` was
    read back from disk and accepted by a verifier.
    """

    instance_digest: str
    method: str
    seed: int
    outcome: Outcome
    stage: str | None = None
    reason: str | None = None
    certificate: str | None = None
    wall_time: float = 0.0
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def succeeded(self) -> bool:
        return self.outcome == "success"

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance_digest": self.instance_digest,
            "method": self.method,
            "seed": self.seed,
            "outcome": self.outcome,
            "stage": self.stage,
            "reason": self.reason,
            "certificate": self.certificate,
            "wall_time": round(self.wall_time, 6),
            "stats": dict(self.stats),
        }
