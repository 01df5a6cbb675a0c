"""Configuration loader using utilityhub_config."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from utilityhub_config import load_settings


class LoggingSettings(BaseModel):
    """Logging configuration.

    Controls file-based logging for decomp-forge runs.
    """

    model_config = ConfigDict(
        validate_default=True,
        validate_assignment=True,
        extra="forbid",
        str_strip_whitespace=True,
    )

    enabled: bool = Field(
        default=True,
        description="Enable file-based logging. When true, logs are written to the specified directory.",
    )
    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO",
        description="Logging level ('DEBUG' logs every flip and exchange move, 'INFO' one line per stage).",
    )
    dir: str = Field(
        default_factory=lambda: str(Path.home() / ".local/share/decomp-forge/logs"),
        description="Directory path for log files (e.g., '~/.local/share/decomp-forge/logs').",
    )


class CSVReportingSettings(BaseModel):
    """CSV export of stage events."""

    model_config = ConfigDict(
        validate_default=True,
        validate_assignment=True,
        extra="forbid",
        str_strip_whitespace=True,
    )

    enabled: bool = Field(default=True, description="Write stage events to a CSV file after each command.")
    path: str = Field(
        default_factory=lambda: str(Path.home() / ".local/share/decomp-forge/reports/events.csv"),
        description="File path for the CSV event log.",
    )


class JSONReportingSettings(BaseModel):
    """JSON export of stage telemetry."""

    model_config = ConfigDict(
        validate_default=True,
        validate_assignment=True,
        extra="forbid",
        str_strip_whitespace=True,
    )

    enabled: bool = Field(default=False, description="Write stage telemetry as a JSON document after each command.")
    path: str = Field(
        default_factory=lambda: str(Path.home() / ".local/share/decomp-forge/reports/telemetry.json"),
        description="File path for the JSON telemetry document.",
    )


class ReportingSettings(BaseModel):
    """Reporting configuration.

    The JSON section is spelled ``json`` in files and overrides.
    """

    model_config = ConfigDict(
        validate_default=True,
        validate_assignment=True,
        extra="forbid",
        populate_by_name=True,
    )

    csv: CSVReportingSettings = Field(default_factory=CSVReportingSettings, description="CSV event export.")
    json_: JSONReportingSettings = Field(
        default_factory=JSONReportingSettings,
        alias="json",
        description="JSON telemetry export.",
    )


class ExactLimits(BaseModel):
    """Size bounds of the exhaustive routines; larger instances raise ``TooLargeError``."""

    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    max_matching_vertices: int = Field(default=15, ge=1, description="Vertex bound of exact_max_matching.")
    triangle_oracle_vertices: int = Field(default=20, ge=1, description="Vertex bound of exact_triangle_decomposition.")
    partition_search_vertices: int = Field(default=12, ge=1, description="Vertex bound of the barrier partition search.")
    partition_search_parts: int = Field(default=3, ge=1, description="Part bound of the barrier partition search.")


class NibbleParams(BaseModel):
    """Schedule of the nibble process."""

    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    bite: float = Field(default=0.1, gt=0, lt=1, description="Expected fraction of vertices matched per round.")
    stop_threshold: float = Field(
        default=0.0,
        ge=0,
        lt=1,
        description="Switch to the greedy finish once at most this fraction of vertices is still active.",
    )
    seed: int = Field(default=0, description="Master seed of the process.")
    max_rounds: int = Field(default=200, ge=0, description="Upper bound on random rounds before the greedy finish.")


class CodegreeSettings(BaseModel):
    """Absorbing pipeline for 3-graphs of large minimum codegree."""

    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    retries: int = Field(default=50, ge=1, description="Absorber sampling attempts before giving up.")
    certify_samples: int = Field(default=10_000, ge=1, description="Random triples checked above the exhaustive bound.")
    exhaustive_vertices: int = Field(default=60, ge=3, description="Certify every triple up to this many vertices.")
    rate_floor: bool = Field(
        default=True,
        description="Floor the sampling probability so the expected sample holds at least floor_edges edges.",
    )
    floor_edges: int = Field(default=2, ge=0, description="Expected sample size guaranteed by rate_floor.")
    scope: Literal["all", "outside"] = Field(
        default="outside",
        description="Certify every triple ('all') or only triples avoiding the absorber's vertices ('outside').",
    )


class RelaxationSettings(BaseModel):
    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    bounded_iterations: int = Field(default=2_000, ge=0, description="Octahedron moves tried when reducing weights.")
    exact_budget: int = Field(default=50_000, ge=0, description="Node budget of the 0/1 decomposition attempt.")


class CoverDownParams(BaseModel):
    """Constants of one cover-down step."""

    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    p: float = Field(default=0.1, gt=0, lt=1, description="Probability of reserving a cross edge.")
    theta: float = Field(default=0.3, gt=0, lt=1, description="Vortex shrink ratio.")
    c0: float = Field(default=0.001, gt=0, description="Smallest degree-slack constant.")
    c1: float = Field(default=0.01, gt=0, description="Middle degree-slack constant.")
    c2: float = Field(default=0.05, gt=0, description="Largest degree-slack constant.")
    boost_max_edges: int = Field(default=120, ge=0, description="Solve the boosting LP only up to this many edges.")
    min_matchings: int = Field(default=3, ge=1, description="Edge-disjoint matchings extracted per vertex, at least.")
    repair_budget: int = Field(
        default=50_000, ge=1, description="Node budget of the exchange that covers what the greedy passes left."
    )

    @model_validator(mode="after")
    def check_order(self) -> CoverDownParams:
        if not self.c0 < self.c1 < self.c2 < self.p:
            raise ValueError("constants must satisfy c0 < c1 < c2 < p")
        return self


class IterativeSettings(CoverDownParams):
    """Iterative absorption pipeline."""

    tau_cap: int = Field(default=16, ge=3, description="Stop shrinking the vortex at this many vertices.")
    retries: int = Field(default=25, ge=1, description="Attempts per pipeline run.")
    min_degree_fraction: float = Field(default=0.75, gt=0, le=1, description="Required minimum degree over n.")
    eager_absorber_vertices: int = Field(
        default=8,
        ge=0,
        description="Reserve absorbers for every leave up front when the last vortex level is at most this big.",
    )
    absorber_budget: int = Field(
        default=5_000, ge=1, description="Node budget of each exclusive absorber search on the last vortex level."
    )
    search_budget: int = Field(default=200_000, ge=1, description="Node budget of the exact route and the lazy absorption.")


class AlgebraicSettings(BaseModel):
    """Randomised algebraic construction."""

    model_config = ConfigDict(validate_default=True, validate_assignment=True, extra="forbid")

    retries: int = Field(default=25, ge=1, description="Fresh labelings tried before giving up.")
    cascade_budget: int = Field(default=500, ge=1, description="Candidate octahedra tried per positive triangle.")
    field_degree: Literal["compact", "wide"] = Field(
        default="compact",
        description="'compact' uses the least a with n <= 2^a - 1, 'wide' the a with 2^(a-2) < n <= 2^(a-1).",
    )
    bounded_weight: int | None = Field(default=None, ge=0, description="Optional per-vertex bound on spill weights.")
    search_budget: int = Field(
        default=200_000, ge=1, description="Node budget of the leave exchange and the hole search fallback."
    )
    direct_budget: int = Field(
        default=20_000, ge=1, description="Node budget of the 0/1 attempt before a signed decomposition is built."
    )
    bounded_iterations: int = Field(default=2_000, ge=0, description="Octahedron moves tried when reducing weights.")


class Config(BaseModel):
    """decomp-forge configuration model.

    Root configuration containing all settings for decomp-forge runs.
    Supports loading from YAML, TOML, JSON, environment variables, and programmatic overrides.
    """

    model_config = ConfigDict(
        validate_default=True,
        validate_assignment=True,
        extra="forbid",
    )

    threads: int | None = Field(
        default=None,
        ge=1,
        description="Maximum parallel experiment cells. Unset means min(32, number of cells).",
    )
    logging: LoggingSettings = Field(
        default_factory=LoggingSettings,
        description="Logging configuration for file-based output.",
    )
    reporting: ReportingSettings = Field(
        default_factory=ReportingSettings,
        description="Reporting configuration for CSV and JSON exports.",
    )
    limits: ExactLimits = Field(default_factory=ExactLimits, description="Bounds of the exhaustive oracles.")
    nibble: NibbleParams = Field(default_factory=NibbleParams, description="Nibble process schedule.")
    codegree: CodegreeSettings = Field(default_factory=CodegreeSettings, description="Codegree matching pipeline.")
    relaxations: RelaxationSettings = Field(default_factory=RelaxationSettings, description="LP and lattice solvers.")
    iterative: IterativeSettings = Field(default_factory=IterativeSettings, description="Iterative absorption.")
    algebraic: AlgebraicSettings = Field(default_factory=AlgebraicSettings, description="Algebraic construction.")

    @field_validator("threads", mode="before")
    @classmethod
    def empty_threads_is_unset(cls, v: Any) -> Any:
        if isinstance(v, str) and not v.strip():
            return None
        return v

    def __init__(self, data: dict[str, Any] | None = None, /, **kwargs: Any) -> None:
        """Initialize Config with dict or kwargs.

        Args:
            data: Optional dict to initialize from (first positional argument only).
            **kwargs: Keyword arguments for standard Pydantic initialization.
        """
        if data is not None:
            super().__init__(**data)
        else:
            super().__init__(**kwargs)


def as_fraction(value: float | int | str | Fraction) -> Fraction:
    """Exact value of a user-facing rational parameter (``0.55`` is read as ``11/20``)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value))


def load_config(
    overrides: dict[str, Any] | None = None,
    config_file: Path | None = None,
) -> Config:
    """Load configuration using utilityhub_config.

    Auto-discovers config files and merges: defaults → global → project → dotenv → env vars → overrides.
    ``DECOMP_FORGE_THREADS`` maps onto ``threads``.

    Args:
        overrides: Runtime overrides (highest precedence).
        config_file: Optional explicit config file path.

    Returns:
        Validated Config instance.
    """
    config, _ = load_settings(
        Config,
        app_name="decomp-forge",
        env_prefix="DECOMP_FORGE_",
        config_file=config_file,
        overrides=overrides,
    )
    return config
