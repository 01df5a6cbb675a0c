import logging
import time
from collections import Counter
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from decompforge.algebraic import triangle_decompose_algebraic
from decompforge.barriers import exact_max_matching
from decompforge.codegree import perfect_matching_codegree
from decompforge.config import Config, as_fraction
from decompforge.core.codec import decomposition_to_dict, digest, dump_json, matching_to_dict
from decompforge.core.degrees import min_codegree
from decompforge.core.errors import Failure, InvalidInputError, InvalidInstanceError, TooLargeError
from decompforge.core.hypergraph import Hypergraph
from decompforge.core.verify import DecompositionReport, MatchingReport
from decompforge.harness.certificates import reload_and_verify, write_certificate
from decompforge.harness.experiment import ExperimentConfig, Outcome, RunReport
from decompforge.harness.generators import make_tridivisible
from decompforge.harness.oracle import exact_triangle_decomposition
from decompforge.iterative import triangle_decompose_iterative
from decompforge.nibble import rodl_nibble
from decompforge.relaxations import Infeasible, fractional_pm, fractional_triangle_decomposition
from decompforge.reporter import Reporter, get_reporter

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CellResult:
    """What a solver produced for one seed, before anything is written to disk."""

    outcome: Outcome
    payload: dict[str, Any] | None = None
    stage: str | None = None
    reason: str | None = None
    stats: dict[str, Any] = field(default_factory=dict)
    perfect: bool = True


Solver = Callable[[Hypergraph, int, ExperimentConfig, Config, Reporter], CellResult]


def _from_failure(failure: Failure) -> CellResult:
    return CellResult(outcome="failed", stage=failure.stage, reason=failure.reason, stats=dict(failure.diagnostics))


def _from_report(report: DecompositionReport | MatchingReport | Failure) -> CellResult:
    if isinstance(report, Failure):
        return _from_failure(report)
    if isinstance(report, DecompositionReport):
        return CellResult(outcome="success", payload=decomposition_to_dict(report.decomposition), stats=report.stats)
    return CellResult(outcome="success", payload=matching_to_dict(report.matching), stats=report.stats)


def codegree_density(H: Hypergraph) -> Fraction:
    """The largest ``c`` with ``min codegree >= (1/2 + c) n``."""
    return Fraction(min_codegree(H), H.n) - Fraction(1, 2)


def _solve_nibble(H: Hypergraph, seed: int, cfg: ExperimentConfig, config: Config, reporter: Reporter) -> CellResult:
    result = rodl_nibble(H, config.nibble.model_copy(update={"seed": seed}))
    reporter.record(
        run=f"seed={seed}",
        method="nibble",
        stage="nibble",
        action="matched",
        seed=seed,
        meta={"size": result.matching.size, "leave": len(result.leave)},
    )
    return CellResult(
        outcome="success",
        payload=matching_to_dict(result.matching),
        stats={"leave": len(result.leave), "rounds": len(result.rounds), "greedy_edges": result.greedy_edges},
        perfect=False,
    )


def _solve_codegree(H: Hypergraph, seed: int, cfg: ExperimentConfig, config: Config, reporter: Reporter) -> CellResult:
    c = as_fraction(cfg.density) if cfg.density is not None else codegree_density(H)
    return _from_report(perfect_matching_codegree(H, c, seed, config.codegree, reporter))


def _solve_iterative(H: Hypergraph, seed: int, cfg: ExperimentConfig, config: Config, reporter: Reporter) -> CellResult:
    return _from_report(triangle_decompose_iterative(H, config.iterative, seed, reporter))


def _solve_algebraic(H: Hypergraph, seed: int, cfg: ExperimentConfig, config: Config, reporter: Reporter) -> CellResult:
    return _from_report(triangle_decompose_algebraic(H, config.algebraic, seed, reporter))


def _solve_exact(H: Hypergraph, seed: int, cfg: ExperimentConfig, config: Config, reporter: Reporter) -> CellResult:
    if H.r == 2:
        found = exact_triangle_decomposition(H, config.limits.triangle_oracle_vertices)
        if found is None:
            return CellResult(outcome="none", stage="exact", reason="no triangle decomposition exists")
        return CellResult(outcome="success", payload=decomposition_to_dict(found), stats={"triangles": len(found)})
    M = exact_max_matching(H, config.limits.max_matching_vertices)
    if M.size * H.r != H.n:
        return CellResult(outcome="none", stage="exact", reason="no perfect matching exists", stats={"max": M.size})
    return CellResult(outcome="success", payload=matching_to_dict(M), stats={"size": M.size})


def _solve_lp(H: Hypergraph, seed: int, cfg: ExperimentConfig, config: Config, reporter: Reporter) -> CellResult:
    result = fractional_triangle_decomposition(H) if H.r == 2 and cfg.lp == "triangles" else fractional_pm(H)
    if isinstance(result, Infeasible):
        return CellResult(outcome="infeasible", stage="lp", reason=result.reason)
    return CellResult(outcome="success", payload=result.to_dict(), stats={"support": len(result.support())})


SOLVERS: dict[str, Solver] = {
    "nibble": _solve_nibble,
    "codegree-pm": _solve_codegree,
    "iterative": _solve_iterative,
    "algebraic": _solve_algebraic,
    "exact": _solve_exact,
    "lp": _solve_lp,
}


def _run_cell(
    H: Hypergraph, instance_digest: str, seed: int, cfg: ExperimentConfig, config: Config, out_dir: Path
) -> RunReport:
    """Run one seed, write its certificate, read it back and verify it.

    Returns:
        RunReport of the cell; unexpected exceptions are logged and reported as failures.
    """
    reporter = get_reporter()
    task_id = f"{cfg.method}/seed={seed}"
    logger.info("[%s] Starting", task_id)
    reporter.record(run=f"seed={seed}", method=cfg.method, stage="cell", action="started", seed=seed)
    started = time.perf_counter()
    try:
        result = SOLVERS[cfg.method](H, seed, cfg, config, reporter)
    except (InvalidInstanceError, InvalidInputError, TooLargeError) as e:
        logger.warning("[%s] Rejected: %s", task_id, e)
        result = CellResult(outcome="invalid", stage="precondition", reason=str(e))
    except Exception as e:
        logger.exception("[%s] Failed with error: %s", task_id, e)
        result = CellResult(outcome="failed", stage="error", reason=f"{type(e).__name__}: {e}")
    elapsed = time.perf_counter() - started

    certificate: str | None = None
    if result.outcome == "success" and result.payload is not None:
        path = write_certificate(
            out_dir / f"{cfg.method}-seed{seed}.json",
            H,
            result.payload,
            method=cfg.method,
            seed=seed,
            perfect=result.perfect,
        )
        verification = reload_and_verify(path, H)
        if verification.accepted:
            certificate = str(path)
        else:
            logger.error("[%s] Certificate rejected on reload: %s", task_id, verification.summary())
            result = CellResult(outcome="failed", stage="verify", reason=verification.summary(), stats=result.stats)

    report = RunReport(
        instance_digest=instance_digest,
        method=cfg.method,
        seed=seed,
        outcome=result.outcome,
        stage=result.stage,
        reason=result.reason,
        certificate=certificate,
        wall_time=elapsed,
        stats=result.stats,
    )
    dump_json(out_dir / f"{cfg.method}-seed{seed}.report.json", report.to_dict())
    reporter.record(
        run=f"seed={seed}",
        method=cfg.method,
        stage=result.stage or "cell",
        action=result.outcome,
        seed=seed,
        meta={"wall_time": round(elapsed, 3)},
    )
    logger.info("[%s] Finished: %s in %.3fs", task_id, result.outcome, elapsed)
    return report


def prepare_instance(cfg: ExperimentConfig) -> Hypergraph:
    """Build the experiment's instance, making it tridivisible first when asked to.

    Raises:
        InvalidInputError: if the generator or file is unusable, or the edits exceed their budget.
    """
    H = cfg.instance.build()
    if cfg.instance.make_tridivisible:
        edited = make_tridivisible(H)
        if isinstance(edited, Failure):
            raise InvalidInputError(f"instance cannot be made tridivisible: {edited.reason}")
        logger.info("Made instance tridivisible with %d edit(s)", len(edited.edits))
        H = edited.graph
    return H


def run_experiment(cfg: ExperimentConfig, config: Config | None = None) -> list[RunReport]:
    """Run every seed of ``cfg`` in parallel and write certificates plus ``reports.json``.

    Cells share nothing but the instance; each writes its own files atomically.

    Returns:
        Run reports sorted by seed.
    """
    config = config or Config()
    H = prepare_instance(cfg)
    instance_digest = digest(H)
    out_dir = Path(cfg.output).expanduser()
    out_dir.mkdir(parents=True, exist_ok=True)

    max_workers = config.threads or min(32, len(cfg.seeds))
    logger.info(
        "Experiment: method=%s n=%d r=%d m=%d seeds=%d max_workers=%d",
        cfg.method,
        H.n,
        H.r,
        H.m,
        len(cfg.seeds),
        max_workers,
    )

    reports: list[RunReport] = []
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_map = {
            executor.submit(_run_cell, H, instance_digest, seed, cfg, config, out_dir): seed for seed in cfg.seeds
        }
        for future in as_completed(future_map):
            reports.append(future.result())

    reports.sort(key=lambda r: r.seed)
    dump_json(
        out_dir / "reports.json",
        {
            "experiment": cfg.model_dump(),
            "instance_digest": instance_digest,
            "reports": [r.to_dict() for r in reports],
        },
    )
    return reports


def summarize(reports: list[RunReport]) -> dict[str, Any]:
    counts = Counter(r.outcome for r in reports)
    return {
        "cells": len(reports),
        "succeeded": counts.get("success", 0),
        "failed": counts.get("failed", 0),
        "infeasible": counts.get("infeasible", 0),
        "none": counts.get("none", 0),
        "invalid": counts.get("invalid", 0),
        "reports": [r.to_dict() for r in reports],
        "events": get_reporter().to_dicts(),
    }
