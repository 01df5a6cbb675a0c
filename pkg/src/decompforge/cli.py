# src/decompforge/cli.py
from __future__ import annotations

import inspect
import json
import threading
import time
from collections.abc import Iterator
from contextlib import contextmanager
from enum import StrEnum
from pathlib import Path
from typing import Any

import typer
from pyfiglet import Figlet
from rich.console import Console
from rich.live import Live
from rich.table import Table

from decompforge.algebraic import triangle_decompose_algebraic
from decompforge.barriers import (
    SpaceBarrierSpec,
    VertexPartition,
    detect_divisibility_barrier,
    divisibility_barrier,
    lattice_from_vectors,
    parity_barrier,
    search_divisibility_barrier,
    space_barrier,
)
from decompforge.codegree import perfect_matching_codegree
from decompforge.config import Config, as_fraction, load_config
from decompforge.core.codec import digest, dump_json, instance_to_dict, load_instance, load_json, matching_to_dict
from decompforge.core.errors import ConfigError, Failure, InvalidInputError, InvalidInstanceError, TooLargeError
from decompforge.core.hypergraph import Hypergraph
from decompforge.core.verify import verify_matching
from decompforge.harness import (
    GENERATORS,
    certificate_document,
    exact_triangle_decomposition,
    generate,
    load_experiment,
    make_tridivisible,
    verify_certificate,
)
from decompforge.iterative import triangle_decompose_iterative
from decompforge.logger import setup_logging
from decompforge.nibble import rodl_nibble
from decompforge.orchestrator import codegree_density, run_experiment
from decompforge.relaxations import Infeasible, fractional_pm, fractional_triangle_decomposition
from decompforge.reporter import get_reporter, stage_counts

TAIL_COUNT = 10  # number of most recent events to display
BANNER_TEXT = "decomp-forge"
CREDIT_LINE = "Author: HYP3R00T  GitHub: https://github.com/HYP3R00T  Site: https://hyperoot.dev"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


class OutputFormat(StrEnum):
    table = "table"
    json = "json"


class DecomposeMethod(StrEnum):
    exact = "exact"
    iterative = "iterative"
    algebraic = "algebraic"


class MatchMethod(StrEnum):
    nibble = "nibble"
    codegree = "codegree"


class BarrierKind(StrEnum):
    parity = "parity"
    space = "space"
    divisibility = "divisibility"


def _render_table(reporter, method: str) -> Table:
    """Render a Rich table of the most recent stage events.

    Adds a placeholder row while no events have been recorded yet so the
    interface never appears visually "empty".
    """
    all_events = reporter.snapshot()
    events = all_events[-TAIL_COUNT:]
    table = Table(title=f"decomp-forge — Live events ({method}, last {TAIL_COUNT})")
    table.add_column("Time", no_wrap=True, style="dim")
    table.add_column("Run", style="cyan")
    table.add_column("Method", style="magenta")
    table.add_column("Stage", style="green")
    table.add_column("Action", style="yellow")
    table.add_column("Meta", overflow="fold")
    if not all_events:
        table.add_row("-", "-", "-", "-", "waiting", "No stage events yet")
        return table
    if len(all_events) > TAIL_COUNT:
        table.caption = f"Showing last {TAIL_COUNT} of {len(all_events)} events"

    for e in events:
        meta = ""
        try:
            meta = ", ".join(f"{k}={v}" for k, v in (e.meta or {}).items())
        except Exception:
            meta = str(e.meta)
        table.add_row(
            getattr(e, "timestamp", ""),
            getattr(e, "run", ""),
            getattr(e, "method", ""),
            getattr(e, "stage", ""),
            getattr(e, "action", ""),
            meta,
        )
    return table


def _render_summary_table(reporter, method: str) -> Table:
    """Render an aggregated summary of all recorded events.

    Groups by (method, stage, action) and counts occurrences.
    """
    events = reporter.snapshot()
    table = Table(title=f"decomp-forge — Summary ({method})")
    table.add_column("Method", style="magenta")
    table.add_column("Stage", style="green")
    table.add_column("Action", style="yellow")
    table.add_column("Count", justify="right")
    if not events:
        table.add_row("-", "-", "-", "0")
        return table
    for (meth, stage, act), n in sorted(stage_counts(events).items()):
        table.add_row(meth, stage, act, str(n))
    table.caption = f"Total events: {len(events)}"
    return table


def _render_reports_table(reports) -> Table:
    table = Table(title="decomp-forge — Runs")
    table.add_column("Seed", justify="right")
    table.add_column("Outcome", style="yellow")
    table.add_column("Stage", style="green")
    table.add_column("Time (s)", justify="right")
    table.add_column("Certificate", overflow="fold")
    for r in reports:
        style = "green" if r.succeeded else "red"
        table.add_row(
            str(r.seed),
            f"[{style}]{r.outcome}[/{style}]",
            r.stage or "-",
            f"{r.wall_time:.3f}",
            r.certificate or "-",
        )
    return table


def _render_document(title: str, doc: dict[str, Any]) -> Table:
    table = Table(title=f"decomp-forge — {title}")
    table.add_column("Key", style="cyan")
    table.add_column("Value", overflow="fold")
    for key, value in doc.items():
        if isinstance(value, list) and len(value) > TAIL_COUNT:
            value = f"{len(value)} items"
        elif isinstance(value, dict):
            value = ", ".join(f"{k}={v}" for k, v in value.items())
        table.add_row(str(key), str(value))
    return table


def _print_banner(console: Console) -> None:
    try:
        fig_rendered = Figlet(font="slant").renderText(BANNER_TEXT)
    except Exception:
        fig_rendered = None
    if fig_rendered:
        console.print(f"[bold cyan]{fig_rendered}[/bold cyan]")
    else:
        console.print(f"[bold]{BANNER_TEXT}[/bold]")
    console.print(f"{CREDIT_LINE}\n")


def _clear(console: Console) -> None:
    try:
        console.clear()
    except Exception:
        print("\033c", end="")


def _settings(settings_file: Path | None, label: str | None = None) -> Config:
    if settings_file is not None and settings_file.suffix.lower() not in {".yaml", ".yml", ".toml", ".json"}:
        raise typer.BadParameter("Settings file must be one of: .yaml, .yml, .toml, .json")
    config = load_config(config_file=settings_file)
    setup_logging(config, label)
    return config


def _export_events(config: Any, console: Console) -> None:
    reporter = get_reporter()
    reporting_cfg = getattr(config, "reporting", None)
    try:
        csv_cfg = getattr(reporting_cfg, "csv", None) if reporting_cfg else None
        if csv_cfg and getattr(csv_cfg, "enabled", False):
            saved = reporter.write_csv(getattr(csv_cfg, "path", "./events.csv"))
            console.print(f"[green]Events exported to CSV:[/green] {saved}")
    except Exception as exc:
        console.print(f"[red]Failed to write CSV report: {exc}[/red]")
    try:
        json_cfg = getattr(reporting_cfg, "json_", None) if reporting_cfg else None
        if json_cfg and getattr(json_cfg, "enabled", False):
            saved = reporter.write_json(getattr(json_cfg, "path", "./telemetry.json"))
            console.print(f"[green]Telemetry exported to JSON:[/green] {saved}")
    except Exception as exc:
        console.print(f"[red]Failed to write JSON report: {exc}[/red]")


@contextmanager
def _guard(console: Console) -> Iterator[None]:
    """Map contract violations onto exit code 2."""
    try:
        yield
    except (InvalidInstanceError, InvalidInputError, TooLargeError, ConfigError) as exc:
        console.print(f"[red]{type(exc).__name__}:[/red] {exc}")
        raise typer.Exit(code=EXIT_INVALID) from exc


def _emit(console: Console, title: str, doc: dict[str, Any], out: Path | None, fmt: OutputFormat) -> None:
    if out is not None:
        saved = dump_json(out, doc)
        console.print(f"[green]Written:[/green] {saved}")
    if fmt is OutputFormat.json:
        console.print_json(json.dumps(doc, default=str))
    else:
        console.print(_render_document(title, doc))


def _parse_params(items: list[str]) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise typer.BadParameter(f"expected key=value, got {item!r}")
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


def _parse_groups(text: str) -> list[list[int]]:
    """``"0,1,2;3,4"`` -> ``[[0, 1, 2], [3, 4]]``."""
    try:
        return [[int(x) for x in group.split(",") if x.strip()] for group in text.split(";")]
    except ValueError as exc:
        raise typer.BadParameter(f"expected groups like '0,1,2;3,4', got {text!r}") from exc


def _finish(failed: bool) -> None:
    if failed:
        raise typer.Exit(code=EXIT_FAILED)


app = typer.Typer(help="decomp-forge – perfect matchings in hypergraphs and triangle decompositions of graphs.")
lp_app = typer.Typer(help="Solve a fractional relaxation exactly.")
barriers_app = typer.Typer(help="Build or detect space and divisibility barriers.")
app.add_typer(lp_app, name="lp")
app.add_typer(barriers_app, name="barriers")

SeedOption = typer.Option(0, "--seed", help="Master seed; every random choice derives from it.")
OutOption = typer.Option(None, "--out", help="Write the JSON document to this path.")
FormatOption = typer.Option(OutputFormat.table, "--format", help="Render as a table or print JSON.")
SettingsOption = typer.Option(None, "--settings", help="decomp-forge settings file (.yaml, .yml, .toml, .json).")


@app.command("generate")
def generate_cmd(
    name: str = typer.Argument(..., help=f"Generator: {', '.join(sorted(GENERATORS))}."),
    param: list[str] = typer.Option([], "--param", "-p", help="Generator parameter as key=value (repeatable)."),
    tridivisible: bool = typer.Option(False, "--tridivisible", help="Edit the graph until it is tridivisible."),
    seed: int = SeedOption,
    out: Path | None = OutOption,
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Generate an instance and write it as JSON."""
    console = Console()
    _settings(settings)
    with _guard(console):
        params = _parse_params(param)
        fn = GENERATORS.get(name)
        if fn is not None and "seed" in inspect.signature(fn).parameters:
            params.setdefault("seed", seed)
        H = generate(name, **params)
        edits = None
        if tridivisible:
            edited = make_tridivisible(H)
            if isinstance(edited, Failure):
                console.print(f"[red]{edited.stage}:[/red] {edited.reason}")
                raise typer.Exit(code=EXIT_FAILED)
            H, edits = edited.graph, edited.edits
        doc = instance_to_dict(H)
        if out is not None:
            dump_json(out, doc)
            console.print(f"[green]Written:[/green] {out}")
        summary: dict[str, Any] = {"n": H.n, "r": H.r, "edges": H.m, "digest": digest(H)}
        if edits is not None:
            summary["edits"] = len(edits)
        if fmt is OutputFormat.json:
            console.print_json(json.dumps(doc if out is None else summary))
        else:
            console.print(_render_document(f"generate {name}", summary))


def _decompose(H: Hypergraph, method: DecomposeMethod, seed: int, config: Config) -> dict[str, Any] | Failure | None:
    reporter = get_reporter()
    if method is DecomposeMethod.exact:
        found = exact_triangle_decomposition(H, config.limits.triangle_oracle_vertices)
        if found is None:
            return None
        return certificate_document(H, {"triangles": [list(t) for t in found.sorted_triangles()]}, method="exact")
    if method is DecomposeMethod.iterative:
        report = triangle_decompose_iterative(H, config.iterative, seed, reporter)
    else:
        report = triangle_decompose_algebraic(H, config.algebraic, seed, reporter)
    if isinstance(report, Failure):
        return report
    return certificate_document(H, report.to_dict())


@app.command("decompose")
def decompose_cmd(
    instance: Path = typer.Argument(..., help="JSON graph instance."),
    method: DecomposeMethod = typer.Option(DecomposeMethod.algebraic, "--method", help="Decomposition pipeline."),
    seed: int = SeedOption,
    out: Path | None = OutOption,
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Find a triangle decomposition of a graph."""
    console = Console()
    config = _settings(settings)
    with _guard(console):
        H = load_instance(instance)
        result = _decompose(H, method, seed, config)
    if result is None:
        console.print("[yellow]NONE:[/yellow] the graph has no triangle decomposition")
        _finish(True)
    elif isinstance(result, Failure):
        _emit(console, f"decompose ({method}) FAILED", result.to_dict(), out, fmt)
        _finish(True)
    else:
        _emit(console, f"decompose ({method})", result, out, fmt)


@app.command("match")
def match_cmd(
    instance: Path = typer.Argument(..., help="JSON hypergraph instance."),
    method: MatchMethod = typer.Option(MatchMethod.nibble, "--method", help="Matching process."),
    density: float | None = typer.Option(None, "--density", help="Codegree density c; derived when omitted."),
    seed: int = SeedOption,
    out: Path | None = OutOption,
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Find a (near-)perfect matching of a hypergraph."""
    console = Console()
    config = _settings(settings)
    with _guard(console):
        H = load_instance(instance)
        if method is MatchMethod.nibble:
            result = rodl_nibble(H, config.nibble.model_copy(update={"seed": seed}))
            verification = verify_matching(H, result.matching)
            doc = certificate_document(
                H,
                matching_to_dict(result.matching),
                method="nibble",
                seed=seed,
                perfect=False,
                leave=sorted(result.leave),
                rounds=[r.to_dict() for r in result.rounds],
                verification=verification.to_dict(),
            )
            _emit(console, "match (nibble)", doc, out, fmt)
            return
        c = as_fraction(density) if density is not None else codegree_density(H)
        report = perfect_matching_codegree(H, c, seed, config.codegree, get_reporter())
    if isinstance(report, Failure):
        _emit(console, "match (codegree) FAILED", report.to_dict(), out, fmt)
        _finish(True)
    else:
        _emit(console, "match (codegree)", certificate_document(H, report.to_dict()), out, fmt)


def _lp(instance: Path, kind: str, out: Path | None, fmt: OutputFormat, settings: Path | None) -> None:
    console = Console()
    _settings(settings)
    with _guard(console):
        H = load_instance(instance)
        result = fractional_pm(H) if kind == "pm" else fractional_triangle_decomposition(H)
    if isinstance(result, Infeasible):
        _emit(console, f"lp {kind} INFEASIBLE", result.to_dict(), out, fmt)
        _finish(True)
    else:
        _emit(console, f"lp {kind}", certificate_document(H, result.to_dict()), out, fmt)


@lp_app.command("pm")
def lp_pm_cmd(
    instance: Path = typer.Argument(..., help="JSON hypergraph instance."),
    out: Path | None = OutOption,
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Fractional perfect matching, or a certificate that none exists."""
    _lp(instance, "pm", out, fmt, settings)


@lp_app.command("triangles")
def lp_triangles_cmd(
    instance: Path = typer.Argument(..., help="JSON graph instance."),
    out: Path | None = OutOption,
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Fractional triangle decomposition, or a certificate that none exists."""
    _lp(instance, "triangles", out, fmt, settings)


@barriers_app.command("build")
def barriers_build_cmd(
    kind: BarrierKind = typer.Argument(..., help="Barrier construction."),
    n: int = typer.Option(..., "--n", help="Number of vertices."),
    r: int = typer.Option(3, "--r", help="Uniformity."),
    odd_part: int | None = typer.Option(None, "--odd-part", help="Parity: size of the odd part."),
    i: int = typer.Option(1, "--i", help="Space: edges must meet S in at least i vertices."),
    s: str = typer.Option("", "--s", help="Space: the set S, e.g. '0,1,2'."),
    parts: str = typer.Option("", "--parts", help="Divisibility: partition, e.g. '0,1,2;3,4,5'."),
    lattice: str = typer.Option("", "--lattice", help="Divisibility: lattice generators, e.g. '2,0;0,1'."),
    out: Path | None = OutOption,
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Build a barrier instance (an r-graph without a perfect matching)."""
    console = Console()
    _settings(settings)
    with _guard(console):
        if kind is BarrierKind.parity:
            H, _, _ = parity_barrier(n, r, odd_part)
        elif kind is BarrierKind.space:
            S = frozenset(v for group in _parse_groups(s) for v in group)
            H = space_barrier(SpaceBarrierSpec(n=n, r=r, i=i, S=S))
        else:
            P = VertexPartition.of(_parse_groups(parts))
            H = divisibility_barrier(P, lattice_from_vectors(_parse_groups(lattice), P.d), r)
        if H.n != n:
            raise InvalidInputError(f"construction has {H.n} vertices, expected {n}")
        _emit(console, f"barrier ({kind})", instance_to_dict(H), out, fmt)


@barriers_app.command("detect")
def barriers_detect_cmd(
    instance: Path = typer.Argument(..., help="JSON hypergraph instance."),
    parts: str = typer.Option("", "--parts", help="Partition to test, e.g. '0,1,2;3,4,5'."),
    search: int | None = typer.Option(None, "--search", help="Search every partition into this many parts."),
    out: Path | None = OutOption,
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Test a partition (or search all partitions) for a divisibility barrier."""
    console = Console()
    config = _settings(settings)
    with _guard(console):
        H = load_instance(instance)
        if search is not None:
            verdict = search_divisibility_barrier(
                H, search, config.limits.partition_search_vertices, config.limits.partition_search_parts
            )
        elif parts:
            verdict = detect_divisibility_barrier(H, VertexPartition.of(_parse_groups(parts)))
        else:
            raise typer.BadParameter("give --parts or --search")
    if verdict is None:
        _emit(console, "barriers detect", {"verdict": "NO-OBSTRUCTION", "searched_parts": search}, out, fmt)
        return
    _emit(console, "barriers detect", verdict.to_dict(), out, fmt)


@app.command("verify")
def verify_cmd(
    instance: Path = typer.Argument(..., help="JSON instance the certificate claims to solve."),
    certificate: Path = typer.Argument(..., help="Certificate file (triangles, matching or weights)."),
    fmt: OutputFormat = FormatOption,
    settings: Path | None = SettingsOption,
) -> None:
    """Re-check a certificate against its instance."""
    console = Console()
    _settings(settings)
    with _guard(console):
        report = verify_certificate(load_instance(instance), load_json(certificate))
    _emit(console, "verify", report.to_dict(), None, fmt)
    _finish(not report.accepted)


def run_cli(experiment_file: Path, settings_file: Path | None = None) -> list:
    """Run an experiment with a live updating event tail and final summary."""
    console = Console()
    config = _settings(settings_file, "experiment")
    with _guard(console):
        cfg = load_experiment(experiment_file)

    _clear(console)
    _print_banner(console)

    reporter = get_reporter()

    # Experiment runs in separate thread so Live table can update on main thread
    reports: list = []
    orchestrator_exc: list[Exception] = []

    def _run_orchestrator():
        try:
            reports.extend(run_experiment(cfg, config))
        except Exception as exc:
            orchestrator_exc.append(exc)

    orb_thread = threading.Thread(target=_run_orchestrator, daemon=True)
    orb_thread.start()

    try:
        with Live(_render_table(reporter, cfg.method), refresh_per_second=4, console=console) as live:
            while orb_thread.is_alive():
                live.update(_render_table(reporter, cfg.method))
                time.sleep(0.25)
            live.update(_render_table(reporter, cfg.method))
    except KeyboardInterrupt:
        console.print("\nInterrupted by user. Waiting for running seeds to stop...")
    finally:
        orb_thread.join(timeout=5)
        if orchestrator_exc:
            exc = orchestrator_exc[0]
            if isinstance(exc, (InvalidInstanceError, InvalidInputError, TooLargeError, ConfigError)):
                console.print(f"[red]{type(exc).__name__}:[/red] {exc}")
                raise typer.Exit(code=EXIT_INVALID) from exc
            raise exc
        # final summary: clear screen, show banner again, then summary only
        _clear(console)
        _print_banner(console)
        console.print(_render_summary_table(reporter, cfg.method))
        console.print(_render_reports_table(reports))
        _export_events(config, console)
    return reports


@app.command("experiment")
def experiment_cmd(
    config: Path = typer.Option(..., "--config", help="Experiment file (.yaml, .yml, .toml, .json)."),
    settings: Path | None = SettingsOption,
) -> None:
    """Run a pipeline over a list of seeds, writing verified certificates and reports."""
    if config.suffix.lower() not in {".yaml", ".yml", ".toml", ".json"}:
        raise typer.BadParameter("Experiment file must be one of: .yaml, .yml, .toml, .json")
    reports = run_cli(config, settings)
    if any(r.outcome == "invalid" for r in reports):
        raise typer.Exit(code=EXIT_INVALID)
    _finish(not all(r.succeeded for r in reports))


if __name__ == "__main__":
    app()
