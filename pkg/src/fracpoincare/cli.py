"""
cli.py

PURPOSE: Command-line interface for the fracpoincare experiments.
DEPENDENCIES: typer, rich, pydantic

ARCHITECTURE NOTES:
The CLI provides commands for:
- verify-kernels: Check closed-form kernels against the oracles
- seminorm: Gagliardo seminorm of a box-union indicator
- counterexample: The vanishing quotient sequence (CSV or JSON)
- check: Sufficient and necessary conditions on a domain
- eigen / asymptotics: Galerkin eigenvalues and the cylinder experiment
- constants: Inspect or regenerate the reference-constant cache
- validate / gallery / config: Domain files, shipped fixtures, settings

Every computing command first builds a RunConfig through parse_and_validate,
so bad parameters exit with code 2 before any work starts. Results go to
--output atomically, or to stdout as JSON when no output path is given.
Logging goes to stderr so stdout stays machine-readable.
"""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Any

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.logging import RichHandler

from fracpoincare import __version__
from fracpoincare.conditions import (
    BallMode,
    ReferenceConstants,
    arc_directions,
    check_complement_density,
    check_ls,
    interval_union_lower_bound,
    necessary_upper_bound,
)
from fracpoincare.config import QuadratureSettings, Settings, get_settings
from fracpoincare.counterexample import quotient_sequence
from fracpoincare.eigensolver import (
    as_interval_union,
    asymptotics_experiment,
    eigenvalues_on_grid,
    poincare_constant,
)
from fracpoincare.errors import FracPoincareError, exit_code_for
from fracpoincare.gallery import gallery_document, list_gallery, load_gallery, suggested_window
from fracpoincare.geometry import load_domain, normalize
from fracpoincare.geometry.loader import read_domain_file
from fracpoincare.models import (
    BoxUnionDomain,
    Command,
    ConditionReport,
    IndicatorFunction,
    McConfig,
    RunConfig,
    parse_and_validate,
)
from fracpoincare.observability import init_telemetry, shutdown_telemetry
from fracpoincare.oracle import summarize, verify_kernels
from fracpoincare.reports import render_json, write_csv_atomic, write_json_atomic
from fracpoincare.seminorm import indicator_seminorm, loss_sloane_energy
from fracpoincare.ui import plain
from fracpoincare.validator import ValidationSeverity, validate_domain

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="fracpk",
    help="Fractional Poincaré constants, energies and eigenvalues on box domains.",
    add_completion=False,
)

console = Console()

QUOTIENT_COLUMNS = ("k", "k0", "seminorm", "area", "quotient", "step4_bound")
ASYMPTOTICS_COLUMNS = ("ell", "k", "lambda", "p2_omega", "gap", "fitted_exponent")


@dataclass
class CliState:
    """Options shared by every command, set by the global callback."""

    settings: Settings
    config_file: Path | None = None


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        console.print(f"fracpk version {__version__}")
        raise typer.Exit()


def configure_logging(level: str) -> None:
    """Send log records to stderr through rich."""
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@app.callback()
def main(
    ctx: typer.Context,
    _version: Annotated[
        bool,
        typer.Option(
            "--version",
            "-v",
            help="Show version and exit.",
            callback=version_callback,
            is_eager=True,
        ),
    ] = False,
    threads: Annotated[
        int | None,
        typer.Option("--threads", help="Worker threads; never changes results (FRACPK_THREADS)"),
    ] = None,
    log_level: Annotated[
        str | None,
        typer.Option("--log-level", help="Logging level (DEBUG, INFO, WARNING, ...)"),
    ] = None,
    config_file: Annotated[
        Path | None,
        typer.Option("--config", help="TOML file with one table of parameters per command"),
    ] = None,
) -> None:
    """Fractional Poincaré constants, energies and eigenvalues on box domains."""
    try:
        settings = get_settings(threads=threads, log_level=log_level)
    except ValidationError as e:
        _print_validation_errors(e)
        raise typer.Exit(2) from None
    configure_logging(settings.log_level)
    init_telemetry(settings.otel)
    ctx.call_on_close(shutdown_telemetry)
    ctx.obj = CliState(settings=settings, config_file=config_file)


def _print_validation_errors(error: ValidationError) -> None:
    plain.print_error("Validation errors:")
    for detail in error.errors():
        loc = " -> ".join(str(x) for x in detail["loc"]) or "document"
        plain.print_error(f"  {loc} -> {detail['msg']}")


@contextmanager
def handled_errors() -> Iterator[None]:
    """Turn library errors into a message and the matching exit code."""
    try:
        yield
    except ValidationError as e:
        _print_validation_errors(e)
        raise typer.Exit(2) from None
    except FracPoincareError as e:
        plain.print_error(f"Error: {e}")
        raise typer.Exit(exit_code_for(e)) from None


def _state(ctx: typer.Context) -> CliState:
    if not isinstance(ctx.obj, CliState):
        ctx.obj = CliState(settings=get_settings())
    return ctx.obj


def _run_config(
    ctx: typer.Context,
    command: Command,
    flags: dict[str, Any],
    output: Path | None = None,
    seed: int | None = None,
    epsrel: float | None = None,
) -> RunConfig:
    state = _state(ctx)
    config = parse_and_validate(
        command,
        flags,
        config_file=state.config_file,
        output=output,
        seed=state.settings.seed if seed is None else seed,
        threads=state.settings.threads,
        epsrel=epsrel,
    )
    if logger.isEnabledFor(logging.DEBUG):
        plain.print_debug(
            {
                "command": config.command.value,
                "params": config.params.model_dump(mode="json"),
                "output": str(config.output) if config.output else None,
                "seed": config.seed,
                "threads": config.threads,
                "epsrel": config.epsrel,
            }
        )
    return config


def _quadrature(settings: Settings, config: RunConfig) -> QuadratureSettings:
    if config.epsrel is None:
        return settings.quadrature
    return settings.quadrature.model_copy(update={"epsrel": config.epsrel})


def _load(params: Any) -> BoxUnionDomain:
    if params.gallery is not None:
        return load_gallery(params.gallery)
    domain: BoxUnionDomain = load_domain(params.domain)
    return domain


def _emit_json(data: BaseModel | dict[str, Any], output: Path | None) -> None:
    """Write JSON to output atomically, or to stdout when no path is given."""
    if output is None:
        typer.echo(render_json(data), nl=False)
        return
    write_json_atomic(output, data)
    plain.print_success(f"Wrote {output}")


# Shared option types
SOption = Annotated[float | None, typer.Option("--s", help="Fractional order in (0, 1)")]
OutputOption = Annotated[
    Path | None, typer.Option("--output", "-o", help="Write the result here instead of stdout")
]
DomainOption = Annotated[Path | None, typer.Option("--domain", help="Domain JSON file")]
GalleryOption = Annotated[str | None, typer.Option("--gallery", help="Shipped gallery domain")]
EpsrelOption = Annotated[
    float | None, typer.Option("--epsrel", help="Relative quadrature tolerance override")
]


@app.command("verify-kernels")
def verify_kernels_cmd(
    ctx: typer.Context,
    s: SOption = None,
    cases: Annotated[int | None, typer.Option("--cases", help="Random parameter sets")] = None,
    samples: Annotated[
        int | None, typer.Option("--samples", help="Monte Carlo samples per estimate")
    ] = None,
    seed: Annotated[int | None, typer.Option("--seed", help="Seed of the case stream")] = None,
    output: OutputOption = None,
    epsrel: EpsrelOption = None,
) -> None:
    """Check every closed-form kernel against quadrature and Monte Carlo oracles."""
    with handled_errors():
        config = _run_config(
            ctx,
            Command.VERIFY_KERNELS,
            {"s": s, "cases": cases, "samples": samples},
            output=output,
            seed=seed,
            epsrel=epsrel,
        )
        settings = _state(ctx).settings
        params = config.params
        mc = McConfig(
            samples=params.samples or settings.montecarlo.samples,
            seed=config.seed,
            stratification=settings.montecarlo.stratification,
        )
        report = verify_kernels(
            params.s, params.cases, mc, _quadrature(settings, config), config.threads
        )
        summary = summarize(report)
        _emit_json({"report": report.model_dump(mode="json"), "summary": summary}, config.output)
        if config.output is not None:
            plain.print_table(
                f"Kernel checks at s = {report.s}",
                ("kernel", "checks", "passed", "worst rel. error"),
                [
                    (name, entry["checks"], entry["passed"], entry["worst_rel_error"])
                    for name, entry in summary.items()
                ],
            )
        if not report.all_passed:
            plain.print_warning(f"{len(report.failures)} checks outside tolerance")


@app.command()
def seminorm(
    ctx: typer.Context,
    domain: DomainOption = None,
    gallery: GalleryOption = None,
    s: SOption = None,
    angles: Annotated[
        int | None,
        typer.Option("--angles", help="Also compute the slice decomposition on this many angles"),
    ] = None,
    line_spacing: Annotated[
        float | None, typer.Option("--line-spacing", help="Offset spacing of slice lines")
    ] = None,
    output: OutputOption = None,
    epsrel: EpsrelOption = None,
) -> None:
    """Gagliardo seminorm of the indicator of a bounded box union (s < 1/2)."""
    with handled_errors():
        config = _run_config(
            ctx,
            Command.SEMINORM,
            {
                "domain": domain,
                "gallery": gallery,
                "s": s,
                "angles": angles,
                "line_spacing": line_spacing,
            },
            output=output,
            epsrel=epsrel,
        )
        params = config.params
        support = normalize(_load(params))
        f = IndicatorFunction(support=support)
        tol = _quadrature(_state(ctx).settings, config)
        breakdown = indicator_seminorm(f, params.s, tol, config.threads)
        payload: dict[str, Any] = {
            "domain": support.name,
            "s": params.s,
            "seminorm": breakdown.model_dump(mode="json"),
        }
        if params.angles is not None:
            sliced = loss_sloane_energy(
                f, params.s, params.angles, params.line_spacing, config.threads
            )
            payload["loss_sloane"] = sliced.model_dump(mode="json")
            payload["relative_difference"] = abs(sliced.value - breakdown.total) / breakdown.total
        _emit_json(payload, config.output)


@app.command()
def counterexample(
    ctx: typer.Context,
    s: SOption = None,
    beta: Annotated[float | None, typer.Option("--beta", help="Gap decay exponent")] = None,
    height_exponent: Annotated[
        float | None, typer.Option("--A", help="Height exponent, k0 = ceil(k^A)")
    ] = None,
    k: Annotated[str | None, typer.Option("--k", help="Comma-separated k values")] = None,
    diagnostics: Annotated[
        bool | None,
        typer.Option("--diagnostics/--no-diagnostics", help="Add the gap-energy split per k"),
    ] = None,
    output: Annotated[
        Path | None,
        typer.Option("--output", "--out", "-o", help="CSV (.csv) or JSON output file"),
    ] = None,
    epsrel: EpsrelOption = None,
) -> None:
    """Rayleigh quotients of the test functions on the strip-family domain."""
    with handled_errors():
        config = _run_config(
            ctx,
            Command.COUNTEREXAMPLE,
            {
                "s": s,
                "beta": beta,
                "A": height_exponent,
                "k": k,
                "diagnostics": diagnostics,
            },
            output=output,
            epsrel=epsrel,
        )
        params = config.params
        cex = params.cex()
        tol = None if config.epsrel is None else _quadrature(_state(ctx).settings, config)
        table = quotient_sequence(cex, tol, config.threads, params.diagnostics)

        rows = [[getattr(row, name) for name in QUOTIENT_COLUMNS] for row in table.rows]
        if config.output is not None and config.output.suffix.lower() == ".csv":
            write_csv_atomic(config.output, QUOTIENT_COLUMNS, rows)
            plain.print_table(f"Quotients at s = {cex.s}", QUOTIENT_COLUMNS, rows)
            plain.print_success(f"Wrote {config.output}")
            return
        payload = table.model_dump(mode="json")
        if len(table.rows) >= 2:
            c_fit, spread = table.fitted_constant()
            payload["log_slope"] = table.log_slope()
            payload["fitted_constant"] = {"C": c_fit, "spread": spread}
        _emit_json(payload, config.output)


@app.command()
def check(
    ctx: typer.Context,
    domain: DomainOption = None,
    gallery: GalleryOption = None,
    condition: Annotated[
        str | None,
        typer.Option("--condition", help="density, ls, interval or necessary"),
    ] = None,
    s: SOption = None,
    radius: Annotated[float | None, typer.Option("--R", help="Ball radius (density)")] = None,
    window: Annotated[
        str | None, typer.Option("--window", help="x0,x1,y0,y1 (defaults to the fixture window)")
    ] = None,
    grid: Annotated[int | None, typer.Option("--grid", help="Pixels per window axis")] = None,
    directions: Annotated[
        str | None, typer.Option("--directions", help="arc:<a>:<b>:<count> (ls)")
    ] = None,
    line_samples: Annotated[
        int | None, typer.Option("--line-samples", help="Parallel lines per direction (ls)")
    ] = None,
    mode: Annotated[
        str | None, typer.Option("--mode", help="plain or extended balls (necessary)")
    ] = None,
    resolution: Annotated[
        int | None, typer.Option("--resolution", help="Ball-center search grid (necessary)")
    ] = None,
    p1_unit: Annotated[
        float | None, typer.Option("--p1-unit", help="Override the cached p1_unit constant")
    ] = None,
    output: OutputOption = None,
) -> None:
    """Check a sufficient or necessary condition for the Poincaré inequality."""
    with handled_errors():
        config = _run_config(
            ctx,
            Command.CHECK,
            {
                "domain": domain,
                "gallery": gallery,
                "condition": condition,
                "s": s,
                "R": radius,
                "window": window,
                "grid": grid,
                "directions": directions,
                "line_samples": line_samples,
                "mode": mode,
                "resolution": resolution,
                "p1_unit": p1_unit,
            },
            output=output,
        )
        params = config.params
        target = _load(params)
        constants = ReferenceConstants(_state(ctx).settings)
        report = _run_check(target, params, constants, config.threads)
        if constants.dirty:
            constants.save()
        _emit_json(report, config.output)
        if config.output is not None:
            plain.print_verdict(report.condition, report.verdict, report.bound, report.bound_kind)


def _run_check(
    domain: BoxUnionDomain, params: Any, constants: ReferenceConstants, threads: int
) -> ConditionReport:
    if params.condition == "interval":
        return interval_union_lower_bound(
            as_interval_union(domain), params.s, params.p1_unit, constants
        )
    window = params.window or suggested_window(domain) or domain.bounding_box()
    if params.condition == "density":
        return check_complement_density(domain, params.R, window, params.s, params.grid)
    if params.condition == "ls":
        a, b, count = params.arc()
        dirs, weights = arc_directions(a, b, count)
        return check_ls(
            domain,
            dirs,
            weights,
            params.s,
            params.line_samples,
            window,
            params.p1_unit,
            constants,
            threads,
        )
    return necessary_upper_bound(
        domain, BallMode(params.mode), window, params.s, params.resolution, constants=constants
    )


@app.command()
def eigen(
    ctx: typer.Context,
    domain: DomainOption = None,
    gallery: GalleryOption = None,
    s: SOption = None,
    mode: Annotated[str | None, typer.Option("--mode", help="full or regional form")] = None,
    ladder: Annotated[
        str | None, typer.Option("--ladder", help="Comma-separated cells on the longest axis")
    ] = None,
    grid: Annotated[str | None, typer.Option("--grid", help="One fixed grid, e.g. 64x16")] = None,
    k: Annotated[int | None, typer.Option("--k", help="Eigenvalues on a fixed grid")] = None,
    output: OutputOption = None,
) -> None:
    """Fractional Dirichlet eigenvalues, extrapolated over a refinement ladder."""
    with handled_errors():
        config = _run_config(
            ctx,
            Command.EIGEN,
            {
                "domain": domain,
                "gallery": gallery,
                "s": s,
                "mode": mode,
                "ladder": ladder,
                "grid": grid,
                "k": k,
            },
            output=output,
        )
        params = config.params
        settings = _state(ctx).settings
        target = _load(params)
        if params.grid is not None:
            result = eigenvalues_on_grid(
                target,
                params.s,
                params.grid,
                params.mode,
                params.k,
                settings.eigen,
                settings.quadrature,
                config.threads,
            )
        else:
            result = poincare_constant(
                target,
                params.s,
                params.ladder,
                params.mode,
                settings.eigen,
                settings.quadrature,
                config.threads,
            )
        _emit_json(result, config.output)


@app.command()
def asymptotics(
    ctx: typer.Context,
    s: SOption = None,
    omega: Annotated[str | None, typer.Option("--omega", help="Cross-section a,b")] = None,
    ells: Annotated[str | None, typer.Option("--ells", help="Ascending half-lengths")] = None,
    k: Annotated[int | None, typer.Option("--k", help="Eigenvalues per length")] = None,
    h: Annotated[float | None, typer.Option("--h", help="Cell size (default |omega|/8)")] = None,
    output: Annotated[
        Path | None,
        typer.Option("--output", "--out", "-o", help="CSV (.csv) or JSON output file"),
    ] = None,
) -> None:
    """Eigenvalues of long cylinders against the cross-section constant."""
    with handled_errors():
        config = _run_config(
            ctx,
            Command.ASYMPTOTICS,
            {"s": s, "omega": omega, "ells": ells, "k": k, "h": h},
            output=output,
        )
        params = config.params
        settings = _state(ctx).settings
        table = asymptotics_experiment(
            params.s,
            params.omega,
            params.ells,
            params.k,
            params.h,
            settings.eigen,
            settings.quadrature,
            config.threads,
        )
        rows = [
            [row.ell, row.k, row.lam, row.p2_omega, row.gap, row.fitted_exponent]
            for row in table.rows
        ]
        if config.output is not None and config.output.suffix.lower() == ".csv":
            write_csv_atomic(config.output, ASYMPTOTICS_COLUMNS, rows)
            plain.print_table(f"Cylinders at s = {table.s}", ASYMPTOTICS_COLUMNS, rows)
            plain.print_success(f"Wrote {config.output}")
            return
        _emit_json(table, config.output)


@app.command()
def constants(
    ctx: typer.Context,
    regenerate: Annotated[
        bool | None,
        typer.Option("--regenerate/--no-regenerate", help="Recompute every cached constant"),
    ] = None,
    s: Annotated[
        float | None, typer.Option("--s", help="Compute (or regenerate) only this order")
    ] = None,
    output: OutputOption = None,
) -> None:
    """Show, compute or regenerate the reference constants lambda_ref and p1_unit."""
    with handled_errors():
        config = _run_config(
            ctx, Command.CONSTANTS, {"regenerate": regenerate, "s": s}, output=output
        )
        params = config.params
        cache = ReferenceConstants(_state(ctx).settings)
        if params.regenerate:
            path = cache.regenerate((params.s,)) if params.s is not None else cache.regenerate()
            plain.print_success(f"Regenerated {path}")
        elif params.s is not None:
            cache.lambda_ref(params.s)
            if params.s > 0.5:
                cache.p1_unit(params.s)
            if cache.dirty:
                plain.print_success(f"Cached in {cache.save()}")

        if config.output is not None:
            write_json_atomic(config.output, cache.data)
            plain.print_success(f"Wrote {config.output}")
        rows: list[list[object]] = []
        tables = (("lambda_ref", cache.data.lambda_ref), ("p1_unit", cache.data.p1_unit))
        for name, entries in tables:
            for key in sorted(entries):
                entry = entries[key]
                rows.append([name, key, entry.value, entry.recipe_hash, str(entry.extrapolated)])
        if rows:
            plain.print_table(
                f"Reference constants ({cache.target})",
                ("constant", "s", "value", "recipe", "extrapolated"),
                rows,
            )
        else:
            plain.print_message("No cached constants; they are computed on first use.")


@app.command()
def validate(
    domain_file: Annotated[
        Path,
        typer.Argument(help="Path to the domain JSON file", exists=True, readable=True),
    ],
) -> None:
    """Validate a domain file."""
    with handled_errors():
        data = read_domain_file(domain_file)
        domain = BoxUnionDomain.model_validate(data)

    issues = validate_domain(domain)
    errors = [i for i in issues if i.severity is ValidationSeverity.ERROR]
    for issue in issues:
        if issue.severity is ValidationSeverity.ERROR:
            plain.print_error(str(issue))
        elif issue.severity is ValidationSeverity.WARNING:
            plain.print_warning(str(issue))
        else:
            plain.print_message(str(issue))
    if errors:
        plain.print_error(f"Domain has {len(errors)} error(s)")
        raise typer.Exit(2)
    plain.print_success(f"Domain '{domain.name or domain_file.stem}' is valid")


@app.command()
def gallery(
    name: Annotated[str | None, typer.Argument(help="Fixture to show")] = None,
    export: Annotated[
        Path | None, typer.Option("--export", help="Copy the fixture's JSON to this path")
    ] = None,
) -> None:
    """List the shipped domain fixtures, or show and export one."""
    if name is None:
        for entry in list_gallery():
            plain.print_message(entry)
        return
    with handled_errors():
        document = gallery_document(name)
        domain = load_gallery(name)
        if export is not None:
            write_json_atomic(export, document)
    plain.print_title(domain.name or name)
    plain.print_message(f"  Dimension: {domain.dim}")
    plain.print_message(f"  Boxes: {len(domain.boxes)}")
    plain.print_message(f"  Bounded: {domain.is_bounded}")
    if domain.s is not None:
        plain.print_message(f"  Suggested s: {domain.s}")
    for key, value in sorted(domain.metadata.items()):
        plain.print_message(f"  {key}: {value}")
    if export is not None:
        plain.print_success(f"Wrote {export}")


@app.command("config")
def config_cmd(ctx: typer.Context) -> None:
    """Show the current configuration."""
    settings = _state(ctx).settings
    console.print("[bold]Current Configuration:[/bold]")
    console.print(f"  Data directory: {settings.data_dir}")
    console.print(f"  Constants file: {settings.constants_path or '(data directory)'}")
    console.print(f"  Log level: {settings.log_level}")
    console.print(f"  Threads: {settings.threads}")
    console.print(f"  Seed: {settings.seed}")
    console.print()
    console.print("[bold]Quadrature Settings:[/bold]")
    console.print(f"  epsrel: {settings.quadrature.epsrel}")
    console.print(f"  epsabs: {settings.quadrature.epsabs}")
    console.print(f"  limit: {settings.quadrature.limit}")
    console.print(f"  max_panels: {settings.quadrature.max_panels}")
    console.print()
    console.print("[bold]Monte Carlo Settings:[/bold]")
    console.print(f"  samples: {settings.montecarlo.samples}")
    console.print(f"  stratification: {settings.montecarlo.stratification}")
    console.print()
    console.print("[bold]Eigensolver Settings:[/bold]")
    console.print(f"  dense_limit: {settings.eigen.dense_limit}")
    console.print(f"  ladder: {','.join(str(n) for n in settings.eigen.ladder)}")
    console.print(f"  max_cells: {settings.eigen.max_cells}")
    console.print()
    console.print("[bold]OpenTelemetry Settings:[/bold]")
    console.print(f"  Enabled: {settings.otel.enabled}")
    console.print(f"  Service name: {settings.otel.service_name}")
    endpoint_status = settings.otel.endpoint if settings.otel.endpoint else "(console only)"
    console.print(f"  Endpoint: {endpoint_status}")


if __name__ == "__main__":
    app()
