#!/usr/bin/env python3
"""
Brown Measure Toolkit CLI

Tabulates the domain Sigma_t, the Brown measure density, Biane's measure nu_t
and the boundary shadow map, integrates Hamilton-Jacobi characteristics,
simulates matrix Brownian motions and runs the verification suite.

Every subcommand writes its artifacts to --out and accepts the same flags;
values come from explicit flags, then the --config JSON file, then defaults.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import click
import numpy as np
from click.core import ParameterSource
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from . import __version__
from .artifacts import SVG_BINS, artifact_name, write_csv, write_json, write_svg_histogram, write_svg_polyline
from .config import RunConfig, Subcommand, merge_config
from .density.angular import DensityRoute, tabulate_density
from .errors import BrownMeasureError, ConfigError
from .hjflow.closed_form import log_lambda_at_lifetime, t_star
from .hjflow.integrator import integrate_from
from .matsim.compare import compare_to_brown, compare_unitary
from .matsim.sampler import Group, SimConfig, simulate
from .region.boundary import sample_boundary
from .unitary_shadow.biane import biane_mass, biane_table, build_shadow_map, quantile_consistency
from .verification.suite import SuiteOptions, VerificationSuite, overall_status

console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

EXIT_FAIL = 1
EXIT_CONFIG = 2
LIFETIME_FRACTION = 0.95

# flag parameter name -> RunConfig field
_FIELD_NAMES = {"matrix_size": "N"}


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True, show_path=False)],
        force=True,
    )


def run_options(func: Callable) -> Callable:
    """Flags shared by every subcommand."""
    options = [
        click.option("--t", "t", type=float, default=2.0, show_default=True, help="Time parameter t > 0"),
        click.option("--n", "n", type=int, default=256, show_default=True, help="Grid size"),
        click.option("--N", "matrix_size", type=int, default=500, show_default=True, help="Matrix size"),
        click.option("--steps", type=int, default=None, help="Time steps (default ceil(100 t))"),
        click.option("--samples", type=int, default=4, show_default=True, help="Independent matrices"),
        click.option("--seed", type=int, default=7, show_default=True, help="Root random seed"),
        click.option("--out", type=click.Path(path_type=Path), default=Path("output"), show_default=True),
        click.option(
            "--route",
            type=click.Choice([r.value for r in DensityRoute]),
            default=DensityRoute.OMEGA.value,
            show_default=True,
            help="Density route",
        ),
        click.option("--quick", is_flag=True, help="Quick verification subset"),
        click.option(
            "--group",
            type=click.Choice([g.value for g in Group]),
            default=Group.GL.value,
            show_default=True,
            help="Matrix group for simulate",
        ),
        click.option("--lambda0", type=str, default="2", show_default=True, help="Initial lambda, e.g. 2+1j"),
        click.option("--x0", type=float, default=1.0, show_default=True, help="Initial x >= 0"),
        click.option("--workers", type=int, default=1, show_default=True, help="Thread pool size"),
        click.option(
            "--svg", is_flag=True, help="Also write an SVG: boundary outline (region), eigen-angle histogram (simulate)"
        ),
        click.option(
            "--config", "config_path", type=click.Path(path_type=Path), default=None, help="JSON config file"
        ),
        click.option("--print-config", is_flag=True, help="Print the merged configuration and exit"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _explicit_flags(ctx: click.Context, params: dict[str, Any]) -> dict[str, Any]:
    """Flags given on the command line or through the environment."""
    explicit = {}
    for name, value in params.items():
        if name in ("config_path", "print_config"):
            continue
        source = ctx.get_parameter_source(name)
        if source in (ParameterSource.COMMANDLINE, ParameterSource.ENVIRONMENT):
            explicit[_FIELD_NAMES.get(name, name)] = value
    return explicit


def _load(ctx: click.Context, subcommand: Subcommand, params: dict[str, Any]) -> Optional[RunConfig]:
    try:
        cfg = merge_config(subcommand.value, _explicit_flags(ctx, params), params.get("config_path"))
    except ConfigError as e:
        err_console.print(f"❌ [bold red]Configuration error:[/bold red] {e}")
        ctx.exit(EXIT_CONFIG)
    if params.get("print_config"):
        click.echo(json.dumps(cfg.to_json_dict(), indent=2))
        return None
    return cfg


def _run(ctx: click.Context, subcommand: Subcommand, params: dict[str, Any], action: Callable[[RunConfig], int]):
    cfg = _load(ctx, subcommand, params)
    if cfg is None:
        return
    try:
        status = action(cfg)
    except ConfigError as e:
        err_console.print(f"❌ [bold red]Configuration error:[/bold red] {e}")
        ctx.exit(EXIT_CONFIG)
    except BrownMeasureError as e:
        err_console.print(f"❌ [bold red]{type(e).__name__}:[/bold red] {e}")
        logger.debug(f"Error details: {e.to_dict()}")
        ctx.exit(EXIT_FAIL)
    if status:
        ctx.exit(status)


# -- actions -------------------------------------------------------------------------


def run_region(cfg: RunConfig) -> int:
    boundary = sample_boundary(cfg.t, cfg.n, cfg.tolerances.root_tol)
    path = write_csv(boundary.to_frame(), cfg.out / artifact_name("region", cfg.t))
    if cfg.svg:
        write_svg_polyline(boundary.outline(), cfg.out / artifact_name("region", cfg.t, "svg"))
    worst = float(boundary.residuals().max())
    console.print(f"🗺️  [bold cyan]Sigma_t boundary[/bold cyan] t={cfg.t}: {cfg.n} angles, max |T - t| = {worst:.2e}")
    console.print(f"   theta_max = {boundary.theta_max:.12g}, max r_t = {boundary.r_outer.max():.12g} -> {path}")
    return 0


def run_density(cfg: RunConfig) -> int:
    grid = tabulate_density(cfg.t, cfg.n, cfg.route)
    path = write_csv(grid.to_frame(), cfg.out / artifact_name("density", cfg.t))
    write_json(grid.to_dict(), cfg.out / artifact_name("density", cfg.t, "json"))
    console.print(f"📊 [bold cyan]Brown density[/bold cyan] t={cfg.t} via {grid.route.value}: mass = {grid.mass:.12f} -> {path}")
    return 0


def run_biane(cfg: RunConfig) -> int:
    table = biane_table(cfg.t, cfg.n)
    path = write_csv(table, cfg.out / artifact_name("biane", cfg.t))
    mass = biane_mass(cfg.t)
    console.print(f"🎯 [bold cyan]nu_t density[/bold cyan] t={cfg.t}: {len(table)} rows, mass = {mass:.12f} -> {path}")
    return 0


def run_shadow(cfg: RunConfig) -> int:
    shadow = build_shadow_map(cfg.t, cfg.n)
    path = write_csv(shadow.to_frame(), cfg.out / artifact_name("shadow", cfg.t))
    quantiles = quantile_consistency(cfg.t)
    write_json({**shadow.to_dict(), "quantile_consistency": quantiles}, cfg.out / artifact_name("shadow", cfg.t, "json"))
    console.print(f"🌗 [bold cyan]Shadow map[/bold cyan] t={cfg.t}: phi_max = {shadow.phi_max:.12g}, quantile gap {quantiles:.2e} -> {path}")
    return 0


def run_hj(cfg: RunConfig) -> int:
    lifetime = t_star(cfg.lambda0, cfg.x0)
    if cfg.t >= lifetime:
        logger.warning(f"⚠️  t={cfg.t} is past the lifetime {lifetime:.6g}; stopping at {LIFETIME_FRACTION} t_star")
        fraction = LIFETIME_FRACTION
    else:
        fraction = cfg.t / lifetime
    traj = integrate_from(cfg.lambda0, cfg.x0, fraction=fraction)
    path = write_csv(traj.to_frame(), cfg.out / artifact_name("hj", cfg.t))
    report = {
        **traj.to_dict(),
        "log_lambda_at_lifetime": log_lambda_at_lifetime(cfg.lambda0, cfg.x0),
        "drift": traj.drift(),
    }
    write_json(report, cfg.out / artifact_name("hj", cfg.t, "json"))
    console.print(f"🧭 [bold cyan]Characteristic[/bold cyan] lambda0={cfg.lambda0}, x0={cfg.x0}: t_star = {lifetime:.12g}")
    console.print(f"   {len(traj)} samples to t={traj.times[-1]:.6g}, max drift {max(report['drift'].values()):.2e} -> {path}")
    return 0


def run_simulate(cfg: RunConfig) -> int:
    sim = SimConfig(N=cfg.N, t=cfg.t, steps=cfg.effective_steps(), seed=cfg.seed, samples=cfg.samples, group=cfg.group)
    cloud = simulate(sim, workers=cfg.workers)
    path = write_csv(cloud.to_frame(), cfg.out / artifact_name("eigenvalues", cfg.t))
    if cfg.group is Group.GL:
        comparison = compare_to_brown(cloud, cfg.t)
        report = {**comparison.to_dict(), "passed": comparison.passed()}
        table = Table(show_header=True, header_style="bold magenta")
        table.add_column("Statistic", style="cyan")
        table.add_column("Value", justify="right")
        table.add_column("Status")
        values = {
            "inside_fraction": comparison.inside_fraction,
            "ks_arg": comparison.ks_arg,
            "ks_shadow": comparison.ks_shadow,
            "flatness": comparison.flatness_chi2,
        }
        for name, ok in comparison.passed().items():
            table.add_row(name, f"{values[name]:.4f}", "✅ PASS" if ok else "❌ FAIL")
        console.print(table)
    else:
        ks = compare_unitary(cloud, cfg.t)
        report = {"t": cfg.t, "count": int(cloud.eigenvalues.size), "ks_nu": ks, "config": sim.to_dict()}
        console.print(f"🔄 U({cfg.N}) eigen-angles vs nu_t: KS = {ks:.4f}")
    write_json(report, cfg.out / artifact_name("report", cfg.t, "json"))
    if cfg.svg:
        _write_angle_histogram(cfg, cloud.eigenvalues)
    console.print(f"🎲 {cloud.eigenvalues.size} eigenvalues -> {path}")
    return 0


def _write_angle_histogram(cfg: RunConfig, values: np.ndarray) -> None:
    """Histogram of arg(eigenvalue) against a_t for GL or nu_t for U."""
    heights, edges = np.histogram(np.angle(values), bins=SVG_BINS, range=(-np.pi, np.pi), density=True)
    if cfg.group is Group.GL:
        grid = tabulate_density(cfg.t, cfg.n, with_mass=False)
        reference = (grid.theta, grid.a_t)
    else:
        table = biane_table(cfg.t, cfg.n)
        reference = (table["phi"].to_numpy(), table["nu_density"].to_numpy())
    write_svg_histogram(edges, heights, cfg.out / artifact_name("angles", cfg.t, "svg"), reference)


def run_verify(cfg: RunConfig) -> int:
    options = SuiteOptions(quick=cfg.quick, seed=cfg.seed, workers=cfg.workers)
    results = VerificationSuite(options).run()
    status = overall_status(results)

    table = Table(title="Verification", show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan", no_wrap=True)
    table.add_column("Value", justify="right")
    table.add_column("Threshold", justify="right")
    table.add_column("Time", justify="right")
    table.add_column("Status")
    for result in results:
        table.add_row(
            result.name,
            f"{result.value:.3e}",
            f"{result.threshold:.1e}",
            f"{result.seconds:.2f}s",
            "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]",
        )
    console.print(table)
    write_json(
        {"status": status, "quick": cfg.quick, "seed": cfg.seed, "checks": [r.to_dict() for r in results]},
        cfg.out / "verify_report.json",
    )
    colour = "green" if status == "PASS" else "red"
    console.print(f"\n🏁 Overall status: [bold {colour}]{status}[/bold {colour}]")
    return 0 if status == "PASS" else EXIT_FAIL


# -- commands ------------------------------------------------------------------------


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
def main(verbose: bool):
    """🌀 Brown measure toolkit for free multiplicative Brownian motion"""
    _configure_logging(verbose)


def _subcommand(subcommand: Subcommand, action: Callable[[RunConfig], int], doc: str) -> None:
    @click.pass_context
    def command(ctx: click.Context, **params: Any):
        _run(ctx, subcommand, params, action)

    command.__doc__ = doc
    main.command(name=subcommand.value)(run_options(command))


_subcommand(Subcommand.REGION, run_region, "🗺️  Sample the boundary of Sigma_t")
_subcommand(Subcommand.DENSITY, run_density, "📊 Tabulate the Brown measure density w_t")
_subcommand(Subcommand.BIANE, run_biane, "🎯 Tabulate Biane's measure nu_t")
_subcommand(Subcommand.SHADOW, run_shadow, "🌗 Tabulate the boundary shadow map theta -> phi")
_subcommand(Subcommand.HJ, run_hj, "🧭 Integrate a Hamilton-Jacobi characteristic")
_subcommand(Subcommand.SIMULATE, run_simulate, "🎲 Simulate matrix Brownian motion eigenvalues")
_subcommand(Subcommand.VERIFY, run_verify, "🔍 Run the verification suite")


if __name__ == "__main__":
    sys.exit(main())
