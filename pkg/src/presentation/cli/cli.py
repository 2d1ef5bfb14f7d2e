import logging
from pathlib import Path
from typing import Callable, Optional, Tuple

import click
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from src.business.expr import EvalError, ExprError
from src.business.floquet import FloquetError
from src.business.pipeline import SpectrumPipeline
from src.business.potential import PeriodicPotential, PotentialError
from src.business.spectrum import ArcCountMismatch, SpectrumError
from src.custom_types import Command, ExitCode, OutputFormat
from src.presentation.cli.base import UserInterface
from src.presentation.cli.run_config import RunConfig
from src.presentation.reports import ReportGenerationError, generator_for
from src.settings import DEFAULT_CONFIG_PATH, Settings
from src.storage.files import FileStorageError, LocalFileStorage, SpecError, load_potential

project_root = Path(__file__).parent.parent.parent.parent
load_dotenv(project_root / ".env")


class CLI(UserInterface):
    def __init__(self, config_path: Optional[Path] = None, verbose: bool = False):
        """Initialize CLI with settings, storage and the spectrum pipeline"""
        logging.basicConfig(
            level=logging.DEBUG if verbose else logging.INFO,
            format="%(message)s",
            handlers=[RichHandler(rich_tracebacks=True)]
        )
        self.logger = logging.getLogger(__name__)
        self.console = Console()
        self.config_path = config_path or DEFAULT_CONFIG_PATH
        self.settings = Settings(self.config_path)
        self.file_storage = LocalFileStorage(self.settings.output_path)

    def _pipeline(self, cfg: RunConfig) -> SpectrumPipeline:
        return SpectrumPipeline(
            ode_tol=cfg.ode_tol,
            trace_tol=cfg.trace_tol,
            pt_tol=self.settings.pt_tol,
            trace_step=self.settings.trace_step,
            trace_max_points=self.settings.trace_max_points,
            seed_offset=self.settings.seed_offset,
            probe_nodes=self.settings.probe_nodes,
            sampling_points=self.settings.sampling_points,
            symmetry_samples=self.settings.symmetry_samples,
            bound_margin=self.settings.bound_margin,
        )

    def _load(self, cfg: RunConfig) -> PeriodicPotential:
        return load_potential(self.file_storage.read_spec(cfg.spec_path))

    def _store(self, cfg: RunConfig, data: bytes) -> Path:
        return self.file_storage.store_result(cfg.command.value, data, cfg.format.value, cfg.out)

    def discriminant(self, cfg: RunConfig) -> Path:
        V = self._load(cfg)
        samples = self._pipeline(cfg).discriminant_table(
            V, window=cfg.window, points=cfg.points, box=cfg.energy_box, grid=cfg.grid,
        )
        return self._store(cfg, generator_for(cfg.format.value).discriminant(samples, V.describe()))

    def spectrum(self, cfg: RunConfig) -> Path:
        V = self._load(cfg)
        with self.console.status("[cyan]Tracing spectrum..."):
            result = self._pipeline(cfg).spectrum(V, cfg.energy_box, cfg.points, cfg.grid)
        self.console.print(f"[green]{len(result.arcs)} arcs, {len(result.band_edges)} band edges, "
                           f"{len(result.critical_points)} critical points, "
                           f"{len(result.certificates)} certificates[/green]")
        return self._store(cfg, generator_for(cfg.format.value).spectrum(result))

    def verify(self, cfg: RunConfig) -> Tuple[Path, bool]:
        V = self._load(cfg)
        with self.console.status("[cyan]Probing critical points..."):
            result = self._pipeline(cfg).verify(V, cfg.energy_box, cfg.grid)

        table = Table(title="Local shape")
        for column in ("E0", "k", "regime", "predicted", "measured", "max error", "status"):
            table.add_column(column)
        for entry in result.entries:
            point = entry.point
            measured = entry.report.measured_angles if entry.report else ()
            table.add_row(
                f"{point.e0:.8g}", str(point.order_k), point.regime.value,
                ", ".join(f"{a:.4f}" for a in point.directions),
                ", ".join(f"{a:.4f}" for a in measured) or f"{entry.measured_count} arcs",
                f"{entry.report.max_angle_error:.2e}" if entry.report else "-",
                "[green]pass[/green]" if entry.passed else "[red]fail[/red]",
            )
        self.console.print(table)
        path = self._store(cfg, generator_for(cfg.format.value).verification(result))
        return path, result.passed

    def scan_family(self, cfg: RunConfig) -> Path:
        text = self.file_storage.read_spec(cfg.spec_path)
        amplitudes = cfg.amplitudes
        with Progress(
                SpinnerColumn(),
                TextColumn("[progress.description]{task.description}"),
                BarColumn(),
                TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
                TimeElapsedColumn(),
                console=self.console
        ) as progress:
            task = progress.add_task("[cyan]Sweeping family...", total=len(amplitudes))
            result = self._pipeline(cfg).scan_family(
                lambda value: load_potential(text, {cfg.parameter: value}),
                amplitudes, cfg.window, cfg.points, cfg.parameter,
                progress_callback=lambda done, total, status: progress.update(
                    task, completed=done, description=f"[cyan]{status}"),
            )
        found = sum(1 for row in result.rows if row.certificates)
        self.console.print(f"[green]{found} of {len(result.rows)} values show non-real spectrum[/green]")
        return self._store(cfg, generator_for(cfg.format.value).family(result))


def _exit_code(error: Exception) -> ExitCode:
    if isinstance(error, (SpecError, ValidationError, PotentialError)):
        return ExitCode.SPEC_ERROR
    if isinstance(error, ArcCountMismatch):
        return ExitCode.VERIFICATION_FAILURE
    if isinstance(error, (FloquetError, SpectrumError, EvalError)):
        return ExitCode.NUMERIC_FAILURE
    if isinstance(error, ExprError):
        return ExitCode.SPEC_ERROR
    if isinstance(error, (FileStorageError, ReportGenerationError)):
        return ExitCode.IO_ERROR
    raise error


def _run(ctx: click.Context, action: Callable[[], ExitCode]) -> None:
    console = Console(stderr=True)
    try:
        code = action()
    except Exception as e:
        code = _exit_code(e)
        console.print(f"[red]{type(e).__name__}: {str(e)}[/red]")
    ctx.exit(int(code))


def _floats(count: int):
    def parse(ctx, param, value):
        if value is None:
            return None
        parts = value.split(",")
        if len(parts) != count:
            raise click.BadParameter(f"expected {count} comma-separated numbers")
        try:
            return tuple(float(part) for part in parts)
        except ValueError:
            raise click.BadParameter(f"not a number in '{value}'")
    return parse


def _run_config(command: Command, **options) -> RunConfig:
    settings = Settings(options.pop('config') or DEFAULT_CONFIG_PATH)
    defaults = {
        'ode_tol': settings.ode_tol,
        'trace_tol': settings.trace_tol,
        'grid': settings.grid,
        'points': settings.scan_points,
    }
    merged = {key: value for key, value in options.items() if value is not None}
    return RunConfig(command=command, **{**defaults, **merged})


def common_options(func):
    options = [
        click.option('--spec', 'spec_path', required=True,
                     type=click.Path(dir_okay=False, path_type=Path),
                     help='Potential spec JSON file'),
        click.option('--window', callback=_floats(2), help='Real window A,B'),
        click.option('--box', callback=_floats(4), help='Complex box A,B,C,D (Re from A to B, Im from C to D)'),
        click.option('--grid', type=int, default=None, help='Grid points per side of the box'),
        click.option('--points', type=int, default=None, help='Samples across the real window'),
        click.option('--ode-tol', type=float, default=None, help='Integrator tolerance'),
        click.option('--trace-tol', type=float, default=None, help='Arc tolerance on |Im Delta|'),
        click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help='Output file'),
        click.option('--format', type=click.Choice([f.value for f in OutputFormat]),
                     default=OutputFormat.JSON.value, help='Output format'),
        click.option('--config', type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     default=None, help='Path to config file'),
        click.option('--verbose', is_flag=True, help='Debug logging'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
def cli():
    """Spectra of periodic Schrodinger operators with complex potentials.

    \b
    Exit codes:
      0  ok
      2  spec error (malformed spec, expression or options)
      3  numeric failure
      4  verification failure
      5  I/O error
    """
    pass


@cli.command()
@common_options
@click.pass_context
def discriminant(ctx: click.Context, verbose: bool, **options):
    """Tabulate Delta and Delta' over a real window or a complex grid"""
    def action() -> ExitCode:
        cfg = _run_config(Command.DISCRIMINANT, **options)
        path = CLI(options.get('config'), verbose).discriminant(cfg)
        Console().print(f"Discriminant written to [blue]{path}[/blue]")
        return ExitCode.OK
    _run(ctx, action)


@cli.command()
@common_options
@click.pass_context
def spectrum(ctx: click.Context, verbose: bool, **options):
    """Trace spectral arcs, band edges and critical points inside a box"""
    def action() -> ExitCode:
        cfg = _run_config(Command.SPECTRUM, **options)
        path = CLI(options.get('config'), verbose).spectrum(cfg)
        Console().print(f"Spectrum written to [blue]{path}[/blue]")
        return ExitCode.OK
    _run(ctx, action)


@cli.command()
@common_options
@click.pass_context
def verify(ctx: click.Context, verbose: bool, **options):
    """Compare predicted and measured arc directions at critical points"""
    def action() -> ExitCode:
        cfg = _run_config(Command.VERIFY, **options)
        path, passed = CLI(options.get('config'), verbose).verify(cfg)
        Console().print(f"Verification report written to [blue]{path}[/blue]")
        return ExitCode.OK if passed else ExitCode.VERIFICATION_FAILURE
    _run(ctx, action)


@cli.command('scan-family')
@common_options
@click.option('--parameter', default=None, help='Parameter name in the expression source (default A)')
@click.option('--values', callback=_floats(3), required=True, help='Sweep START,STOP,COUNT')
@click.pass_context
def scan_family(ctx: click.Context, verbose: bool, **options):
    """Sweep an amplitude parameter and detect non-real spectrum per value"""
    def action() -> ExitCode:
        cfg = _run_config(Command.SCAN_FAMILY, **options)
        path = CLI(options.get('config'), verbose).scan_family(cfg)
        Console().print(f"Family summary written to [blue]{path}[/blue]")
        return ExitCode.OK
    _run(ctx, action)


if __name__ == '__main__':
    cli()
