"""CLI entry point for cavity-recon batch runs."""

import functools
import sys
from typing import Any, Callable, Optional

import click
from rich.console import Console

from .. import __version__
from ..core.config.config import get_settings, init_settings
from ..core.config.loader import load_run_config
from ..core.config.run_config import RunConfig
from ..core.utils.errors import CavityError, ConfigurationError, NumericalError
from ..core.utils.logger import configure_logging, get_logger
from .runner import cmd_evolve, cmd_prepare, cmd_probe, cmd_reconstruct, cmd_verify

logger = get_logger(__name__)

console = Console()
err_console = Console(stderr=True)

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def exit_code_for(error: CavityError) -> int:
    """Numerical failures exit with 2, everything else the user can fix with 1."""
    return EXIT_NUMERICAL if isinstance(error, NumericalError) else EXIT_VALIDATION


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Report CavityErrors on stderr and turn them into exit codes."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except CavityError as e:
            logger.debug(f"{type(e).__name__}: {e}")
            err_console.print(f"[red]{type(e).__name__}:[/red] {e}")
            sys.exit(exit_code_for(e))

    return wrapper


def common_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--config, --out, --threads and --seed shared by every subcommand."""
    decorators = [
        click.option(
            "--config",
            "config_path",
            type=click.Path(dir_okay=False),
            default=None,
            help="Run configuration (YAML).",
        ),
        click.option("--out", default=None, help="Output directory (overrides output.directory)."),
        click.option(
            "--threads",
            type=click.IntRange(min=0),
            default=None,
            help="Worker threads, 0 = one per core.",
        ),
        click.option(
            "--seed",
            type=click.IntRange(min=0, max=2**64 - 1),
            default=None,
            help="Seed of the optional measurement noise.",
        ),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def resolve_config(
    config_path: Optional[str],
    out: Optional[str],
    threads: Optional[int],
    seed: Optional[int],
    required: bool = True,
) -> RunConfig:
    """Load the config file, apply flag overrides and initialize the settings.

    Raises:
        ConfigurationError: If a required config is missing or invalid
    """
    if config_path is None:
        if required:
            raise ConfigurationError("Missing option '--config': a run configuration is required")
        config = RunConfig()
    else:
        config = load_run_config(config_path)
    config = config.with_overrides(out=out, threads=threads, seed=seed)

    init_settings(threads=config.threads, tolerances=config.tolerances)
    return config


def _report_files(files: list[Any]) -> None:
    for path in files:
        console.print(f"[green]wrote[/green] {path}")


@click.group()
@click.version_option(version=__version__, prog_name="cavity-recon")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Logging level (default from CAVITY_RECON_LOG_LEVEL).",
)
def cli(log_level: Optional[str]) -> None:
    """Cavity-field evolution and quasiprobability reconstruction."""
    settings = get_settings()
    configure_logging(level=log_level or settings.log_level, use_colors=settings.log_colors)


@cli.command()
@common_options
@handle_errors
def prepare(
    config_path: Optional[str], out: Optional[str], threads: Optional[int], seed: Optional[int]
) -> None:
    """Build the initial state and write it to state.yaml."""
    config = resolve_config(config_path, out, threads, seed)
    _report_files(cmd_prepare(config, console).files)


@cli.command()
@common_options
@handle_errors
def evolve(
    config_path: Optional[str], out: Optional[str], threads: Optional[int], seed: Optional[int]
) -> None:
    """Evolve the state in closed form and/or with the integrator."""
    config = resolve_config(config_path, out, threads, seed)
    _report_files(cmd_evolve(config, console).files)


@cli.command()
@common_options
@handle_errors
def reconstruct(
    config_path: Optional[str], out: Optional[str], threads: Optional[int], seed: Optional[int]
) -> None:
    """Scan the phase-space grid and write the reconstruction table."""
    config = resolve_config(config_path, out, threads, seed)
    _report_files(cmd_reconstruct(config, console).files)


@cli.command()
@common_options
@handle_errors
def probe(
    config_path: Optional[str], out: Optional[str], threads: Optional[int], seed: Optional[int]
) -> None:
    """Simulate the atom probe and invert its signal."""
    config = resolve_config(config_path, out, threads, seed)
    _report_files(cmd_probe(config, console).files)


@cli.command()
@common_options
@click.option("--only", multiple=True, help="Run only the named criterion (repeatable).")
@handle_errors
def verify(
    config_path: Optional[str],
    out: Optional[str],
    threads: Optional[int],
    seed: Optional[int],
    only: tuple[str, ...],
) -> None:
    """Run the acceptance suite; exits with 2 if any criterion fails."""
    config = resolve_config(config_path, out, threads, seed, required=False)
    outcome, report = cmd_verify(config, console, list(only) or None)
    _report_files(outcome.files)
    if outcome.failed:
        err_console.print(f"[red]{len(report.failures)} criteria failed[/red]")
        sys.exit(EXIT_NUMERICAL)
    console.print("[green]All criteria passed[/green]")


if __name__ == "__main__":
    cli()
