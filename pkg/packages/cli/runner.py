"""Batch runners behind the command-line subcommands.

Each runner takes a resolved RunConfig, writes its outputs under
``config.output.directory`` together with the resolved configuration, and
returns a RunOutcome listing what it wrote. Nothing here depends on click.
"""

from pathlib import Path
from typing import Any, Optional

import pandas as pd
from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from ..core.config.config import Tolerances
from ..core.config.loader import save_run_config
from ..core.config.run_config import RunConfig, StateSection
from ..core.evolution import (
    drive_amplitude,
    effective_displacement,
    factorized_evolution,
    integrate_master_equation,
)
from ..core.fock import (
    FockDensityMatrix,
    cat_state,
    coherent_state,
    fock_state,
    load_state,
    mean_photon,
    purity,
    save_state,
    thermal_state,
    trace_distance,
)
from ..core.probe import (
    ProbeSpec,
    measure_photon_statistics,
    strong_coupling_check,
    write_distribution,
    write_signal,
)
from ..core.reconstruction import (
    QuasiprobSpec,
    direct_grid,
    phase_space_grid,
    scan_grid,
    write_oracle_table,
    write_result_table,
    write_sidecar,
    write_table,
)
from ..core.utils.errors import ConfigurationError, DimensionMismatchError
from ..core.utils.logger import get_channel_logger, get_logger
from ..core.verification import VerificationReport, run_acceptance_suite

logger = get_logger(__name__)

RESOLVED_CONFIG_NAME = "run_config.yaml"


class RunOutcome(BaseModel):
    """Files written by one runner and the headline numbers it measured."""

    command: str
    files: list[Path] = Field(default_factory=list)
    metrics: dict[str, float] = Field(default_factory=dict)
    failed: bool = False


def build_state(
    section: StateSection, tolerances: Optional[Tolerances] = None
) -> FockDensityMatrix:
    """Construct the initial field described by a state section.

    Raises:
        ConfigurationError: If a state file cannot be read
        DimensionMismatchError: If a state file disagrees with state.dim
    """
    if section.kind == "coherent":
        return coherent_state(section.alpha0, section.dim, tolerances)
    if section.kind == "fock":
        return fock_state(section.n, section.dim)
    if section.kind == "cat":
        return cat_state(section.alpha0, section.sign, section.dim, tolerances)
    if section.kind == "thermal":
        return thermal_state(section.nbar, section.dim)

    path = Path(section.path or "")
    if not path.exists():
        raise ConfigurationError(f"State file not found: {path}")
    rho = load_state(path)
    if rho.dim != section.dim:
        raise DimensionMismatchError(rho.dim, section.dim)
    return rho


def _output_dir(config: RunConfig) -> Path:
    out = Path(config.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _save_resolved(config: RunConfig, out: Path) -> Path:
    path = save_run_config(config, out / RESOLVED_CONFIG_NAME)
    logger.debug(f"Resolved configuration written to {path}")
    return path


def _quasiprob_spec(config: RunConfig) -> QuasiprobSpec:
    section = config.quasiprob
    if section.points:
        grid = list(section.points)
    elif section.grid is not None:
        g = section.grid
        grid = phase_space_grid(g.x_min, g.x_max, g.y_min, g.y_max, g.step)
    else:
        grid = []
    return QuasiprobSpec(s=section.s, grid=grid, m_max=section.m_max)


def cmd_prepare(config: RunConfig, console: Optional[Console] = None) -> RunOutcome:
    """Build the configured initial state and write it to ``state.yaml``."""
    console = console or Console()
    out = _output_dir(config)
    rho = build_state(config.state, config.tolerances)
    state_path = save_state(rho, out / "state.yaml")

    table = Table(title="Prepared state")
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("kind", config.state.kind)
    table.add_row("dim", str(rho.dim))
    table.add_row("mean photon number", f"{mean_photon(rho):.6g}")
    table.add_row("purity", f"{purity(rho):.6g}")
    table.add_row("tail mass bound", f"{rho.tail_mass_bound:.3e}")
    console.print(table)

    return RunOutcome(
        command="prepare",
        files=[state_path, _save_resolved(config, out)],
        metrics={"mean_photon": mean_photon(rho), "purity": purity(rho)},
    )


def cmd_evolve(config: RunConfig, console: Optional[Console] = None) -> RunOutcome:
    """Evolve the initial state through the driven, damped cavity.

    The closed form (displacement then channel) and the RK4 integrator run as
    selected by ``evolution.method``; with ``both`` a comparison report
    ``evolve_report.csv`` is written as well.
    """
    console = console or Console()
    out = _output_dir(config)
    tol = config.tolerances
    p = config.channel
    alpha = config.drive.alpha
    log = get_channel_logger(__name__, p)
    rho = build_state(config.state, tol)
    method = config.evolution.method

    files: list[Path] = []
    rows: list[dict[str, Any]] = []
    states: dict[str, FockDensityMatrix] = {}

    if method in ("closed_form", "both"):
        evolved = factorized_evolution(rho, alpha, p, tol)
        states["closed_form"] = evolved
        files.append(save_state(evolved, out / "evolved_closed_form.yaml"))
        rows.append({"method": "closed_form", "steps": 0, "trace_drift": 0.0})
    if method in ("numerical", "both"):
        result = integrate_master_equation(rho, p, alpha, config.evolution.steps, tol)
        states["numerical"] = result.state
        files.append(save_state(result.state, out / "evolved_numerical.yaml"))
        rows.append(
            {"method": "numerical", "steps": result.steps, "trace_drift": result.trace_drift}
        )

    for row in rows:
        state = states[row["method"]]
        row["mean_photon"] = mean_photon(state)
        row["purity"] = purity(state)
        row["tail_mass_bound"] = state.tail_mass_bound

    metrics: dict[str, float] = {}
    if len(states) == 2:
        distance = trace_distance(states["closed_form"], states["numerical"])
        metrics["trace_distance"] = distance
        log.info(f"closed form vs numerical trace distance {distance:.3e}")
        report = write_table(pd.DataFrame(rows), out / "evolve_report.csv")
        beta = effective_displacement(alpha, p.gamma, p.t)
        write_sidecar(report, {"trace_distance": distance, "beta": [beta.real, beta.imag]})
        files.append(report)

    table = Table(title=f"Evolution to t={p.t:g}")
    table.add_column("Method", style="cyan")
    table.add_column("<n>", style="green")
    table.add_column("Purity", style="green")
    table.add_column("Steps", style="yellow")
    for row in rows:
        table.add_row(
            row["method"], f"{row['mean_photon']:.6g}", f"{row['purity']:.6g}", str(row["steps"])
        )
    console.print(table)
    if "trace_distance" in metrics:
        console.print(f"Trace distance between methods: {metrics['trace_distance']:.3e}")

    files.append(_save_resolved(config, out))
    return RunOutcome(command="evolve", files=files, metrics=metrics)


def _drive_settings(config: RunConfig, grid: list[complex]) -> pd.DataFrame:
    """Drive amplitude that produces each beta within the configured drive time."""
    t_drive = config.drive.t_drive or config.channel.t
    gamma = config.channel.gamma
    alphas = [drive_amplitude(beta, gamma, t_drive) for beta in grid]
    return pd.DataFrame(
        {
            "beta_re": [b.real for b in grid],
            "beta_im": [b.imag for b in grid],
            "alpha_re": [a.real for a in alphas],
            "alpha_im": [a.imag for a in alphas],
            "t_drive": [t_drive] * len(grid),
        },
        columns=["beta_re", "beta_im", "alpha_re", "alpha_im", "t_drive"],
    )


def cmd_reconstruct(
    config: RunConfig, console: Optional[Console] = None, threads: Optional[int] = None
) -> RunOutcome:
    """Scan the configured phase-space points and write ``reconstruction.csv``.

    With ``output.oracle_table`` the directly evaluated quasiprobability is
    written to ``oracle.csv`` and the largest deviation is reported.
    """
    console = console or Console()
    out = _output_dir(config)
    tol = config.tolerances
    rho = build_state(config.state, tol)
    spec = _quasiprob_spec(config)
    if threads is None:
        threads = config.threads

    result = scan_grid(rho, spec, config.channel, tol, threads)
    files = [write_result_table(result, out / "reconstruction.csv")]
    metrics: dict[str, float] = {
        "points": float(len(result.points)),
        "failures": float(len(result.failures)),
        "max_tail_estimate": result.max_tail_estimate,
    }

    if config.output.oracle_table:
        direct = direct_grid(rho, spec.grid, spec.s, tol)
        oracle_path, deviation = write_oracle_table(result, direct, out / "oracle.csv")
        files.append(oracle_path)
        metrics["max_deviation"] = deviation

    if config.drive.t_drive is not None or config.channel.t > 0.0:
        files.append(write_table(_drive_settings(config, spec.grid), out / "drive_settings.csv"))

    table = Table(title=f"Reconstruction at s={spec.s:g}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("points", str(len(result.points)))
    table.add_row("not converged", str(len(result.failures)))
    table.add_row("max tail estimate", f"{result.max_tail_estimate:.3e}")
    if "max_deviation" in metrics:
        table.add_row("max |W - W_direct|", f"{metrics['max_deviation']:.3e}")
    console.print(table)
    if result.failures:
        console.print(f"[yellow]{len(result.failures)} points did not converge[/yellow]")

    files.append(_save_resolved(config, out))
    return RunOutcome(command="reconstruct", files=files, metrics=metrics)


def cmd_probe(config: RunConfig, console: Optional[Console] = None) -> RunOutcome:
    """Simulate the atom probe on the decayed field and invert its signal.

    Writes ``probe_signal.csv`` and ``recovered_distribution.csv`` (with the
    exact statistics alongside).

    Raises:
        ConfigurationError: If the config has no probe section
    """
    if config.probe is None:
        raise ConfigurationError("The probe command needs a 'probe' section in the config")
    console = console or Console()
    out = _output_dir(config)
    tol = config.tolerances
    section = config.probe
    spec = ProbeSpec(
        lambda_coupling=section.lambda_coupling,
        n_samples=section.n_samples,
        m_max=section.m_max,
    )
    rho = build_state(config.state, tol)
    strong = strong_coupling_check(spec.lambda_coupling, config.channel.gamma)

    measurement = measure_photon_statistics(
        rho,
        section.beta,
        config.channel,
        spec,
        noise_amplitude=section.noise_amplitude,
        seed=config.seed,
        tolerances=tol,
    )
    metadata = {
        "beta": [section.beta.real, section.beta.imag],
        "channel": config.channel.model_dump(mode="json"),
        "strong_coupling": strong,
        "noise_amplitude": section.noise_amplitude,
        "seed": config.seed,
    }
    signal_path = write_signal(measurement.signal, spec, out / "probe_signal.csv", metadata)
    dist_path, max_error = write_distribution(
        measurement.recovered,
        out / "recovered_distribution.csv",
        reference=measurement.true_distribution,
        metadata=metadata,
    )

    table = Table(title="Probe inversion")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("samples", str(spec.n_samples))
    table.add_row("tau_max", f"{spec.tau_max:.6g}")
    table.add_row("recovered photon numbers", str(measurement.recovered.trunc))
    table.add_row("max |P - P_true|", f"{max_error:.3e}" if max_error is not None else "-")
    table.add_row("strong coupling", "yes" if strong else "no")
    console.print(table)

    metrics = {"max_error": max_error} if max_error is not None else {}
    return RunOutcome(
        command="probe",
        files=[signal_path, dist_path, _save_resolved(config, out)],
        metrics=metrics,
    )


def print_report(report: VerificationReport, console: Console) -> None:
    table = Table(title="Acceptance suite")
    table.add_column("Criterion", style="cyan")
    table.add_column("Measured", style="yellow")
    table.add_column("Tolerance", style="yellow")
    table.add_column("Verdict")
    for c in report.criteria:
        verdict = "[green]PASS[/green]" if c.passed else "[red]FAIL[/red]"
        table.add_row(c.name, f"{c.measured:.3e}", f"{c.tolerance:.1e}", verdict)
    console.print(table)
    for c in report.failures:
        console.print(f"[red]{c.name}[/red]: {c.detail}")


def cmd_verify(
    config: Optional[RunConfig] = None,
    console: Optional[Console] = None,
    only: Optional[list[str]] = None,
) -> tuple[RunOutcome, VerificationReport]:
    """Run the acceptance suite and write ``verify_report.csv``.

    Args:
        config: Supplies tolerances, threads and the output directory (defaults if None)
        console: Where the report table goes
        only: Restrict the run to these criterion names

    Returns:
        (outcome, report); outcome.failed is set when any criterion fails
    """
    config = config or RunConfig()
    console = console or Console()
    report = run_acceptance_suite(config.tolerances, config.threads, only)
    print_report(report, console)

    files: list[Path] = []
    if config.output.verify_report:
        out = _output_dir(config)
        files.append(report.write_csv(out / "verify_report.csv"))
    outcome = RunOutcome(
        command="verify",
        files=files,
        metrics={"failures": float(len(report.failures))},
        failed=not report.passed,
    )
    return outcome, report
