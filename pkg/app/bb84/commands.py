"""
CLI commands for protocol simulation and sweeps.
"""
from typing import Optional
import click

from app.bb84.schemas import ProtocolConfig, SweepGrid
from app.bb84.service import run_protocol, sweep
from app.core.config import settings
from app.core.output import emit, output_options


@click.command("simulate")
@click.option("--raw-len", type=int, default=4096, show_default=True, help="Transmitted qubits")
@click.option("--qber", type=float, required=True, help="Channel flip probability")
@click.option("--check-fraction", type=float, default=lambda: settings.check_fraction, show_default="0.25")
@click.option("--code", "code_name", default="hamming74", show_default=True, help="hamming74, repetitionN, identityN, random:N:K:SEED or ideal")
@click.option("--ecc-mode", type=click.Choice(["padded", "syndrome"]), default="padded", show_default=True)
@click.option("--mu", type=float, default=lambda: settings.mu, show_default="0.0")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--attack", type=click.Choice(["collective", "joint"]), default="collective", show_default=True)
@output_options
def simulate_command(raw_len, qber, check_fraction, code_name, ecc_mode, mu, seed, attack, fmt, precision):
    """Run one seeded BB84 simulation and print its report and ledger."""
    config = ProtocolConfig(
        raw_len=raw_len,
        qber=qber,
        check_fraction=check_fraction,
        code_spec=code_name,
        ecc_mode=ecc_mode,
        mu=mu,
        rng_seed=seed,
        attack=attack,
    )
    emit(run_protocol(config), fmt, precision)


@click.command("sweep")
@click.option("--qber", "qbers", type=float, multiple=True, required=True, help="Repeat for each grid value")
@click.option("--code", "codes", multiple=True, default=("hamming74",), show_default=True, help="Repeat for each code")
@click.option("--ecc-mode", "modes", type=click.Choice(["padded", "syndrome"]), multiple=True, default=("padded",), show_default=True)
@click.option("--raw-len", type=int, default=4096, show_default=True)
@click.option("--check-fraction", type=float, default=lambda: settings.check_fraction, show_default="0.25")
@click.option("--mu", type=float, default=lambda: settings.mu, show_default="0.0")
@click.option("--seed", type=int, default=0, show_default=True, help="Base seed; each run derives its own")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Thread pool size")
@output_options
def sweep_command(qbers, codes, modes, raw_len, check_fraction, mu, seed, workers: Optional[int], fmt, precision):
    """Run the Cartesian grid of QBER, code and mode."""
    grid = SweepGrid(
        qbers=list(qbers),
        codes=list(codes),
        modes=list(modes),
        raw_len=raw_len,
        base_seed=seed,
        check_fraction=check_fraction,
        mu=mu,
    )
    emit(sweep(grid, workers), fmt, precision)
