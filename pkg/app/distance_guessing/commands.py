"""
CLI command for distance-to-uniform and guessing probability figures.
"""
import click

from app.core.config import settings
from app.core.output import emit, output_options
from app.distance_guessing.service import check_theorem1, summarize_skewed


@click.command("distance")
@click.option("--n", "n_outcomes", type=int, required=True, help="Number of outcomes N (even)")
@click.option("--epsilon", type=float, required=True, help="Variational distance of the skewed distribution")
@click.option("--random-check", is_flag=True, help="Also check the guessing bound on random ensembles")
@click.option("--trials", type=click.IntRange(min=1), default=lambda: settings.random_trials, show_default="1000")
@click.option("--seed", type=int, default=0, show_default=True)
@output_options
def distance_command(n_outcomes, epsilon, random_check, trials, seed, fmt, precision):
    """Figures for the skewed distribution at distance epsilon from uniform."""
    summary = summarize_skewed(n_outcomes, epsilon)
    if not random_check:
        emit(summary, fmt, precision)
        return
    record = summary.model_dump(mode="json")
    record["random_check"] = check_theorem1(trials, seed).model_dump(mode="json")
    emit(record, fmt, precision)
