"""
CLI command for cascade failure probabilities.
"""
import click

from app.core.output import emit, output_options
from app.markov_cascade.service import optimize_double, optimize_single


@click.command("markov")
@click.option("--epsilon", type=float, required=True, help="Average distance to uniform")
@click.option("--double", "two_layer", is_flag=True, help="Optimize the two-layer cascade")
@output_options
def markov_command(epsilon, two_layer, fmt, precision):
    """Optimal Markov thresholds and the resulting failure probability."""
    result = optimize_double(epsilon) if two_layer else optimize_single(epsilon)
    emit(result, fmt, precision)
