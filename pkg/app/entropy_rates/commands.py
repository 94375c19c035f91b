"""
CLI commands for rate accounting: threshold, rates, audit-code and capacity.
"""
import math
import click

from app.core.config import settings
from app.core.output import emit, output_options
from app.entropy_rates.service import audit_code, capacity_summary, rate_report, threshold_qber

GRID_SLACK = 1e-9


class RateParam(click.ParamType):
    """Either the literal 'shannon' or a code rate in (0, 1]."""
    
    name = "rate"
    
    def convert(self, value, param, ctx):
        if isinstance(value, float) or value == "shannon":
            return value
        try:
            rate = float(value)
        except ValueError:
            self.fail(f"'{value}' is neither 'shannon' nor a number", param, ctx)
        if not 0.0 < rate <= 1.0:
            self.fail(f"code rate must lie in (0, 1], got {rate}", param, ctx)
        return rate


RATE = RateParam()


def qber_grid(start: float, end: float, step: float) -> list[float]:
    """Inclusive arithmetic grid start, start + step, ..., end."""
    if step <= 0.0 or end < start:
        raise click.BadParameter("need qber-step > 0 and qber-end >= qber-start")
    count = math.floor((end - start) / step + GRID_SLACK) + 1
    return [round(start + index * step, 12) for index in range(count)]


@click.command("threshold")
@click.option("--rate", type=RATE, default="shannon", show_default=True, help="'shannon' or a fixed code rate")
@output_options
def threshold_command(rate, fmt, precision):
    """Largest QBER that still yields a net key."""
    emit(threshold_qber(rate), fmt, precision)


@click.command("rates")
@click.option("--sifted-len", type=click.IntRange(min=0), default=10000, show_default=True, help="Sifted key length |S|")
@click.option("--qber-start", type=float, default=0.0, show_default=True)
@click.option("--qber-end", type=float, default=0.05, show_default=True)
@click.option("--qber-step", type=float, default=0.01, show_default=True)
@click.option("--rate", type=RATE, default="shannon", show_default=True, help="'shannon' or a fixed code rate")
@click.option("--f", "f_factor", type=float, default=lambda: settings.efficiency_factor, show_default="1.1", help="Efficiency factor")
@click.option("--mu", type=float, default=lambda: settings.mu, show_default="0.0", help="Finite-size QBER correction")
@output_options
def rates_command(sifted_len, qber_start, qber_end, qber_step, rate, f_factor, mu, fmt, precision):
    """Leak, key length and net bits over a QBER grid."""
    grid = qber_grid(qber_start, qber_end, qber_step)
    emit([rate_report(sifted_len, q, rate, f_factor, mu) for q in grid], fmt, precision)


@click.command("audit-code")
@click.option("--n-total", type=int, required=True, help="Block length n")
@click.option("--k-info", type=int, required=True, help="Information bits k")
@click.option("--operating-qber", type=float, required=True, help="QBER the code is run at")
@output_options
def audit_code_command(n_total, k_info, operating_qber, fmt, precision):
    """Whether a concrete (n, k) code can yield a net key."""
    emit(audit_code(n_total, k_info, operating_qber), fmt, precision)


@click.command("capacity")
@click.option("--qber", type=float, required=True)
@click.option("--sifted-len", type=click.IntRange(min=1), multiple=True, default=(1000, 10000, 100000), show_default=True)
@output_options
def capacity_command(qber, sifted_len, fmt, precision):
    """BSC capacity against error-count and error-location figures."""
    emit([capacity_summary(qber, length) for length in sifted_len], fmt, precision)
