"""
Command-line entry point for the QKD net-key audit tools.
"""
import logging
import click
from pydantic import ValidationError

from app.bb84.commands import simulate_command, sweep_command
from app.breach.commands import counterexample_command
from app.core.config import settings
from app.core.exceptions import DomainError
from app.distance_guessing.commands import distance_command
from app.entropy_rates.commands import audit_code_command, capacity_command, rates_command, threshold_command
from app.markov_cascade.commands import markov_command

# Configure logging
logging.basicConfig(
    level=logging.INFO if not settings.debug else logging.DEBUG,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

EXIT_USAGE_ERROR = 2
EXIT_DOMAIN_ERROR = 3


def _describe_validation_error(exc: ValidationError) -> str:
    """First validation failure as 'field: message'."""
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error["loc"]) or exc.title
    return f"{location}: {error['msg']}"


class AuditGroup(click.Group):
    """Command group that maps domain and validation errors to exit codes."""
    
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except DomainError as exc:
            logger.warning(f"Domain error in '{ctx.invoked_subcommand}': {exc.message}")
            click.echo(f"error: {exc.error_code}: {exc.message}", err=True)
            ctx.exit(EXIT_DOMAIN_ERROR)
        except ValidationError as exc:
            logger.warning(f"Validation error in '{ctx.invoked_subcommand}': {exc.error_count()} error(s)")
            click.echo(f"error: VALIDATION_ERROR: {_describe_validation_error(exc)}", err=True)
            ctx.exit(EXIT_USAGE_ERROR)


@click.group(cls=AuditGroup)
@click.version_option("1.0.0", prog_name="qkd-audit")
def cli():
    """Net-key accounting, guessing-probability and BB84 ledger tools."""
    logger.debug(f"Starting {settings.app_name}")


cli.add_command(threshold_command)
cli.add_command(rates_command)
cli.add_command(audit_code_command)
cli.add_command(capacity_command)
cli.add_command(distance_command)
cli.add_command(markov_command)
cli.add_command(counterexample_command)
cli.add_command(simulate_command)
cli.add_command(sweep_command)


if __name__ == "__main__":
    cli()
