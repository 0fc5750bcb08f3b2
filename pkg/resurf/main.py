"""
Command line entry point for resurf
"""

import logging
import sys

import click
import structlog

from resurf.cli import cusp, delpezzo, family, lattice, pencil, weierstrass
from resurf.config import configure, get_settings


def configure_logging(level: str) -> None:
    """Structured JSON logs on stderr; stdout is reserved for reports."""
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(message)s", force=True
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


@click.group()
@click.version_option(get_settings().version, prog_name=get_settings().app_name)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "summary"]),
    default="json",
    show_default=True,
    help="summary also prints a readable tree on stderr.",
)
@click.option("--verbose", is_flag=True, help="Debug logging on stderr.")
@click.option(
    "--indent", "json_indent", type=int, default=None, help="Pretty-print the JSON."
)
def cli(output_format: str, verbose: bool, json_indent: int | None) -> None:
    """Exact analysis of cubic pencils and rational elliptic surfaces."""
    settings = configure(
        output_format=output_format,
        log_level="DEBUG" if verbose else "WARNING",
        json_indent=json_indent,
    )
    configure_logging(settings.log_level)
    structlog.get_logger().debug("Configured", format=output_format)


cli.add_command(pencil.analyze_pencil)
cli.add_command(weierstrass.analyze_weierstrass)
cli.add_command(family.family)
cli.add_command(lattice.lattice)
cli.add_command(delpezzo.delpezzo)
cli.add_command(cusp.cusp)


def main() -> None:
    cli(prog_name="resurf")


if __name__ == "__main__":
    main()
