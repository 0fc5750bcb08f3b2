"""
Shared CLI plumbing: argument types, report emission and error handling
"""

import functools
import json
from collections.abc import Callable
from fractions import Fraction
from typing import Any, TypeVar

import click
from pydantic import BaseModel
from rich.console import Console
from rich.tree import Tree

from resurf.config import get_settings
from resurf.core.exceptions import ErrorHandler, ResurfException
from resurf.core.parsing import parse_rational

F = TypeVar("F", bound=Callable[..., Any])

# numeric positional arguments may be negative
NUMERIC_CONTEXT = {"ignore_unknown_options": True}


class RationalType(click.ParamType):
    """Click parameter accepting exact rationals such as -3/4."""

    name = "rational"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except ResurfException as e:
            self.fail(f"{value!r} is not a rational number: {e.message}", param, ctx)


RATIONAL = RationalType()


def emit(report: BaseModel, title: str) -> None:
    """JSON on stdout; with --format summary also a tree on stderr."""
    settings = get_settings()
    payload = report.model_dump(mode="json")
    click.echo(json.dumps(payload, sort_keys=True, indent=settings.json_indent))
    if settings.output_format == "summary":
        tree = Tree(f"[bold]{title}[/bold]")
        _grow(tree, payload)
        Console(stderr=True).print(tree)


def _grow(node: Tree, payload: Any) -> None:
    items = (
        sorted(payload.items())
        if isinstance(payload, dict)
        else [(f"#{i}", v) for i, v in enumerate(payload)]
    )
    for key, value in items:
        if isinstance(value, (dict, list)) and value:
            _grow(node.add(f"[cyan]{key}[/cyan]"), value)
        else:
            node.add(f"[cyan]{key}[/cyan]: {value}")


def handle_errors(func: F) -> F:
    """Turn library exceptions into a JSON error on stderr and the matching exit code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ResurfException as e:
            error = ErrorHandler.handle_exception(e)
            click.echo(json.dumps(error, sort_keys=True), err=True)
            raise SystemExit(e.exit_code) from e

    return wrapper  # type: ignore[return-value]
