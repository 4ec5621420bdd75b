"""
plain.py

PURPOSE: Plain text output formatting for the CLI.
DEPENDENCIES: rich

ARCHITECTURE NOTES:
This module provides formatted console output using Rich.
It handles:
- Messages, errors and successes
- Result tables (quotient sequences, asymptotics, constants)
- Condition verdicts
- Debug output

Machine-readable output (JSON and CSV) never goes through here; the CLI
writes it verbatim so it stays byte-identical across runs. JSON may go to
stdout, so errors, warnings and debug dumps use a separate stderr console.
"""

import json
from collections.abc import Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

console = Console()
err_console = Console(stderr=True)

VERDICT_STYLES = {"holds": "bold green", "fails": "bold red", "inconclusive": "bold yellow"}


def print_message(text: str) -> None:
    """Print a normal message."""
    console.print(text)


def print_error(text: str) -> None:
    """Print an error message."""
    err_console.print(f"[red]{text}[/red]")


def print_warning(text: str) -> None:
    """Print a warning."""
    err_console.print(f"[yellow]{text}[/yellow]")


def print_success(text: str) -> None:
    """Print a success message."""
    console.print(f"[green]{text}[/green]")


def print_title(title: str) -> None:
    """Print a title in a panel."""
    panel = Panel(
        Text(title, justify="center", style="bold"),
        border_style="blue",
    )
    console.print(panel)


def print_table(title: str, header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    """Print rows as a table; floats get ten significant digits."""
    table = Table(title=title)
    for name in header:
        table.add_column(name, justify="right")
    for row in rows:
        table.add_row(*(f"{v:.10g}" if isinstance(v, float) else str(v) for v in row))
    console.print(table)


def print_verdict(
    condition: str, verdict: str, bound: float | None, bound_kind: str | None
) -> None:
    """Print a condition verdict with its bound."""
    style = VERDICT_STYLES.get(verdict, "bold")
    text = Text.assemble((f"{condition}: ", "bold"), (verdict.upper(), style))
    if bound is not None:
        relation = ">=" if bound_kind == "lower" else "<="
        text.append(f"   P^2 {relation} {bound:.8g}")
    console.print(text)


def print_debug(data: dict[str, object] | str) -> None:
    """Print debug information."""
    err_console.print("[dim]--- DEBUG ---[/dim]")
    if isinstance(data, dict):
        err_console.print(f"[dim]{json.dumps(data, indent=2, default=str)}[/dim]")
    else:
        err_console.print(f"[dim]{data}[/dim]")
    err_console.print("[dim]-------------[/dim]")
