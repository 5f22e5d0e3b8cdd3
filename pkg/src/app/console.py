"""Console rendering for the command-line front end.

Everything goes to stderr so stdout stays machine-readable.
"""

from collections.abc import Iterable, Sequence

from rich.align import Align
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

console = Console(stderr=True)


def banner(message: str, style: str = "dim green") -> None:
    """Show a centred one-line panel."""
    console.print(Panel(Align.center(message), padding=(0, 1), border_style=style))


def notice(message: str) -> None:
    console.print(f"[yellow]⚠ {message}[/yellow]")


def show_table(title: str, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    """Render rows as a rich table.

    Args:
        title: Table title.
        header: Column names.
        rows: Row values, converted with str().
    """
    table = Table(title=title, header_style="bold cyan")
    for name in header:
        table.add_column(name, justify="right" if name not in ("bc", "family", "label", "mode") else "left")
    for row in rows:
        table.add_row(*("" if v is None else str(v) for v in row))
    console.print(table)
