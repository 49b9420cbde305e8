from fractions import Fraction

from rich.console import Console, Group
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .catalog import CatalogEntry, Instance
from .exact import Matrix, format_rational
from .settings import console as error_console
from .verify import Summary

console = Console()


def _matrix_table(m: Matrix, title: str) -> Table:
    table = Table(title=title, show_header=False, box=None, pad_edge=False)
    for _ in range(m.cols):
        table.add_column(justify="right")
    for row in m:
        table.add_row(*(format_rational(x) for x in row))
    return table


def _brackets(instance: Instance) -> str:
    parts = []
    for i, j, coeffs in instance.algebra.nonzero_brackets():
        rhs = " + ".join(f"{format_rational(v)} e{k}" if v != 1 else f"e{k}" for k, v in coeffs.items())
        parts.append(f"[e{i},e{j}] = {rhs}")
    return ", ".join(parts) or "abelian"


def _form(instance: Instance) -> str:
    return " + ".join(f"{format_rational(v)} e{i}{j}" for i, j, v in instance.omega.terms())


def _params(values: dict[str, Fraction]) -> str:
    return ", ".join(f"{k}={format_rational(v)}" for k, v in sorted(values.items()))


def show_entry(entry: CatalogEntry, instance: Instance) -> None:
    info = Text()
    info.append(f"{entry.summary}\n\n", style="bold")
    info.append("brackets  ", style="cyan")
    info.append(f"{_brackets(instance)}\n")
    info.append("omega     ", style="cyan")
    info.append(f"{_form(instance)}\n")
    info.append("params    ", style="cyan")
    info.append(f"{_params(instance.params)}\n")
    constraints = [f"{p.name}: {p.kind}" for p in entry.params]
    if entry.scalable:
        constraints.append("lam: nonzero")
    constraints += [f"{k} = {v}" for k, v in sorted(entry.fixed.items())]
    info.append("limits    ", style="cyan")
    info.append(f"{'; '.join(constraints) or 'none'}\n")
    if entry.hermitian_condition:
        info.append("hermitian ", style="cyan")
        info.append(f"{entry.hermitian_condition}\n")
    for note in entry.notes:
        info.append(f"note: {note}\n", style="dim")
    sig = instance.metric.signature
    body = Group(info, _matrix_table(instance.acs.matrix, "J (column j is J(e_j))"),
                 _matrix_table(instance.metric.matrix, f"g = w.J, signature ({sig.positive},{sig.negative},{sig.null})"))
    console.print(Panel(body, title=f"[bold]{entry.id}[/bold]", border_style="bright_blue", padding=(1, 2)))


def summary_table(summary: Summary) -> None:
    table = Table(title=f"{len(summary.reports)} reports, seed {summary.seed}")
    table.add_column("check")
    table.add_column("pass", justify="right", style="green")
    table.add_column("fail", justify="right", style="red")
    table.add_column("inconclusive", justify="right", style="yellow")
    for name, counts in summary.counts.items():
        table.add_row(name, str(counts["pass"]), str(counts["fail"]), str(counts["inconclusive"]))
    console.print(table)
    style = "green" if summary.failures == 0 else "red"
    console.print(Text(f"{summary.failures} failing checks", style=f"bold {style}"))


def failure(message: str, icon: str = "❌") -> None:
    error_console.print(Text(f"{icon} {message}", style="red"))
