"""Display utilities for negshannon reports."""

import json
from typing import Any, Union

from rich.console import Console
from rich.syntax import Syntax
from rich.table import Table
from rich.tree import Tree

from .probtab import JointDistribution
from .schemas import (
    CertificateDoc,
    DagDoc,
    ExamplesReportDoc,
    ExtremumDoc,
    InconclusiveDoc,
    InfoReportDoc,
    ThresholdDoc,
    WitnessReportDoc,
)

console = Console()


def _bits(value: float) -> str:
    return f"{value:+.6f}"


def display_distribution(P: JointDistribution) -> None:
    """Display the support of a distribution as a table."""
    table = Table(show_header=True, header_style="bold cyan")
    for name, card in zip(P.names, P.cards):
        table.add_column(f"{name} ({card})", justify="right")
    table.add_column("p", justify="right")

    support = P.support()
    for outcome in support[:64]:
        table.add_row(*[str(v) for v in outcome], f"{P.table[outcome]:.6g}")
    console.print(table)

    if len(support) > 64:
        console.print(f"\n[dim]... and {len(support) - 64} more outcomes[/dim]")


def display_info(report: InfoReportDoc) -> None:
    """Display entropies and information quantities."""
    console.print(f"\n[bold]Variables:[/bold] {', '.join(report.variables)}\n")

    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Quantity")
    table.add_column("Bits", justify="right")
    for subset, value in report.entropies.items():
        table.add_row(f"H({subset})", f"{value:.6f}")
    for pair, value in report.mutual_information.items():
        table.add_row(f"I({pair})", f"{value:.6f}")
    for triple, value in report.conditional_mutual_information.items():
        table.add_row(f"I({triple})", f"{value:.6f}")
    if report.tripartite_information is not None:
        value = _bits(report.tripartite_information)
        table.add_row("[bold]I(X;Y;Z)[/bold]", f"[bold]{value}[/bold]")
    console.print(table)

    if report.case is not None:
        console.print(f"Case: [cyan]{report.case}[/cyan]")
    if not report.polymatroid:
        console.print("[red]Entropy vector violates a Shannon inequality[/red]")


def display_witness(report: WitnessReportDoc) -> None:
    """Display inequality slacks and the per-network verdicts."""
    console.print(
        f"\n[bold]Case {report.case}[/bold], I(X;Y;Z) = {_bits(report.tripartite_information)}\n"
    )

    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Inequality")
    table.add_column("Slack", justify="right")
    for name in ("slack19", "slack20", "slack22", "slack23"):
        value = getattr(report, name)
        style = "red" if value < 0 else "green"
        table.add_row(name, f"[{style}]{_bits(value)}[/{style}]")
    table.add_row("finner (1/2)", "ok" if report.finner_ok else "[red]violated[/red]")
    table.add_row("finner (1/3)", "ok" if report.finner13_ok else "[red]violated[/red]")
    console.print(table)

    tree = Tree("[bold]Verdicts[/bold]")
    for config, verdict in report.verdicts.items():
        reasons = report.excluded_by.get(config) or []
        suffix = f" [dim]({', '.join(reasons)})[/dim]" if reasons else ""
        color = "red" if reasons else "green"
        tree.add(f"{config}: [{color}]{verdict}[/{color}]{suffix}")
    console.print(tree)


def display_dag(doc: DagDoc) -> None:
    """Display each node with its parents."""
    tree = Tree("[bold]DAG[/bold]")
    for node in doc.nodes:
        parents = [parent for parent, child in doc.edges if child == node]
        tree.add(f"{node} <- {', '.join(parents) if parents else '[dim]none[/dim]'}")
    console.print(tree)


def display_certificate(doc: Union[CertificateDoc, InconclusiveDoc]) -> None:
    """Display an inflation certificate or the reason none was found."""
    if isinstance(doc, InconclusiveDoc):
        console.print(f"[yellow]Inconclusive[/yellow] ({doc.independence}): {doc.reason}")
        return

    assignment = ", ".join(f"{k}={v}" for k, v in doc.assignment.items())
    forced = ", ".join(f"{k}={v}" for k, v in doc.forced_event.items())
    tree = Tree(f"[bold red]Incompatible with the triangle[/bold red] ({doc.independence})")
    tree.add(f"Copy values: {assignment}")
    implications = tree.add("Implications")
    for imp in doc.implications:
        implications.add(
            f"{imp.copy_variable}={imp.copy_value} => {imp.target}={imp.target_value}"
        )
    tree.add(f"Forced event: {forced} with probability {doc.probability:.3g}")
    console.print(tree)


def display_extremum(doc: ExtremumDoc) -> None:
    """Display an optimization result."""
    info_tree = Tree(f"[bold]{doc.direction.upper()}[/bold] = {_bits(doc.value)}")
    info_tree.add(f"Argument: [{', '.join(f'{a:.4f}' for a in doc.argument)}]")
    if doc.post_channel:
        info_tree.add(f"Post-channel: {doc.post_channel}")
    info_tree.add(f"Restarts: {', '.join(f'{t:.6f}' for t in doc.trace)}")
    if doc.delta is not None:
        info_tree.add(f"Delta: {_bits(doc.delta)}")
    console.print(info_tree)


def display_threshold(doc: ThresholdDoc) -> None:
    binding = f" (bound by {doc.binding})" if doc.binding else ""
    console.print(f"{doc.kind} threshold: [bold]{doc.threshold:.6f}[/bold]{binding}")


def display_examples(report: ExamplesReportDoc) -> None:
    """Display the pass/fail line of each example check."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("#", style="dim", justify="right")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail", overflow="fold")

    for check in report.checks:
        result = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(str(check.item), check.name, result, check.detail)
    console.print(table)
    console.print(f"\n[bold]{report.passed} passed, {report.failed} failed[/bold]")


def display_json_pretty(data: Any) -> None:
    """Display JSON with syntax highlighting."""
    json_str = json.dumps(data, indent=2, ensure_ascii=False)
    syntax = Syntax(json_str, "json", theme="monokai", line_numbers=True)
    console.print(syntax)
