"""negshannon CLI - Main application entry point."""

import sys
from collections.abc import Callable
from pathlib import Path
from typing import Annotated, Any, Optional

import typer
from pydantic import BaseModel, ValidationError
from rich import print as rprint

from . import __version__
from .bayesnet import build_dag
from .config import DEFAULT_TOLERANCES, FAST_OPTIMIZER, OptimizerConfig
from .display import (
    display_certificate,
    display_dag,
    display_distribution,
    display_examples,
    display_extremum,
    display_info,
    display_json_pretty,
    display_threshold,
    display_witness,
)
from .examples import CHECKS, run_examples
from .inflation import Inconclusive, certify_triangle_incompatibility
from .log import configure_logging, stderr_console
from .models import (
    Direction,
    DistributionError,
    Family,
    Independence,
    NegShannonError,
    QuantumFamily,
    ScanKind,
    StarMode,
    W4Kind,
)
from .optimize import extremize_under_local_channels, i_min_network
from .probtab import JointDistribution, generate, read_distribution, write_distribution
from .quantum import (
    NetworkSpec,
    born_distribution,
    canonical_tripartite_state,
    chain_realization,
    spec_from_document,
    spec_to_document,
    star_network_distribution,
    tripartite_network,
)
from .schemas import NetworkSpecDoc, ThresholdDoc
from .witness import (
    chain_compatible,
    chain_round_trip_error,
    evaluate_inequalities,
    info_report,
    scan_mixture_threshold,
)

# Create the main app
app = typer.Typer(
    name="negshannon",
    help="Network explanations for negative tripartite Shannon information.",
    add_completion=False,
    no_args_is_help=True,
)

# Create sub-apps for command groups
quantum_app = typer.Typer(help="Simulate quantum networks with the Born rule.")
optimize_app = typer.Typer(help="Extremize tripartite information.")
scan_app = typer.Typer(help="Scan one-parameter families for thresholds.")

app.add_typer(quantum_app, name="quantum")
app.add_typer(optimize_app, name="optimize")
app.add_typer(scan_app, name="scan")

# Common options
InOption = Annotated[
    str,
    typer.Option("--in", "-i", help="Input JSON file ('-' for stdin)"),
]
OutOption = Annotated[
    str,
    typer.Option("--out", "-o", help="Output JSON file ('-' for stdout)"),
]
TolOption = Annotated[
    float,
    typer.Option("--tol", help="Numerical tolerance"),
]
SeedOption = Annotated[
    int,
    typer.Option("--seed", help="Random seed"),
]
RestartsOption = Annotated[
    int,
    typer.Option("--restarts", help="Number of optimizer restarts"),
]
ParamsOption = Annotated[
    Optional[str],
    typer.Option("--params", "-p", help="Comma-separated parameters, e.g. 0.25,0.25"),
]
HumanOption = Annotated[
    bool,
    typer.Option("--human", help="Render a table instead of JSON"),
]


def handle_error(e: Exception) -> None:
    """Handle and display input errors."""
    if isinstance(e, DistributionError) and e.field:
        stderr_console.print(f"[red]Invalid input ({e.field}):[/red] {e.message}")
    elif isinstance(e, ValidationError):
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        stderr_console.print(f"[red]Invalid document ({location}):[/red] {first['msg']}")
    else:
        stderr_console.print(f"[red]Error:[/red] {e}")
    raise typer.Exit(2)


def parse_params(text: Optional[str]) -> list[float]:
    """Parse a comma-separated list of reals."""
    if text is None or not text.strip():
        return []
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise DistributionError(
            f"cannot parse {text!r} as comma-separated numbers", "params"
        ) from None


def parse_items(text: str) -> set[int]:
    """Parse comma-separated example item numbers."""
    known = {item for item, _, _ in CHECKS}
    try:
        items = {int(part) for part in text.split(",")}
    except ValueError:
        raise typer.BadParameter(
            f"cannot parse {text!r} as item numbers", param_hint="--items"
        ) from None
    unknown = sorted(items - known)
    if unknown:
        raise typer.BadParameter(
            f"unknown items {unknown}, expected {min(known)}..{max(known)}", param_hint="--items"
        )
    return items


def write_text(text: str, out: str) -> None:
    """Write to a file, or to stdout for '-'."""
    if out == "-":
        typer.echo(text)
    else:
        Path(out).write_text(text + "\n")


def output_document(
    doc: BaseModel,
    out: str,
    human: bool,
    render: Callable[[Any], None] = display_json_pretty,
) -> None:
    """Output a report as JSON or through a display function."""
    if human:
        if render is display_json_pretty:
            render(doc.model_dump(mode="json"))
        else:
            render(doc)
    else:
        write_text(doc.model_dump_json(indent=2), out)


def output_distribution(P: JointDistribution, out: str, human: bool) -> None:
    if human:
        display_distribution(P)
    else:
        write_distribution(P, out)


def read_spec(path: str) -> NetworkSpec:
    """Read a NetworkSpec JSON file; '-' reads stdin."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return spec_from_document(NetworkSpecDoc.model_validate_json(text))


@app.callback()
def main_callback(
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Log search progress to stderr")
    ] = False,
) -> None:
    """Network explanations for negative tripartite Shannon information."""
    configure_logging(verbose)


# =============================================================================
# Version Command
# =============================================================================


@app.command()
def version() -> None:
    """Show version information."""
    rprint(f"negshannon version {__version__}")


# =============================================================================
# Distribution Commands
# =============================================================================


@app.command("generate")
def generate_command(
    family: Annotated[Family, typer.Argument(help="Distribution family")],
    params: ParamsOption = None,
    kind: Annotated[
        Optional[W4Kind], typer.Option("--kind", "-k", help="Support pattern for w4")
    ] = None,
    out: OutOption = "-",
    human: HumanOption = False,
) -> None:
    """Generate a named distribution family."""
    try:
        P = generate(family, parse_params(params), kind)
        output_distribution(P, out, human)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@app.command()
def info(
    input_path: InOption = "-",
    out: OutOption = "-",
    tol: TolOption = DEFAULT_TOLERANCES.info,
    human: HumanOption = False,
) -> None:
    """Report entropies and information quantities."""
    try:
        report = info_report(read_distribution(input_path), tol)
        output_document(report, out, human, display_info)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@app.command()
def witness(
    input_path: InOption = "-",
    out: OutOption = "-",
    tol: TolOption = DEFAULT_TOLERANCES.info,
    human: HumanOption = False,
) -> None:
    """Evaluate the network inequalities; exit 1 if a network is excluded."""
    try:
        report = evaluate_inequalities(read_distribution(input_path), tol)
        doc = report.to_document()
        output_document(doc, out, human, display_witness)
    except (NegShannonError, OSError) as e:
        handle_error(e)
    if report.any_excluded:
        raise typer.Exit(1)


@app.command()
def bayes(
    order: Annotated[
        Optional[str], typer.Option("--order", help="Comma-separated variable ordering")
    ] = None,
    input_path: InOption = "-",
    out: OutOption = "-",
    tol: TolOption = DEFAULT_TOLERANCES.prob,
    human: HumanOption = False,
) -> None:
    """Build the DAG of Markovian parents for an ordering."""
    try:
        P = read_distribution(input_path)
        ordering = P.names if order is None else tuple(v.strip() for v in order.split(","))
        doc = build_dag(P, ordering, tol).to_document()
        output_document(doc, out, human, display_dag)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@app.command()
def inflate(
    independence: Annotated[
        Independence,
        typer.Option("--independence", help="Copy independence premise"),
    ] = Independence.FULL,
    input_path: InOption = "-",
    out: OutOption = "-",
    tol: TolOption = DEFAULT_TOLERANCES.prob,
    human: HumanOption = False,
) -> None:
    """Search for a triangle inflation certificate; exit 1 if inconclusive."""
    try:
        result = certify_triangle_incompatibility(read_distribution(input_path), independence, tol)
        output_document(result.to_document(), out, human, display_certificate)
    except (NegShannonError, OSError) as e:
        handle_error(e)
    if isinstance(result, Inconclusive):
        raise typer.Exit(1)


@app.command("chain-realize")
def chain_realize(
    input_path: InOption = "-",
    out: OutOption = "-",
    tol: TolOption = DEFAULT_TOLERANCES.info,
    human: HumanOption = False,
) -> None:
    """Build a two-source chain realization and report its round-trip error."""
    try:
        P = read_distribution(input_path)
        plan = chain_compatible(P, tol)
        doc = plan.to_document(chain_round_trip_error(P, plan))
        output_document(doc, out, human)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@app.command()
def examples(
    seed: SeedOption = 0,
    items: Annotated[
        Optional[str], typer.Option("--items", help="Comma-separated item numbers")
    ] = None,
    out: OutOption = "-",
    human: HumanOption = False,
) -> None:
    """Run the end-to-end example checks; exit 1 if any fails."""
    try:
        selected = None if items is None else parse_items(items)
        report = run_examples(FAST_OPTIMIZER, seed, selected)
        output_document(report, out, human, display_examples)
    except (NegShannonError, OSError) as e:
        handle_error(e)
    if report.failed:
        raise typer.Exit(1)


# =============================================================================
# Quantum Commands
# =============================================================================


@quantum_app.command("canonical")
def quantum_canonical(
    family: Annotated[QuantumFamily, typer.Argument(help="E4, E5 or E6")],
    params: ParamsOption = None,
    out: OutOption = "-",
    human: HumanOption = False,
) -> None:
    """Computational-basis statistics of a canonical three-qubit state."""
    try:
        state = canonical_tripartite_state(family, parse_params(params))
        output_distribution(born_distribution(tripartite_network(state)), out, human)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@quantum_app.command("star")
def quantum_star(
    params: ParamsOption = None,
    mode: Annotated[
        StarMode, typer.Option("--mode", "-m", help="Centre measurement")
    ] = StarMode.FOURIER,
    out: OutOption = "-",
    human: HumanOption = False,
) -> None:
    """Outcome distribution of the three-leaf star network (angles in radians)."""
    try:
        P = star_network_distribution(parse_params(params), mode)
        output_distribution(P, out, human)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@quantum_app.command("chain")
def quantum_chain(
    input_path: InOption = "-",
    out: OutOption = "-",
    tol: TolOption = DEFAULT_TOLERANCES.info,
    human: HumanOption = False,
) -> None:
    """Quantum chain network reproducing a distribution with I(X;Y) = 0."""
    try:
        spec = chain_realization(read_distribution(input_path), tol)
        output_document(spec_to_document(spec), out, human)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@quantum_app.command("network")
def quantum_network(
    input_path: InOption = "-",
    out: OutOption = "-",
    human: HumanOption = False,
) -> None:
    """Born-rule distribution of a network spec."""
    try:
        output_distribution(born_distribution(read_spec(input_path)), out, human)
    except (NegShannonError, ValidationError, OSError) as e:
        handle_error(e)


# =============================================================================
# Optimize Commands
# =============================================================================


def optimizer_config(seed: int, restarts: int) -> OptimizerConfig:
    return OptimizerConfig(restarts=restarts, seed=seed)


@optimize_app.command("channels")
def optimize_channels(
    direction: Annotated[
        Direction, typer.Option("--direction", "-d", help="max gives I1, min gives I2")
    ] = Direction.MAX,
    input_path: InOption = "-",
    out: OutOption = "-",
    seed: SeedOption = 0,
    restarts: RestartsOption = 4,
    human: HumanOption = False,
) -> None:
    """Extremize I(X;Y;Z) over local bit-flip channels."""
    try:
        P = read_distribution(input_path)
        result = extremize_under_local_channels(P, direction, optimizer_config(seed, restarts))
        output_document(result.to_document(), out, human, display_extremum)
    except (NegShannonError, OSError) as e:
        handle_error(e)


@optimize_app.command("imin")
def optimize_imin(
    family: Annotated[QuantumFamily, typer.Argument(help="E4, E5, E6, chain or custom")],
    params: ParamsOption = None,
    spec_path: Annotated[
        Optional[str], typer.Option("--in", "-i", help="Network spec JSON for custom")
    ] = None,
    entangling: Annotated[
        bool, typer.Option("--entangling/--no-entangling", help="CNOT-ladder bases")
    ] = True,
    out: OutOption = "-",
    seed: SeedOption = 0,
    restarts: RestartsOption = 4,
    human: HumanOption = False,
) -> None:
    """Minimize I(X;Y;Z) over local qubit measurements and report Delta."""
    try:
        spec = read_spec(spec_path) if spec_path is not None else None
        result = i_min_network(
            family, parse_params(params), optimizer_config(seed, restarts), spec, entangling
        )
        output_document(result.to_document(with_delta=True), out, human, display_extremum)
    except (NegShannonError, ValidationError, OSError) as e:
        handle_error(e)


# =============================================================================
# Scan Commands
# =============================================================================


@scan_app.command("mixture")
def scan_mixture(
    kind: Annotated[
        ScanKind, typer.Option("--kind", "-k", help="info_sign or witness")
    ] = ScanKind.INFO_SIGN,
    steps: Annotated[int, typer.Option("--steps", help="Grid points before bisection")] = 200,
    tol: Annotated[float, typer.Option("--tol", help="Bisection width")] = 1e-4,
    out: OutOption = "-",
    human: HumanOption = False,
) -> None:
    """Locate a threshold along the GHZ/W mixture p GHZ + (1-p) W."""
    try:
        threshold, binding = scan_mixture_threshold(kind, steps, tol)
        doc = ThresholdDoc(kind=kind.value, threshold=threshold, binding=binding)
        output_document(doc, out, human, display_threshold)
    except (NegShannonError, OSError) as e:
        handle_error(e)


def main() -> None:
    """Console-script entry point."""
    app(prog_name="negshannon")


if __name__ == "__main__":
    main()
