"""
crossfam.cli - Command Line Interface
=====================================

Typer front end for the computation, search and verification modules.

Architecture
------------
The CLI is structured around Typer's app pattern:

    app (main entry point)
    ├── compute  - Closed formula and constructions for one instance
    ├── search   - Exhaustive search with extremal systems
    ├── scan     - Objective g or f over its range (CSV or JSON)
    ├── verify   - Verification suites on one instance or a sweep
    └── set      - One-shot set calculus
        ├── rank / unrank
        ├── partner / kpartner / parity
        └── maxcross / members

Exit codes: 0 success, 1 a discrepancy, failed check or missing k-partner,
2 invalid input, exceeded budget or bad configuration.

Usage Examples
--------------
    $ crossfam compute -n 6 -k 4,3,2
    $ crossfam search -n 6 -k 4,3,2 --list-extremal --json
    $ crossfam scan -n 6 -k 4,3,2 --fn g --format csv
    $ crossfam verify --suite all --sweep --t 3,4 --kmax 5 --nmax 12
    $ crossfam set kpartner -n 9 --target 4 2,4,7

See Also
--------
- models.py: Report and verdict models printed by these commands
- config.py: settings read by the callback
"""

from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import Annotated, NoReturn

import typer
from pydantic import ValidationError
from rich import print as rprint
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.progress import Progress
from rich.table import Table

from crossfam import __version__
from crossfam.config import Settings
from crossfam.errors import NotFoundError, SizeGuardError
from crossfam.families import classify, construction1, construction2
from crossfam.lexset import KSet, members, rank, unrank
from crossfam.models import (
    CheckStatus,
    CheckVerdict,
    OutputFormat,
    Params,
    Regime,
    Report,
    ScanTarget,
    SearchMode,
    Suite,
    SweepGrid,
    SweepReport,
)
from crossfam.objective import m_formula
from crossfam.partner import kpartner, max_cross_id, parity_of, partner
from crossfam.report import format_scan, write_report
from crossfam.search import brute_force_M, classify_extremal, construction_systems, scan as run_scan
from crossfam.verify import check_fact_suite, instance_report, run_sweep


logger = logging.getLogger(__name__)


# =============================================================================
# CLI Application Setup
# =============================================================================

app = typer.Typer(
    name="crossfam",
    help="Sums of cross-intersecting uniform families: formulas, search and verification.",
    no_args_is_help=True,
    rich_markup_mode="rich",
    add_completion=True,
)

set_app = typer.Typer(
    name="set",
    help="One-shot set calculus on subsets of [n].",
    no_args_is_help=True,
    rich_markup_mode="rich",
)
app.add_typer(set_app, name="set")

# Human output goes to stdout, errors and logs to stderr
console = Console()
err_console = Console(stderr=True)

STATUS_STYLES = {
    CheckStatus.PASS: "green",
    CheckStatus.FAIL: "bold red",
    CheckStatus.SKIPPED: "dim",
}

NOT_FOUND_EXIT = 1
INVALID_EXIT = 2


# =============================================================================
# Helpers
# =============================================================================


def version_callback(value: bool) -> None:
    """Display version information and exit."""
    if value:
        console.print(
            Panel(
                f"[bold green]crossfam[/] version [cyan]{__version__}[/]\n\n"
                f"[dim]Sums of cross-intersecting uniform families[/]",
                border_style="green",
            )
        )
        raise typer.Exit()


def _fail(message: object, code: int = INVALID_EXIT) -> NoReturn:
    err_console.print(f"[red]Error:[/] {message}", highlight=False)
    raise typer.Exit(code)


def _settings(ctx: typer.Context) -> Settings:
    settings = ctx.obj if isinstance(ctx.obj, Settings) else None
    return settings or Settings.load()


def _parse_params(n: int, ks: str) -> Params:
    params, reordered = Params.parse(n, ks)
    if reordered:
        logger.warning("Reordered k-vector to %s (must be nonincreasing)", ",".join(map(str, params.ks)))
    return params


def _parse_set(n: int, text: str, k: int | None = None) -> KSet:
    r = KSet.parse(n, text)
    if k is not None and len(r) != k:
        _fail(f"Expected a {k}-set, got {{{r}}} of size {len(r)}")
    return r


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        typer.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    err_console.print(f"[green]✓[/] Wrote {out}", highlight=False)


def _report_table(report: Report) -> Table:
    table = Table(title=f"Instance {report.params}", show_header=False)
    table.add_column("Field", style="cyan")
    table.add_column("Value")
    table.add_row("Regime", f"{report.regime.value} [dim]({report.regime.description})[/]")
    rows = (
        ("s", report.s),
        ("λ₁", report.lambda1),
        ("λ₂", report.lambda2),
        ("M (formula)", report.m_formula),
        ("M (search)", report.m_bruteforce),
    )
    for label, value in rows:
        if value is not None:
            table.add_row(label, str(value))
    if report.classification is not None:
        table.add_row("Extremal", f"{report.classification.value} [dim]({report.classification.description})[/]")
    if report.timing is not None:
        table.add_row("Time", f"{report.timing:.3f}s")
    return table


def _verdict_table(verdicts: list[CheckVerdict], title: str) -> Table:
    table = Table(title=title, show_header=True)
    table.add_column("Instance", style="cyan")
    table.add_column("Check")
    table.add_column("Status")
    table.add_column("Checked", justify="right")
    table.add_column("Skipped", justify="right")
    table.add_column("Detail", style="dim")
    for verdict in verdicts:
        style = STATUS_STYLES[verdict.status]
        table.add_row(
            str(verdict.params) if verdict.params else "-",
            verdict.name,
            f"[{style}]{verdict.status.value}[/]",
            str(verdict.checked),
            str(verdict.skipped),
            verdict.detail,
        )
    return table


def _print_counterexamples(verdicts: list[CheckVerdict]) -> None:
    for verdict in verdicts:
        if verdict.status is CheckStatus.FAIL:
            console.print(
                Panel(
                    "\n".join(f"{k}: {v}" for k, v in (verdict.counterexample or {}).items()),
                    title=f"[bold red]{verdict.name} on {verdict.params or 'all ground sets'}[/]",
                    border_style="red",
                )
            )


# =============================================================================
# Main Application Callback
# =============================================================================


@app.callback()
def main(
    ctx: typer.Context,
    version: Annotated[
        bool | None,
        typer.Option(
            "--version",
            "-V",
            help="Show version and exit.",
            callback=version_callback,
            is_eager=True,
        ),
    ] = None,
    verbose: Annotated[
        int,
        typer.Option("--verbose", "-v", count=True, help="More logging (-v info, -vv debug)."),
    ] = 0,
    config: Annotated[
        Path | None,
        typer.Option("--config", help="Settings file (TOML).", dir_okay=False),
    ] = None,
) -> None:
    """
    [bold]crossfam[/] - sums of cross-intersecting uniform families.

    Maximum of [cyan]|A1| + ... + |At|[/] over non-empty pairwise
    cross-intersecting families of k-subsets of [n].

    [bold]Quick Start:[/]

        crossfam compute -n 6 -k 4,3,2
    """
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False, show_time=False)],
        force=True,
    )
    try:
        ctx.obj = Settings.load(config)
    except (OSError, ValidationError, ValueError) as e:
        _fail(f"Invalid configuration: {e}")


# =============================================================================
# Compute / Search / Scan
# =============================================================================

N_OPTION = typer.Option("-n", help="Ground set size.")
KS_OPTION = typer.Option("-k", "--ks", help="Uniformities as a comma list, e.g. 4,3,2.")
JSON_OPTION = typer.Option("--json", help="Print the report as JSON.")
TIMING_OPTION = typer.Option("--timing", help="Record wall time in the report.")


@app.command()
def compute(
    n: Annotated[int, N_OPTION],
    ks: Annotated[str, KS_OPTION],
    as_json: Annotated[bool, JSON_OPTION] = False,
    timing: Annotated[bool, TIMING_OPTION] = False,
) -> None:
    """
    Closed-form maximum and constructions for one instance.

    [bold]Example:[/]

        crossfam compute -n 6 -k 4,3,2
    """
    started = time.perf_counter()
    try:
        params = _parse_params(n, ks)
        found = classify(params)
        report = Report(params=params, regime=found.regime, s=found.s)
        if found.regime.has_formula:
            objectives = m_formula(params)
            report.lambda1, report.lambda2 = objectives.lambda1, objectives.lambda2
            report.m_formula = objectives.m_formula
        if found.regime is Regime.MIXED:
            report.extremal_systems = [s.as_strings() for s in construction_systems(params)]
    except ValueError as e:
        _fail(e)
    if timing:
        report.timing = time.perf_counter() - started
    if as_json:
        typer.echo(report.model_dump_json(indent=2))
        return
    console.print(_report_table(report))
    if found.regime is Regime.MIXED:
        constructions = Table(title="Constructions", show_header=True)
        constructions.add_column("Name", style="cyan")
        constructions.add_column("IDs")
        constructions.add_column("Total", justify="right")
        for label, (system, value) in (("C1", construction1(params)), ("C2", construction2(params))):
            constructions.add_row(label, str(system), str(value))
        console.print(constructions)
    elif not found.regime.has_formula:
        rprint(f"[yellow]{found.regime.description}[/]")


@app.command()
def search(
    ctx: typer.Context,
    n: Annotated[int, N_OPTION],
    ks: Annotated[str, KS_OPTION],
    naive: Annotated[bool, typer.Option("--naive", help="Try every ID tuple.")] = False,
    list_extremal: Annotated[
        bool, typer.Option("--list-extremal", help="List every extremal system.")
    ] = False,
    as_json: Annotated[bool, JSON_OPTION] = False,
    timing: Annotated[bool, TIMING_OPTION] = False,
) -> None:
    """
    Exhaustive maximum over cross-intersecting L-initial systems.

    Exits with 1 when the search disagrees with the closed formula.

    [bold]Example:[/]

        crossfam search -n 6 -k 4,3,2 --list-extremal
    """
    settings = _settings(ctx)
    mode = SearchMode.NAIVE if naive else SearchMode.SMART
    started = time.perf_counter()
    try:
        params = _parse_params(n, ks)
        found = classify(params)
        result = brute_force_M(params, mode, settings)
    except SizeGuardError as e:
        _fail(e)
    except ValueError as e:
        _fail(e)
    report = Report(
        params=params,
        regime=found.regime,
        s=found.s,
        m_bruteforce=result.max_sum,
        extremal_systems=[s.as_strings() for s in result.extremal],
    )
    if found.regime.has_formula:
        objectives = m_formula(params)
        report.lambda1, report.lambda2 = objectives.lambda1, objectives.lambda2
        report.m_formula = objectives.m_formula
        report.discrepancy = objectives.m_formula != result.max_sum
    if found.regime is Regime.MIXED:
        report.classification = classify_extremal(params, result)
    if timing:
        report.timing = time.perf_counter() - started

    if as_json:
        typer.echo(report.model_dump_json(indent=2))
    else:
        console.print(_report_table(report))
        console.print(
            f"[dim]{mode.value} search: {result.evaluated:,} evaluated, {result.skipped:,} skipped[/]"
        )
        if list_extremal:
            extremal = Table(title="Extremal systems", show_header=True)
            extremal.add_column("#", justify="right")
            extremal.add_column("IDs")
            extremal.add_column("Sizes")
            for index, system in enumerate(result.extremal, start=1):
                extremal.add_row(str(index), str(system), " + ".join(map(str, system.sizes)))
            console.print(extremal)
    if report.discrepancy:
        _fail(f"Search found {result.max_sum} but the formula gives {report.m_formula}", 1)


@app.command()
def scan(
    ctx: typer.Context,
    n: Annotated[int, N_OPTION],
    ks: Annotated[str, KS_OPTION],
    fn: Annotated[ScanTarget, typer.Option("--fn", help="Objective to scan: g or f.")],
    s: Annotated[int | None, typer.Option("--s", help="Index s for f (default: the regime's).")] = None,
    fmt: Annotated[OutputFormat, typer.Option("--format", help="Output format.")] = OutputFormat.CSV,
    out: Annotated[Path | None, typer.Option("--out", help="Write to a file instead of stdout.")] = None,
) -> None:
    """
    Evaluate g over F(2,3) or f over the first range, in lex order.

    [bold]Example:[/]

        crossfam scan -n 6 -k 4,3,2 --fn g --format json
    """
    try:
        params = _parse_params(n, ks)
        table = run_scan(params, fn, s, _settings(ctx))
    except SizeGuardError as e:
        _fail(e)
    except ValueError as e:
        _fail(e)
    _emit(format_scan(table, fmt), out)
    if out is not None:
        best = ", ".join(f"{{{r}}}" for r in table.argmax)
        err_console.print(f"{len(table.rows)} rows; max {table.max_value} at {best}", highlight=False)


# =============================================================================
# Verify
# =============================================================================


def _parse_t_values(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(token) for token in text.split(",") if token.strip())
    except ValueError:
        _fail(f"Cannot parse family counts from {text!r}; expected e.g. '3,4'")


@app.command()
def verify(
    ctx: typer.Context,
    suite: Annotated[Suite, typer.Option("--suite", help="Suite to run.")] = Suite.ALL,
    n: Annotated[int | None, typer.Option("-n", help="Ground set size of a single instance.")] = None,
    ks: Annotated[str | None, typer.Option("-k", "--ks", help="Uniformities of a single instance.")] = None,
    sweep: Annotated[bool, typer.Option("--sweep", help="Run over a parameter grid.")] = False,
    t_values: Annotated[str, typer.Option("--t", help="Family counts for the sweep.")] = "3,4",
    kmin: Annotated[int, typer.Option("--kmin", help="Smallest k in the sweep.")] = 2,
    kmax: Annotated[int, typer.Option("--kmax", help="Largest k in the sweep.")] = 5,
    nmax: Annotated[int, typer.Option("--nmax", help="Largest n in the sweep.")] = 12,
    regimes: Annotated[
        list[Regime] | None,
        typer.Option("--regime", help="Regimes kept in the sweep (repeatable; default mixed)."),
    ] = None,
    as_json: Annotated[bool, JSON_OPTION] = False,
    report_path: Annotated[
        Path | None, typer.Option("--report", help="Write a Markdown report.", dir_okay=False)
    ] = None,
    timing: Annotated[bool, TIMING_OPTION] = False,
) -> None:
    """
    Run verification suites on one instance or a sweep.

    Without an instance or [cyan]--sweep[/], [cyan]--suite facts[/] runs the
    instance-free fact suite. It is exhaustive up to n = fact_max_n (8 by
    default, the slow part of the run); set fact_max_n lower in crossfam.toml
    for a quick run. Exits with 1 when any check fails.

    [bold]Examples:[/]

        crossfam verify --suite parity -n 6 -k 4,3,2
        crossfam verify --suite theorem --sweep --t 3 --nmax 9
    """
    settings = _settings(ctx)
    single = n is not None or ks is not None
    if single and sweep:
        _fail("Give either -n/-k or --sweep, not both")
    if single and (n is None or ks is None):
        _fail("A single instance needs both -n and -k")

    if not single and not sweep:
        if suite is not Suite.FACTS:
            _fail("Give -n/-k or --sweep (only --suite facts runs without an instance)")
        verdict = check_fact_suite(settings=settings)
        if as_json:
            typer.echo(verdict.model_dump_json(indent=2))
        else:
            console.print(_verdict_table([verdict], "Fact suite"))
            _print_counterexamples([verdict])
        if not verdict.passed:
            raise typer.Exit(1)
        return

    started = time.perf_counter()
    try:
        if single:
            assert n is not None and ks is not None
            result = SweepReport(reports=[instance_report(_parse_params(n, ks), (suite,), settings)])
        else:
            grid = SweepGrid(
                t_values=_parse_t_values(t_values),
                kmin=kmin,
                kmax=kmax,
                nmax=nmax,
                regimes=tuple(regimes) if regimes else (Regime.MIXED,),
            )
            cells = list(grid.iter_params())
            with Progress(console=err_console, transient=True) as progress:
                task = progress.add_task("Sweeping", total=len(cells))
                result = run_sweep(grid, (suite,), settings, lambda _: progress.advance(task))
    except SizeGuardError as e:
        _fail(e)
    except ValueError as e:
        _fail(e)
    if timing:
        elapsed = time.perf_counter() - started
        for report in result.reports:
            report.timing = elapsed

    if report_path is not None:
        write_report(result, report_path)
    if as_json:
        typer.echo(result.model_dump_json(indent=2))
    else:
        if single:
            console.print(_report_table(result.reports[0]))
        console.print(_verdict_table(result.verdicts, "Verification"))
        _print_counterexamples(result.verdicts)
        console.print(
            f"[bold]Summary:[/] {result.pass_count} pass, {result.fail_count} fail, "
            f"{result.skipped_count} skipped, {result.discrepancy_count} discrepancies "
            f"over {len(result.reports)} instances"
        )
    if not result.ok:
        raise typer.Exit(1)


# =============================================================================
# Set Calculus
# =============================================================================

SET_ARGUMENT = typer.Argument(help="A set as a comma list, e.g. 2,4,7.")
SIZE_OPTION = typer.Option("-k", help="Set size.")
TARGET_OPTION = typer.Option("--target", help="Target size.")


@set_app.command("rank")
def set_rank(
    n: Annotated[int, N_OPTION],
    k: Annotated[int, SIZE_OPTION],
    r: Annotated[str, SET_ARGUMENT],
) -> None:
    """Size of the L-initial family with ID R."""
    try:
        typer.echo(rank(n, k, _parse_set(n, r, k)))
    except ValueError as e:
        _fail(e)


@set_app.command("unrank")
def set_unrank(
    n: Annotated[int, N_OPTION],
    k: Annotated[int, SIZE_OPTION],
    position: Annotated[int, typer.Argument(help="Rank, starting at 1.")],
) -> None:
    """The k-set with the given rank."""
    try:
        typer.echo(str(unrank(n, k, position)))
    except ValueError as e:
        _fail(e)


@set_app.command("partner")
def set_partner(
    n: Annotated[int, N_OPTION],
    f: Annotated[str, SET_ARGUMENT],
) -> None:
    """The partner of F."""
    try:
        typer.echo(str(partner(n, _parse_set(n, f))))
    except ValueError as e:
        _fail(e)


@set_app.command("kpartner")
def set_kpartner(
    n: Annotated[int, N_OPTION],
    target: Annotated[int, TARGET_OPTION],
    f: Annotated[str, SET_ARGUMENT],
) -> None:
    """The k-partner of F (exit 1 when it does not exist)."""
    try:
        result = kpartner(n, _parse_set(n, f), target)
    except NotFoundError as e:
        _fail(e, NOT_FOUND_EXIT)
    except ValueError as e:
        _fail(e)
    typer.echo(str(result.value))


@set_app.command("parity")
def set_parity(
    n: Annotated[int, N_OPTION],
    target: Annotated[int, TARGET_OPTION],
    f: Annotated[str, SET_ARGUMENT],
) -> None:
    """The parity of F of the target size (exit 1 when it does not exist)."""
    try:
        result = parity_of(n, _parse_set(n, f), target)
    except ValueError as e:
        _fail(e)
    if result is None:
        _fail(f"{{{f}}} has no {target}-parity on [{n}]", NOT_FOUND_EXIT)
    typer.echo(str(result))


@set_app.command("maxcross")
def set_maxcross(
    n: Annotated[int, N_OPTION],
    target: Annotated[int, TARGET_OPTION],
    a: Annotated[str, SET_ARGUMENT],
) -> None:
    """ID of the largest L-initial family of the target size crossing L(A)."""
    try:
        typer.echo(str(max_cross_id(n, _parse_set(n, a), target)))
    except NotFoundError as e:
        _fail(e, NOT_FOUND_EXIT)
    except ValueError as e:
        _fail(e)


@set_app.command("members")
def set_members(
    ctx: typer.Context,
    n: Annotated[int, N_OPTION],
    k: Annotated[int, SIZE_OPTION],
    r: Annotated[str, SET_ARGUMENT],
) -> None:
    """Every member of the L-initial family with ID R, one per line."""
    try:
        found = members(n, k, _parse_set(n, r, k), _settings(ctx).member_cap)
    except SizeGuardError as e:
        _fail(e)
    except ValueError as e:
        _fail(e)
    for member in found:
        typer.echo(str(member))
