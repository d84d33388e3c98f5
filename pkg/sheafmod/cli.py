"""Command-line interface for sheafmod."""

import logging
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Annotated, TypeVar

import typer
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from sheafmod.bmodule import (
    BLocale,
    BModule,
    check_module_hom,
    check_module_laws,
    check_stability,
    make_blocale,
)
from sheafmod.config import AppConfig, OutputFormat, load_config
from sheafmod.errors import MalformedInput, NoBasis, NotOpen, SheafModError
from sheafmod.genfix import fixture
from sheafmod.hilbert import (
    BasedModule,
    HilbertModule,
    basis_properties,
    based,
    etale_based,
    etale_equivalence_check,
    find_basis,
    is_hilbert_basis,
    support_hilbert,
)
from sheafmod.homs import (
    adjoint,
    check_dagger_is_direct_image,
    is_adjointable_iff_hom_check,
    is_sheaf_hom,
    sections_presheaf,
)
from sheafmod.lattice import Lattice, hasse_dot, verify_frame
from sheafmod.matrix import (
    check_matrix_roundtrip,
    check_module_roundtrip,
    is_projection_matrix,
    matrix_from_module,
    module_from_matrix,
)
from sheafmod.report import InstanceReport, LawReport, RunReport
from sheafmod.schemas import (
    FrameDoc,
    HilbertDoc,
    HomDoc,
    MapDoc,
    MatrixDoc,
    ModuleDoc,
    load_doc,
    resolve,
)
from sheafmod.suite import SuiteEngine, guarded

FIXTURE_PREFIX = "fixture:"
Doc = TypeVar("Doc", bound=BaseModel)
Descriptor = dict[str, int | str]

app = typer.Typer(
    name="sheafmod",
    help="Sheaves on finite locales: étale B-locales, Hilbert B-modules, projection matrices.",
    no_args_is_help=True,
)
frame_app = typer.Typer(help="Finite frames.", no_args_is_help=True)
module_app = typer.Typer(help="B-modules and B-locales.", no_args_is_help=True)
hilbert_app = typer.Typer(help="Hilbert B-modules and bases.", no_args_is_help=True)
matrix_app = typer.Typer(help="Projection matrices.", no_args_is_help=True)
hom_app = typer.Typer(help="Module homomorphisms and adjoints.", no_args_is_help=True)
map_app = typer.Typer(help="Maps of B-locales.", no_args_is_help=True)
suite_app = typer.Typer(help="The seeded verification battery.", no_args_is_help=True)
export_app = typer.Typer(help="Hasse diagrams.", no_args_is_help=True)
app.add_typer(frame_app, name="frame")
app.add_typer(module_app, name="module")
app.add_typer(hilbert_app, name="hilbert")
app.add_typer(matrix_app, name="matrix")
app.add_typer(hom_app, name="hom")
app.add_typer(map_app, name="map")
app.add_typer(suite_app, name="suite")
app.add_typer(export_app, name="export")

console = Console()
err_console = Console(stderr=True)

InputArg = Annotated[str, typer.Argument(help="JSON document, or fixture:NAME")]


@dataclass
class State:
    """Options shared by every subcommand."""

    config: AppConfig = field(default_factory=load_config)

    @property
    def json(self) -> bool:
        return self.config.output_format is OutputFormat.JSON


class DotSubject(str, Enum):
    FRAME = "frame"
    MODULE = "module"


@app.callback()
def main(
    ctx: typer.Context,
    output_format: Annotated[
        OutputFormat,
        typer.Option("--format", "-f", help="Report format"),
    ] = OutputFormat.TEXT,
    max_size: Annotated[
        int | None,
        typer.Option("--max-size", help="Lower the carrier size guardrails"),
    ] = None,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Log construction details to stderr"),
    ] = False,
) -> None:
    """Sheaves on finite locales: étale B-locales, Hilbert B-modules, projection matrices."""
    config = load_config()
    try:
        config.limits = config.limits.capped(max_size)
    except ValueError as e:
        err_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(2)
    config.output_format = output_format
    config.verbose = verbose or config.verbose
    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )
    ctx.obj = State(config=config)


def fixture_name(ref: str) -> str | None:
    """The fixture named by ``fixture:NAME``, or None for a file path."""
    if ref.startswith(FIXTURE_PREFIX):
        return ref[len(FIXTURE_PREFIX) :]
    return None


def load(ref: str, model: type[Doc]) -> Doc:
    return load_doc(Path(ref), model)


def load_lattice(ref: str, state: State) -> Lattice:
    name = fixture_name(ref)
    if name is not None:
        return fixture(name).lattice
    return load(ref, FrameDoc).build_lattice(state.config.limits)


def load_module(ref: str, state: State) -> BModule:
    name = fixture_name(ref)
    doc = ModuleDoc(fixture=name) if name is not None else load(ref, ModuleDoc)
    return doc.build(state.config.limits)


def load_hilbert(ref: str, state: State) -> HilbertModule:
    name = fixture_name(ref)
    doc = HilbertDoc(module=ModuleDoc(fixture=name)) if name is not None else load(ref, HilbertDoc)
    return doc.build(state.config.limits)


def as_locale(module: BModule, state: State) -> BLocale:
    return module if isinstance(module, BLocale) else make_blocale(module, state.config.limits)


def flag(passed: bool, witness: str | None = None) -> str:
    if passed:
        return "yes"
    return f"no ({witness})" if witness else "no"


def basis_for(hilbert: HilbertModule, state: State) -> BasedModule:
    """The section basis of an étale locale, otherwise a basis found by search."""
    module = hilbert.module
    if isinstance(module, BLocale) and module.is_open and module.etale:
        return etale_based(module)
    found = find_basis(hilbert, state.config.limits)
    if found is None:
        raise NoBasis(f"{module.name} has no Hilbert basis")
    return based(hilbert, found)


def labelled(lattice: Lattice, values: Iterable[int]) -> str:
    return ", ".join(lattice.labels[int(v)] for v in values)


def parse_ref(lattice: Lattice, text: str) -> int:
    """A label of ``lattice``, or failing that an index."""
    if text in lattice.labels:
        return lattice.labels.index(text)
    if text.isdigit():
        return resolve(lattice, int(text))
    raise MalformedInput(f"{lattice.name} has no element {text!r}")


def show(title: str, columns: list[str], rows: list[list[str]], state: State) -> None:
    """Print a supporting table in text mode; JSON output carries only the report."""
    if state.json:
        return
    table = Table(title=title, show_lines=False)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*row)
    console.print(table)


def render(run: RunReport, elapsed: float, state: State) -> None:
    """Print a report to stdout; timing goes to stderr in text mode only."""
    if state.json:
        typer.echo(run.model_dump_json(indent=2))
        return
    many = len(run.instances) > 1
    for instance in run.instances:
        details = ", ".join(f"{k}={v}" for k, v in instance.descriptor.items())
        mark = "[green]pass[/green]" if instance.passed else "[red]FAIL[/red]"
        console.print(f"[bold]{instance.name}[/bold] {mark} [dim]{details}[/dim]")
        if many and instance.passed:
            continue
        table = Table(show_lines=False)
        table.add_column("Subject", style="cyan")
        table.add_column("Law")
        table.add_column("Verdict", width=7)
        table.add_column("Witness / note", style="dim")
        for report in instance.reports:
            for r in report.results:
                if many and r.passed:
                    continue
                verdict = "[green]pass[/green]" if r.passed else "[red]fail[/red]"
                table.add_row(report.subject, r.law, verdict, r.witness or r.note or "")
        console.print(table)
    total = len(run.instances)
    failing = sum(not i.passed for i in run.instances)
    color = "green" if run.passed else "red"
    console.print(f"[{color}]{total - failing}/{total} instances pass[/{color}]")
    err_console.print(f"[dim]{run.command} took {elapsed:.2f}s[/dim]")


def execute(state: State, command: str, build: Callable[[RunReport], None]) -> None:
    """Fill a fresh report with ``build``, print it and exit 0, 1 or 2."""
    run = RunReport(command=command)
    start = time.perf_counter()
    try:
        build(run)
    except SheafModError as e:
        err_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(2)
    render(run, time.perf_counter() - start, state)
    raise typer.Exit(0 if run.passed else 1)


@frame_app.command("check")
def frame_check(ctx: typer.Context, source: InputArg) -> None:
    """Verify the lattice and frame laws."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        lattice = load_lattice(source, state)
        report = verify_frame(lattice, state.config.limits)
        descriptor: Descriptor = {"elements": lattice.size}
        run.add(InstanceReport(name=lattice.name, descriptor=descriptor, reports=[report]))

    execute(state, "frame check", build)


@module_app.command("check")
def module_check(ctx: typer.Context, source: InputArg) -> None:
    """Module laws and stability; openness and étaleness are reported as classifications."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        module = load_module(source, state)
        reports = [
            verify_frame(module.carrier, state.config.limits),
            check_module_laws(module),
            check_stability(module),
        ]
        descriptor: Descriptor = {"elements": module.size, "base": module.base.name}
        if all(r.passed for r in reports):
            locale = as_locale(module, state)
            verdict = etale_equivalence_check(locale, state.config.limits)
            descriptor["open"] = flag(locale.is_open)
            descriptor["étale"] = verdict.etale.value
            descriptor["Hilbert basis"] = verdict.pre_hilbert_with_basis.value
            if locale.is_open:
                reports.append(verdict.report)
                descriptor["sections"] = len(locale.sections)
        run.add(InstanceReport(name=module.name, descriptor=descriptor, reports=reports))

    execute(state, "module check", build)


@module_app.command("sections")
def module_sections(ctx: typer.Context, source: InputArg) -> None:
    """List the local sections with their supports and, when étale, the sections presheaf."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        locale = as_locale(load_module(source, state), state)
        carrier, base = locale.carrier, locale.base
        spp = locale.spp
        rows = [[carrier.labels[s], base.labels[spp[s]]] for s in locale.sections]
        show(f"Local sections of {locale.name}", ["Section", "Support"], rows, state)
        descriptor: Descriptor = {
            "sections": labelled(carrier, locale.sections),
            "étale": flag(locale.etale),
        }
        reports: list[LawReport] = []
        if locale.etale:
            presheaf = sections_presheaf(locale)
            show(
                f"G_{locale.name}(b)",
                ["b", "Sections with support b"],
                [[b, ", ".join(fiber)] for b, fiber in presheaf.rows()],
                state,
            )
            reports.append(presheaf.report)
        run.add(InstanceReport(name=locale.name, descriptor=descriptor, reports=reports))

    execute(state, "module sections", build)


@module_app.command("to-matrix")
def module_to_matrix(ctx: typer.Context, source: InputArg) -> None:
    """Gram matrix of a Hilbert basis, with the module round trip verified."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        limits = state.config.limits
        basis_module = basis_for(load_hilbert(source, state), state)
        matrix = matrix_from_module(basis_module)
        show(
            f"Matrix of {basis_module.module.name}",
            ["", *matrix.index],
            [[s, *row] for s, row in zip(matrix.index, matrix.render())],
            state,
        )
        reports = [
            is_projection_matrix(matrix),
            guarded("module round trip", lambda: check_module_roundtrip(basis_module, limits)),
        ]
        descriptor: Descriptor = {"index": ", ".join(matrix.index), "base": matrix.base.name}
        run.add(
            InstanceReport(name=basis_module.module.name, descriptor=descriptor, reports=reports)
        )

    execute(state, "module to-matrix", build)


@hilbert_app.command("check")
def hilbert_check(ctx: typer.Context, source: InputArg) -> None:
    """Inner product axioms; the non-degeneracy flags are reported as classifications."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        hilbert = load_hilbert(source, state)
        descriptor: Descriptor = {
            "nondegenerate": flag(hilbert.nondegenerate.passed, hilbert.nondegenerate.witness),
            "strict": flag(hilbert.strict.passed, hilbert.strict.witness),
            "supported": flag(hilbert.supported.passed, hilbert.supported.witness),
        }
        weak = hilbert.weakly_nondegenerate
        if weak is not None:
            descriptor["weakly nondegenerate"] = flag(weak.passed, weak.witness)
        name = hilbert.module.name
        run.add(InstanceReport(name=name, descriptor=descriptor, reports=[hilbert.axioms]))

    execute(state, "hilbert check", build)


@hilbert_app.command("basis")
def hilbert_basis(
    ctx: typer.Context,
    source: InputArg,
    members: Annotated[list[str], typer.Argument(help="Element labels or indices")],
) -> None:
    """Check that a family is a Hilbert basis and verify the basis lemma on it."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        hilbert = load_hilbert(source, state)
        carrier = hilbert.module.carrier
        family = [parse_ref(carrier, m.strip()) for m in members]
        report = LawReport(subject=f"basis of {hilbert.module.name}")
        verdict = is_hilbert_basis(hilbert, family)
        report.results.append(verdict)
        reports = [report]
        if verdict.passed:
            reports.append(basis_properties(based(hilbert, family)))
        descriptor: Descriptor = {"family": labelled(carrier, family)}
        run.add(InstanceReport(name=hilbert.module.name, descriptor=descriptor, reports=reports))

    execute(state, "hilbert basis", build)


@matrix_app.command("to-module")
def matrix_to_module(ctx: typer.Context, source: InputArg) -> None:
    """The module MB^S of a projection matrix, with the matrix round trip verified."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        limits = state.config.limits
        matrix = load(source, MatrixDoc).build(limits)
        matrix_module = module_from_matrix(matrix, limits)
        base = matrix.base
        show(
            "MB^S",
            ["Element", *matrix.index],
            [
                [label, *(base.labels[v] for v in vector)]
                for label, vector in zip(
                    matrix_module.locale.carrier.labels, matrix_module.vectors
                )
            ],
            state,
        )
        reports = [matrix_module.report, check_matrix_roundtrip(matrix, limits)]
        locale = matrix_module.locale
        descriptor: Descriptor = {
            "elements": locale.size,
            "open": flag(locale.is_open),
            "étale": flag(locale.etale),
        }
        run.add(InstanceReport(name="MB^S", descriptor=descriptor, reports=reports))

    execute(state, "matrix to-module", build)


@hom_app.command("adjoint")
def hom_adjoint(ctx: typer.Context, source: InputArg) -> None:
    """The adjoint h† from a basis of the source, with the adjoint identity checked."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        hom = load(source, HomDoc).build(state.config.limits)
        source_hilbert = support_hilbert(_locale(hom.source))
        target_hilbert = support_hilbert(_locale(hom.target))
        result = adjoint(hom, basis_for(source_hilbert, state), target_hilbert)
        xlab, ylab = hom.source.carrier.labels, hom.target.carrier.labels
        pairs = [[ylab[y], xlab[x]] for y, x in enumerate(result.hom.table)]
        show(f"{result.hom.name}", ["y", f"{result.hom.name}(y)"], pairs, state)
        descriptor: Descriptor = {result.hom.name: ", ".join(f"{y}->{x}" for y, x in pairs)}
        run.add(InstanceReport(name=hom.name, descriptor=descriptor, reports=[result.report]))

    execute(state, "hom adjoint", build)


def _locale(module: BModule) -> BLocale:
    assert isinstance(module, BLocale)
    return module


@hom_app.command("check")
def hom_check(ctx: typer.Context, source: InputArg) -> None:
    """Module-hom laws, with sheaf-hom and adjointability verdicts."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        hom = load(source, HomDoc).build(state.config.limits)
        module_laws = check_module_hom(hom)
        reports = [module_laws]
        descriptor: Descriptor = {"module hom": flag(module_laws.passed)}
        source_locale, target_locale = _locale(hom.source), _locale(hom.target)
        if source_locale.etale and target_locale.etale:
            sheaf = is_sheaf_hom(hom)
            failure = sheaf.failures[0] if sheaf.failures else None
            descriptor["sheaf hom"] = flag(sheaf.passed, failure.law if failure else None)
        try:
            source_based = basis_for(support_hilbert(source_locale), state)
            target_based = basis_for(support_hilbert(target_locale), state)
        except (NoBasis, NotOpen):
            descriptor["adjointable"] = "undefined without Hilbert bases"
        else:
            iff = is_adjointable_iff_hom_check(hom.table, source_based, target_based, hom.name)
            # the verdicts agree exactly when the iff law holds
            descriptor["adjointable"] = flag(module_laws.passed == iff.passed)
            reports.append(iff)
        run.add(InstanceReport(name=hom.name, descriptor=descriptor, reports=reports))

    execute(state, "hom check", build)


@map_app.command("dagger-check")
def map_dagger_check(ctx: typer.Context, source: InputArg) -> None:
    """Check f_! = (f*)† and f* = (f_!)† for a map of étale B-locales."""
    state: State = ctx.obj

    def build(run: RunReport) -> None:
        fmap = load(source, MapDoc).build(state.config.limits)
        report = check_dagger_is_direct_image(fmap)
        descriptor: Descriptor = {
            "source": fmap.source.name,
            "target": fmap.target.name,
        }
        run.add(InstanceReport(name=fmap.name, descriptor=descriptor, reports=[report]))

    execute(state, "map dagger-check", build)


@suite_app.command("run")
def suite_run(
    ctx: typer.Context,
    seed: Annotated[
        int | None,
        typer.Option("--seed", "-s", help="First seed of the run"),
    ] = None,
    count: Annotated[
        int | None,
        typer.Option("--count", "-n", help="Number of seeded instances after the fixtures"),
    ] = None,
) -> None:
    """Fixtures plus seeded random instances through every law check and the oracle."""
    state: State = ctx.obj
    suite = state.config.suite
    first = suite.seed if seed is None else seed
    total = suite.count if count is None else count
    if first < 0 or total < 0:
        err_console.print("[red]Error:[/red] --seed and --count must be non-negative")
        raise typer.Exit(2)

    engine = SuiteEngine(config=state.config, console=err_console)
    start = time.perf_counter()
    try:
        show_progress = not state.json and err_console.is_terminal
        run = engine.run(first, total, show_progress=show_progress)
    except SheafModError as e:
        err_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(2)
    render(run, time.perf_counter() - start, state)
    raise typer.Exit(0 if run.passed else 1)


@export_app.command("dot")
def export_dot(
    ctx: typer.Context,
    source: InputArg,
    what: Annotated[
        DotSubject,
        typer.Option("--what", "-w", help="Read the document as a frame or a module"),
    ] = DotSubject.FRAME,
) -> None:
    """Print the Hasse diagram of a frame or a module carrier as DOT source."""
    state: State = ctx.obj
    try:
        if what is DotSubject.MODULE and fixture_name(source) is None:
            lattice = load_module(source, state).carrier
        else:
            lattice = load_lattice(source, state)
    except SheafModError as e:
        err_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(2)
    typer.echo(hasse_dot(lattice))
