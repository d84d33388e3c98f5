"""Orchestration of the seeded verification battery."""

import logging
from collections.abc import Callable

import numpy as np
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn

from sheafmod.bmodule import (
    check_map_roundtrip,
    check_meet_distribution,
    check_open_conditions,
    check_stability,
    check_support_characterization,
    identity_hom,
    join_homs,
    zero_hom,
)
from sheafmod.config import AppConfig, LimitsConfig, load_config
from sheafmod.errors import SizeExceeded
from sheafmod.genfix import (
    EtaleInstance,
    Fixture,
    PresheafMap,
    etale_from_presheaf,
    etale_map,
    fixtures,
    oracle_verify,
    oracle_verify_map,
    principal_basis,
    random_etale_instance,
    random_presheaf_map,
    random_projection_matrix,
    sibling_presheaf_map,
)
from sheafmod.hilbert import (
    BasedModule,
    basis_properties,
    check_basis_converse,
    etale_based,
    etale_equivalence_check,
    projectivity_split,
    support_hilbert,
)
from sheafmod.homs import (
    check_dagger_is_direct_image,
    check_dagger_is_transpose,
    check_meet_preservation,
    check_section_meet_lemmas,
    check_strong_duality,
    direct_image,
    functor_S_iso_check,
    identity_map,
    is_adjointable_iff_hom_check,
    make_sheaf_hom,
    presheaf_of_hom,
    sections_presheaf,
)
from sheafmod.lattice import verify_frame
from sheafmod.matrix import (
    check_functor_M,
    check_matrix_roundtrip,
    check_module_roundtrip,
    check_round_trips,
    check_self_duality,
    identity,
    is_projection_matrix,
)
from sheafmod.report import InstanceReport, LawReport, RunReport

logger = logging.getLogger(__name__)

NEGATIVE_LAW = "not a sheaf hom, so h† is not a map of B-locales"


def guarded(subject: str, build: Callable[[], LawReport]) -> LawReport:
    """Run a check that enumerates B^S, recording a skip when it exceeds the guardrails."""
    try:
        return build()
    except SizeExceeded as exc:
        logger.debug("%s skipped: %s", subject, exc)
        report = LawReport(subject=subject)
        report.check("within guardrails", True, note=f"skipped: {exc}")
        return report


class SuiteEngine:
    """Generates instances from consecutive seeds and runs every law check on them."""

    def __init__(self, config: AppConfig | None = None, console: Console | None = None):
        self.config = config or load_config()
        self.console = console or Console(stderr=True)
        self._fixtures: dict[str, Fixture] | None = None

    @property
    def limits(self) -> LimitsConfig:
        return self.config.limits

    @property
    def fixtures(self) -> dict[str, Fixture]:
        """Lazy-load the fixture library."""
        if self._fixtures is None:
            self._fixtures = fixtures()
        return self._fixtures

    def check_fixture(self, fx: Fixture) -> InstanceReport:
        """Oracle diff plus the fixture's own report and, for B-locales, the equivalence."""
        subject = fx.module if fx.module is not None else fx.lattice
        reports = [oracle_verify(subject, self.limits)]
        if fx.report is not None:
            reports.append(fx.report)
        if fx.locale is not None:
            reports.append(etale_equivalence_check(fx.locale, self.limits).report)
            reports.append(check_map_roundtrip(fx.locale))
            if fx.locale.etale:
                locale = fx.locale
                reports.append(sections_presheaf(locale).report)
                reports.append(oracle_verify_map(identity_map(locale)))
                candidates = [identity_hom(locale), zero_hom(locale, locale)]
                reports.append(
                    functor_S_iso_check([identity_map(locale)], candidates, self.limits)
                )
        return InstanceReport(name=fx.name, descriptor=fx.descriptor(), reports=reports)

    def generate(self, seed: int) -> tuple[EtaleInstance, EtaleInstance, PresheafMap, int]:
        """Source instance, a random presheaf map out of it with its target, and a spare seed."""
        rng = np.random.default_rng(seed)
        source = random_etale_instance(int(rng.integers(0, 2**63)), self.limits, name="X")
        map_seed = int(rng.integers(0, 2**63))
        transformation = random_presheaf_map(map_seed, source.presheaf, self.limits)
        target = etale_from_presheaf(
            transformation.target, self.limits, name="Y", base=source.base, seed=map_seed
        )
        return source, target, transformation, int(rng.integers(0, 2**63))

    def random_tables(self, seed: int, source: BasedModule, target: BasedModule) -> LawReport:
        """Adjointable iff module hom on random function tables; most should fail both."""
        count = self.config.suite.random_tables
        rng = np.random.default_rng(seed)
        report = LawReport(subject=f"adjointable iff hom on {count} random tables")
        homs = 0
        for k in range(count):
            table = rng.integers(0, target.module.size, source.module.size)
            verdict = is_adjointable_iff_hom_check(table, source, target, name=f"t{k}")
            if not verdict.passed:
                report.extend(verdict, prefix=f"t{k}")
            elif verdict.results[0].note == "hom=True, adjointable=True":
                homs += 1
        report.check(
            "adjointable iff module hom",
            report.passed,
            note=f"{homs} of {count} tables were module homs",
        )
        return report

    def check_seed(self, seed: int) -> InstanceReport:
        """The full battery on the instances generated from ``seed``."""
        limits = self.limits
        source, target, transformation, spare = self.generate(seed)
        rng = np.random.default_rng(spare)
        fmap = etale_map(source, target, transformation)
        x, y = source.locale, target.locale
        reports: list[LawReport] = []

        # frames, modules and supports
        reports.append(verify_frame(x.base, limits))
        reports.append(verify_frame(x.carrier, limits))
        reports.append(check_map_roundtrip(x))
        reports.append(check_open_conditions(x, x.spp))
        reports.append(check_support_characterization(x, x.spp))
        reports.append(check_meet_distribution(x))
        reports.append(source.report)

        # Hilbert structure
        hilbert = support_hilbert(x)
        reports.append(hilbert.axioms)
        reports.append(check_stability(x))
        reports.append(hilbert.flags())
        canonical, canonical_y = etale_based(x), etale_based(y)
        reports.append(basis_properties(canonical))
        reports.append(check_basis_converse(hilbert, x.sections))
        reports.append(etale_equivalence_check(x, limits).report)
        small_x, small_y = principal_basis(source), principal_basis(target)
        reports.append(basis_properties(small_x))
        reports.append(
            guarded("projectivity split", lambda: projectivity_split(small_x, limits).report)
        )

        # matrices
        reports.append(
            guarded("module round trip", lambda: check_module_roundtrip(small_x, limits))
        )
        matrix_seed, k = int(rng.integers(0, 2**63)), int(rng.integers(0, 4))
        matrix = random_projection_matrix(matrix_seed, k, limits)
        reports.append(is_projection_matrix(matrix))
        reports.append(
            guarded("matrix round trip", lambda: check_matrix_roundtrip(matrix, limits))
        )
        reports.append(check_self_duality(identity(matrix)))

        # adjoints, direct images and sheaf homs
        shriek, adjunction = direct_image(fmap)
        reports.append(adjunction)
        reports.append(check_dagger_is_direct_image(fmap))
        reports.append(check_dagger_is_transpose(shriek, small_x, small_y))
        reports.append(
            check_strong_duality(identity_hom(y), shriek, canonical, canonical_y, canonical_y)
        )
        reports.append(
            guarded(
                "functor M",
                lambda: check_functor_M(identity_hom(y), shriek, small_x, small_y, small_y),
            )
        )
        reports.append(
            guarded("M/X round trips", lambda: check_round_trips(shriek, small_x, small_y, limits))
        )
        sheaf_hom = make_sheaf_hom(shriek)
        reports.append(sheaf_hom.report)
        reports.append(check_meet_preservation(sheaf_hom, limits, seed))
        reports.append(check_section_meet_lemmas(y, limits, seed))
        reports.append(sections_presheaf(x).report)
        reports.append(presheaf_of_hom(sheaf_hom).report)

        candidates = [zero_hom(x, y), identity_hom(x), identity_hom(y)]
        sibling = sibling_presheaf_map(int(rng.integers(0, 2**63)), transformation)
        other, _ = direct_image(etale_map(source, target, sibling, name="g"))
        if not np.array_equal(other.table, shriek.table):
            candidates += [other, join_homs(shriek, other)]
        reports.append(functor_S_iso_check([fmap, identity_map(x)], candidates, limits, seed))
        reports.append(self.random_tables(seed, canonical, canonical_y))

        reports.append(oracle_verify(x, limits))
        reports.append(oracle_verify(y, limits))
        reports.append(oracle_verify_map(fmap))
        descriptor = source.descriptor() | {"target carrier": y.size, "matrix": matrix.size}
        return InstanceReport(name=f"seed {seed}", descriptor=descriptor, reports=reports)

    def corpus_report(self, run: RunReport) -> InstanceReport:
        """Laws that hold over the whole corpus rather than per instance."""
        report = LawReport(subject="corpus")
        witnesses = [
            result.law
            for instance in run.instances
            for law_report in instance.reports
            for result in law_report.results
            if result.law.endswith(NEGATIVE_LAW) and result.passed
        ]
        report.check(
            "a module hom outside the sheaf homs fails to define a map",
            bool(witnesses),
            "no negative witness in the corpus",
            note=f"{len(witnesses)} negative witnesses",
        )
        descriptor: dict[str, int | str] = {"instances": len(run.instances)}
        return InstanceReport(name="corpus", descriptor=descriptor, reports=[report])

    def run(self, seed: int, count: int, show_progress: bool = True) -> RunReport:
        """Fixtures first, then ``count`` instances from seeds seed, seed + 1, ..."""
        run = RunReport(command="suite run", seed=seed)
        total = len(self.fixtures) + count

        def battery(advance: Callable[[], None]) -> None:
            for fx in self.fixtures.values():
                run.add(self.check_fixture(fx))
                advance()
            for i in range(count):
                run.add(self.check_seed(seed + i))
                advance()

        if show_progress:
            with Progress(
                SpinnerColumn(),
                TextColumn("[progress.description]{task.description}"),
                BarColumn(),
                TaskProgressColumn(),
                console=self.console,
            ) as progress:
                task = progress.add_task("Checking instances...", total=total)
                battery(lambda: progress.advance(task))
        else:
            battery(lambda: None)

        run.add(self.corpus_report(run))
        failed = sum(not instance.passed for instance in run.instances)
        logger.info("suite run: %d instances, %d failing", len(run.instances), failed)
        return run
