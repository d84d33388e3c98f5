"""Tests for the seeded verification battery."""

import pytest
from rich.console import Console

from sheafmod.config import AppConfig, LimitsConfig, SuiteConfig
from sheafmod.errors import SizeExceeded
from sheafmod.genfix import FIXTURES, fixture
from sheafmod.report import LawReport
from sheafmod.suite import SuiteEngine, guarded


@pytest.fixture
def engine() -> SuiteEngine:
    config = AppConfig(limits=LimitsConfig(), suite=SuiteConfig(random_tables=20))
    return SuiteEngine(config=config, console=Console(stderr=True))


@pytest.mark.parametrize("name", list(FIXTURES))
def test_every_fixture_passes(engine: SuiteEngine, name: str):
    instance = engine.check_fixture(fixture(name))
    assert instance.passed, [r.failures for r in instance.reports]


def test_seeded_instances_pass(engine: SuiteEngine):
    for seed in (0, 1, 2):
        instance = engine.check_seed(seed)
        assert instance.passed, [r.failures for r in instance.reports]
        assert instance.name == f"seed {seed}"


def test_run_includes_fixtures_and_corpus(engine: SuiteEngine):
    run = engine.run(7, 2, show_progress=False)
    names = [instance.name for instance in run.instances]
    assert names[: len(FIXTURES)] == list(FIXTURES)
    assert names[-3:] == ["seed 7", "seed 8", "corpus"]
    assert run.passed


def test_run_is_deterministic(engine: SuiteEngine):
    first = engine.run(3, 1, show_progress=False)
    second = engine.run(3, 1, show_progress=False)
    assert first.model_dump_json() == second.model_dump_json()


def test_guarded_turns_size_errors_into_skips():
    def build() -> LawReport:
        raise SizeExceeded("too big")

    report = guarded("huge check", build)
    assert report.passed
    assert report.results[0].note == "skipped: too big"
