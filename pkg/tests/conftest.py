"""Shared fixtures."""

import pytest
from typer.testing import CliRunner

from sheafmod.bmodule import BLocale, blocale_from_map, free_module
from sheafmod.config import LimitsConfig
from sheafmod.lattice import Frame, boolean_frame, chain_frame, diamond_frame


@pytest.fixture
def limits() -> LimitsConfig:
    return LimitsConfig()


@pytest.fixture
def b2() -> Frame:
    return boolean_frame()


@pytest.fixture
def bd() -> Frame:
    return diamond_frame()


@pytest.fixture
def chain() -> Frame:
    return chain_frame()


@pytest.fixture
def free2(b2: Frame) -> BLocale:
    return free_module(b2, 2, name="FREE2")


@pytest.fixture
def chain3(b2: Frame, chain: Frame) -> BLocale:
    return blocale_from_map(b2, chain, [0, 2], name="CHAIN3")


@pytest.fixture
def ident(bd: Frame) -> BLocale:
    return blocale_from_map(bd, bd, list(range(bd.size)), name="IDENT")


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()

