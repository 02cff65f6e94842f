"""
Shared fixtures and pytest configuration.
Long acceptance runs are marked slow and only run with --runslow.
"""

import json
import os
import shutil

import pytest
from hypothesis import HealthCheck, settings

from syncword.database import make_session_factory
from syncword.dfa import Dfa, cerny
from syncword.enumeration import enumerate_automata
from syncword.schemas import SearchSpec
from syncword.utils import FIXTURES_DIR

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.register_profile(
    "acceptance",
    max_examples=10_000,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: minutes-long acceptance run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def c3():
    return cerny(3)


@pytest.fixture
def c4():
    return cerny(4)


@pytest.fixture
def rotation():
    """A single cyclic letter: a permutation automaton, never synchronizing."""
    return Dfa(((1, 2, 0),))


@pytest.fixture
def db_session():
    """In-memory checkpoint store."""
    db = make_session_factory("sqlite://")()
    try:
        yield db
    finally:
        db.close()


@pytest.fixture
def fixtures_dir(tmp_path):
    """A private fixtures directory holding only a copy of the shipped manifest."""
    target = tmp_path / "fixtures"
    target.mkdir()
    shutil.copy(FIXTURES_DIR / "manifest.json", target / "manifest.json")
    return target


@pytest.fixture(scope="session")
def report_3_3():
    return enumerate_automata(SearchSpec(n=3, q=3))


@pytest.fixture(scope="session")
def report_4_2():
    return enumerate_automata(SearchSpec(n=4, q=2))


@pytest.fixture(scope="session")
def shipped_manifest():
    return json.loads((FIXTURES_DIR / "manifest.json").read_text(encoding="utf-8"))
