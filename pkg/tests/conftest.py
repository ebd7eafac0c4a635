import functools

import pytest

from stampfold.folding import brute_force_foldings
from stampfold.sequences import load_reference_tables

# filled by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="also run the n = 13, 14 enumerations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def brute(n):
    return tuple(f.listing for f in brute_force_foldings(n))


@pytest.fixture(scope="session")
def tables():
    return load_reference_tables()
