from __future__ import annotations

import sys

import pytest

from openmf.category import builtin


@pytest.fixture(scope="session")
def z2():
    return builtin("Z2")


@pytest.fixture(scope="session")
def z3():
    return builtin("Z3")


@pytest.fixture(scope="session")
def fib():
    return builtin("Fib")


@pytest.fixture(scope="session")
def tl2():
    return builtin("TL", 2)


@pytest.fixture(scope="session")
def tl3():
    return builtin("TL", 3)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
