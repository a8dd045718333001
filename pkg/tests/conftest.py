import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import DUAL, KXK, k_structure  # noqa: E402


@pytest.fixture
def dual():
    return k_structure(DUAL, "commutative", name="A2")


@pytest.fixture
def kxk():
    return k_structure(KXK, "commutative", name="KK")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n].line())
