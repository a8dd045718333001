"""
Acceptance criteria, one test per criterion.  The one-line verdicts are
printed in the terminal summary by conftest.py (they appear once per
criterion, after the test run).
"""

import pytest

import suites

RESULTS = {}


@pytest.mark.parametrize("number", [n for n, *_ in suites.SUITES],
                         ids=["criterion_%02d_%s" % (n, t.replace(" ", "_")) for n, t, *_ in suites.SUITES])
def test_acceptance_criterion(number):
    outcome = suites.run(number)
    RESULTS[number] = outcome
    detail = "\n".join("  %s %s" % (c.label, c.detail) for c in outcome.failures)
    assert outcome.ok, outcome.line() + "\n" + detail
