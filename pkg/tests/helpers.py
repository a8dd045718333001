"""Shared helpers: shipped fixtures and small structures over H = k."""

import os
from functools import lru_cache

from omega_pseudoalg.definition import load
from omega_pseudoalg.hopf import trivial_hopf, trivial_semigroup
from omega_pseudoalg.hspaces import free_module
from omega_pseudoalg.pseudo import make_structure

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)
FIXTURES = os.path.join(ROOT, "fixtures")

# fixture file -> documented exit status of `verify`
EXPECTED_EXIT = {
    "fix_k_a2.json": 0,
    "defquad.json": 0,
    "deform_a2.json": 0,
    "kxk.json": 0,
    "c2_omega2_a2.json": 0,
    "c2_poisson_jet.json": 0,
    "c2_operators.json": 0,
    "c2_zinbiel.json": 0,
    "broken_rational.json": 2,
    "broken_dangling.json": 2,
    "broken_schema.json": 2,
    "broken_assoc.json": 1,
    "broken_jet.json": 1,
    "broken_hopf.json": 1,
}
GOOD = sorted(f for f, c in EXPECTED_EXIT.items() if c == 0)


def fixture_path(name):
    return os.path.join(FIXTURES, name)


@lru_cache(maxsize=None)
def doc(name):
    """Parsed shipped fixture, one object per file (cochain caches key on identity)."""
    return load(fixture_path(name))


def k_structure(mult, variety="associative", omega=None, name="A"):
    """Structure over H = k from plain structure constants mult[i][j] (or {(a, b): mult})."""
    omega = omega or trivial_semigroup()
    tabs = mult if isinstance(mult, dict) else {(0, 0): mult}
    n = len(next(iter(tabs.values())))
    carrier = free_module(trivial_hopf(), n, name=name)
    tables = {ab: {(i, j): list(m[i][j]) for i in range(n) for j in range(n)}
              for ab, m in tabs.items()}
    return make_structure(carrier, omega, {"star": tables}, variety, name=name)


# k[x]/(x^2) on 1, x and k x k on the two idempotents
DUAL = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
KXK = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]

