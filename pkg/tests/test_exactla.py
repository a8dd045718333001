from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from omega_pseudoalg.exactla import (ColumnSolver, Matrix, Q, RowReducer, nullspace, rank, rref,
                                     solve)

small = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_q_parses_strings_and_rejects_bools():
    assert Q("3/6") == Fraction(1, 2)
    assert Q(" -4 ") == -4
    with pytest.raises(ZeroDivisionError):
        Q("1/0")
    with pytest.raises(TypeError):
        Q(True)
    with pytest.raises(TypeError):
        Q(0.5)


def test_rref_examples():
    m, piv = rref(Matrix.identity(2))
    assert m == Matrix.identity(2) and piv == [0, 1]
    m, piv = rref(Matrix.zeros(3, 3))
    assert m == Matrix.zeros(3, 3) and piv == []
    m, piv = rref([[1, 2], [2, 4]])
    assert m == Matrix([[1, 2], [0, 0]]) and piv == [0]


def test_nullspace_examples():
    assert nullspace(Matrix.identity(3)).cols == 0
    assert nullspace(Matrix.zeros(2, 3)).cols == 3
    ns = nullspace([[1, 1, 0]])
    assert ns.cols == 2
    for v in ns.columns():
        assert Matrix([[1, 1, 0]]) @ v == [0]


def test_solve_examples():
    assert solve(Matrix.identity(3), [1, 2, 3]) == [1, 2, 3]
    assert solve(Matrix.zeros(2, 2), [1, 0]) is None
    assert solve([[2]], [1]) == [Fraction(1, 2)]


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(matrices())
def test_rref_matches_sympy(rows):
    m, piv = rref(rows)
    ref, spiv = sympy.Matrix(rows).rref()
    assert piv == list(spiv)
    for i in range(len(rows)):
        for j in range(len(rows[0])):
            assert m[i, j] == Fraction(int(ref[i, j].p), int(ref[i, j].q))


@given(matrices())
def test_nullspace_is_annihilated_and_complete(rows):
    ns = nullspace(rows)
    for v in ns.columns():
        assert Matrix(rows) @ v == [0] * len(rows)
    assert ns.cols == len(rows[0]) - rank(rows)


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_round_trip(rows, x0):
    x0 = x0[:len(rows[0])]
    b = Matrix(rows) @ x0
    x = solve(rows, b)
    assert x is not None and Matrix(rows) @ x == b


@given(matrices())
def test_row_reducer_order_independent(rows):
    a, b = RowReducer(len(rows[0])), RowReducer(len(rows[0]))
    sp = [{j: Q(v) for j, v in enumerate(r) if v} for r in rows]
    for r in sp:
        a.add(r)
    for r in reversed(sp):
        b.add(r)
    assert a.pivots == b.pivots


@settings(max_examples=50)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_column_solver(cols):
    red = RowReducer(3)
    indep = []
    for c in cols:
        if red.add({i: Q(v) for i, v in enumerate(c) if v}):
            indep.append({i: Q(v) for i, v in enumerate(c) if v})
    if not indep:
        return
    cs = ColumnSolver(indep, 3)
    b = {}
    for k, c in enumerate(indep):
        for i, v in c.items():
            b[i] = b.get(i, 0) + (k + 1) * v
    b = {i: v for i, v in b.items() if v}
    assert cs.solve(b) == [k + 1 for k in range(len(indep))]


def test_column_solver_rejects_dependent_columns():
    with pytest.raises(ValueError):
        ColumnSolver([{0: Q(1)}, {0: Q(2)}], 1)


def test_settings_from_env():
    from omega_pseudoalg.config import Settings
    assert Settings.from_env({}).threads == 1
    assert Settings.from_env({"OMEGA_PSEUDOALG_THREADS": "4"}).threads == 4
    assert Settings.from_env({"OMEGA_PSEUDOALG_THREADS": "x"}).threads == 1
    assert Settings().degree_cap == 3
