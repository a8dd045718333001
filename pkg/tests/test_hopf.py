from itertools import product

import pytest
from hypothesis import given, strategies as st

from omega_pseudoalg.exactla import ONE, ZERO
from omega_pseudoalg.hopf import (KindMismatch, NotAGroup, NotAssociative, NotCommutative,
                                  UnitNotNeutral, cyclic_table, iterated_comult,
                                  make_group_algebra, make_hopf, make_semigroup,
                                  make_substructure, omega2, product_table, trivial_hopf,
                                  trivial_semigroup, verify_hopf)

GROUPS = {
    "trivial": [[0]],
    "Z2": cyclic_table(2),
    "Z3": cyclic_table(3),
    "Z2xZ2": product_table(cyclic_table(2), cyclic_table(2)),
}


def raw(h):
    """The structure maps of h as plain mutable lists (dense comultiplication)."""
    d = h.dim
    mult = [[list(h.mult[i][j]) for j in range(d)] for i in range(d)]
    comult = [[h.comult[i].get((j, k), ZERO) for j in range(d) for k in range(d)] for i in range(d)]
    return dict(dim=d, mult=mult, unit=list(h.unit), comult=comult, counit=list(h.counit),
                antipode=[list(r) for r in h.antipode])


def corruptions(h):
    """One perturbed tensor entry at a time, over every structure map."""
    d = h.dim
    for i, j, k in product(range(d), repeat=3):
        yield ("mult", (i, j, k)), lambda r, i=i, j=j, k=k: r["mult"][i][j].__setitem__(k, r["mult"][i][j][k] + 1)
    for i in range(d):
        yield ("unit", (i,)), lambda r, i=i: r["unit"].__setitem__(i, r["unit"][i] + 1)
        yield ("counit", (i,)), lambda r, i=i: r["counit"].__setitem__(i, r["counit"][i] + 1)
        for p in range(d * d):
            yield ("comult", (i, p)), lambda r, i=i, p=p: r["comult"][i].__setitem__(p, r["comult"][i][p] + 1)
        for j in range(d):
            yield ("antipode", (i, j)), lambda r, i=i, j=j: r["antipode"][i].__setitem__(j, r["antipode"][i][j] + 1)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_group_algebras_pass(name):
    h = make_group_algebra(GROUPS[name], name=name)
    assert h.dim == len(GROUPS[name])
    assert verify_hopf(h) == []


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_every_single_entry_corruption_fails(name):
    h = make_group_algebra(GROUPS[name])
    for where, mutate in corruptions(h):
        r = raw(h)
        mutate(r)
        bad = make_hopf(**r)
        fails = verify_hopf(bad)
        assert fails, where
        assert all(f.witness is not None for f in fails)


def test_trivial_group_structure_maps_are_scalar_one():
    h = trivial_hopf()
    assert h.dim == 1 and h.unit == (ONE,) and h.counit == (ONE,)
    assert h.antipode == ((ONE,),) and h.comult[0] == {(0, 0): ONE}


def test_z2_antipode_is_identity():
    h = make_group_algebra(cyclic_table(2))
    assert h.antipode == ((ONE, ZERO), (ZERO, ONE))


def test_z3_s_squared_identity_and_cocommutative():
    h = make_group_algebra(cyclic_table(3))
    for i in range(3):
        assert h.S(h.S(h.basis(i))) == h.basis(i)
        assert {(b, a): c for (a, b), c in h.comult[i].items()} == h.comult[i]


def test_corrupted_comultiplication_witness_g():
    h = make_group_algebra(cyclic_table(2))
    r = raw(h)
    r["comult"][1] = [0, 0, 1, 0]        # Delta(g) = g (x) e
    fails = verify_hopf(make_hopf(**r))
    axioms = {f.axiom for f in fails if f.witness == (1,)}
    assert axioms & {"cocommutativity", "counit"}


def test_unit_law_failure():
    h = make_hopf(1, [[[2]]], [1], [[1]], [1], [[1]])
    assert "unit" in {f.axiom for f in verify_hopf(h)}


def test_iterated_comult_examples():
    h = make_group_algebra(cyclic_table(2))
    g = h.basis(1)
    assert iterated_comult(h, 1, g) == {(1,): ONE}
    assert iterated_comult(h, 3, g) == {(1, 1, 1): ONE}


@given(st.sampled_from(sorted(GROUPS)), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_counit_law_on_elements(name, coeffs):
    h = make_group_algebra(GROUPS[name])
    x = tuple(coeffs[:h.dim]) + (0,) * (h.dim - len(coeffs[:h.dim]))
    left = [ZERO] * h.dim
    for (a, b), c in iterated_comult(h, 2, x).items():
        left[b] += h.counit[a] * c
    assert tuple(left) == x


def test_not_a_group():
    with pytest.raises(NotAGroup):
        make_group_algebra([[0, 0], [0, 0]])


def test_semigroups():
    one = trivial_semigroup()
    assert one.size == 1 and one.mul(0, 0) == 0
    om = omega2()
    assert om.size == 2 and om.commutative and om.unit == 0
    assert om.mul(1, 1) == 1 and om.mul(0, 1) == 1
    with pytest.raises(NotAssociative):
        make_semigroup([[1, 0], [0, 0]])
    with pytest.raises(UnitNotNeutral):
        make_semigroup([[0, 0], [0, 1]], unit=0)
    with pytest.raises(NotCommutative):
        make_semigroup([[0, 0], [1, 1]], commutative=True)


def test_substructures():
    h = make_group_algebra(cyclic_table(2))
    e, g = h.basis(0), h.basis(1)
    assert make_substructure(h, [e], "subbialgebra").dim == 1
    assert make_substructure(h, [e, g], "subbialgebra").dim == 2
    with pytest.raises(KindMismatch):
        make_substructure(h, [tuple(a + b for a, b in zip(e, g))], "subcoalgebra")
    with pytest.raises(KindMismatch):
        make_substructure(h, [g], "subbialgebra")
