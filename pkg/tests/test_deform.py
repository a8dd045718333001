import random
from itertools import product

import pytest

import oracle
from helpers import DUAL, doc, k_structure
from omega_pseudoalg.deform import (BaseNotCommutative, Extension, JetInvalid, JetOrderTooLow,
                                    bracket_table, check_jet, current_jet, find_first_order_equivalence,
                                    first_order_equivalent, make_jet, obstruction, poisson_extract,
                                    rigidity_report, shifted_jet, solve_in_image)
from omega_pseudoalg.exactla import Q
from omega_pseudoalg.pseudo import check_variety

UT = [[[1, 0, 0], [0, 1, 0], [0, 0, 0]],
      [[0, 0, 0], [0, 0, 0], [0, 1, 0]],
      [[0, 0, 0], [0, 0, 0], [0, 0, 1]]]


def dual_jet(*terms):
    s = k_structure(DUAL, "commutative")
    return make_jet(s, [{(0, 0): {(i, j): t[i][j] for i in range(2) for j in range(2)}} for t in terms])


def test_fixture_jets_pass():
    for f, n in [("defquad.json", "J"), ("defquad.json", "J2"), ("deform_a2.json", "Q"),
                 ("kxk.json", "Z"), ("c2_poisson_jet.json", "CJ")]:
        r = check_jet(doc(f).jets[n])
        assert r.ok and r.paths_agree, (f, n)


def test_both_cocycle_paths_agree_on_every_small_t1():
    agree = 0
    for c in product(range(-1, 2), repeat=4):
        # T1(e_i, e_j) = c[2i + j] * x
        j = dual_jet([[[0, c[0]], [0, c[1]]], [[0, c[2]], [0, c[3]]]])
        r = check_jet(j)
        assert r.paths_agree, c
        agree += r.cocycle_by_equation
    assert 0 < agree < 81


def test_noncocycle_fails_with_witness():
    r = check_jet(doc("broken_jet.json").jets["Jbad"])
    assert not r.ok and not r.cocycle_by_differential and not r.cocycle_by_equation
    bad = [x for res in r.report.results if not res.ok for x in res.failures]
    assert bad


def test_order_too_low():
    with pytest.raises(JetOrderTooLow):
        check_jet(doc("deform_a2.json").jets["Q"], 5)


def test_invalid_base():
    s = k_structure([[[0, 1], [0, 0]], [[1, 0], [0, 0]]], "associative")
    with pytest.raises(JetInvalid):
        make_jet(s, [])


def test_extension_of_truncation():
    j = doc("deform_a2.json").jets["Q"]
    ext = obstruction(make_jet(j.base, [j.terms[0]], "Q1"))
    assert isinstance(ext, Extension)
    assert check_jet(ext.jet).ok and ext.jet.order == 2


def test_solve_in_image():
    cols = [{0: Q(1)}, {0: Q(1), 1: Q(1)}]
    x = solve_in_image(cols, 3, {0: Q(2), 1: Q(1)})
    assert x is not None and list(x) == [Q(1), Q(1)]
    assert solve_in_image(cols, 3, {2: Q(1)}) is None


def test_equivalence_recovered():
    j = doc("deform_a2.json").jets["Q"]
    rng = random.Random(3)
    maps = {0: [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]}
    j2 = shifted_jet(j, maps)
    assert first_order_equivalent(j, j2, maps).ok
    phi = find_first_order_equivalence(j, j2)
    assert phi is not None and first_order_equivalent(j, j2, phi).ok
    assert find_first_order_equivalence(j, make_jet(j.base, [{}])) is None


def test_rigidity():
    kk = rigidity_report(doc("kxk.json").structures["KK"])
    assert kk.rigid and "RIGID" in kk.line()
    ut = rigidity_report(k_structure(UT, "associative", name="UT"))
    assert ut.h2 == oracle.hochschild_dims(UT, 2)[2]
    a2 = rigidity_report(k_structure(DUAL, "associative", name="A2"))
    assert not a2.rigid and "INCONCLUSIVE (dim H^2 = 1)" in a2.line()


def test_poisson_bracket_of_defquad():
    j = doc("defquad.json").jets["J"]
    P, rep = poisson_extract(j, with_report=True)
    assert rep.ok and check_variety(P, "poisson").ok
    tab = bracket_table(j)
    assert any(tab[(0, 0)].values())


def test_poisson_needs_commutative_base():
    s = k_structure(UT, "associative", name="UT")
    with pytest.raises(BaseNotCommutative):
        poisson_extract(make_jet(s, [{}]))


def test_current_jet_lift():
    h = doc("c2_omega2_a2.json").hopf["C2"]
    j = current_jet(h, doc("deform_a2.json").jets["Q"])
    assert j.base.dim == 4 and check_jet(j).ok
