from itertools import product

import pytest

import oracle
from helpers import DUAL, doc, k_structure
from suites import kvec, upper_triangular
from omega_pseudoalg import construct as C
from omega_pseudoalg.hopf import omega2, trivial_hopf, trivial_semigroup
from omega_pseudoalg.hspaces import free_module
from omega_pseudoalg.pseudo import check_variety, make_structure, tables_equal


def c2():
    d = doc("c2_omega2_a2.json")
    return d.hopf["C2"], d.ordinary["A2"]


def test_pack_roundtrip_on_fixture():
    s = doc("c2_omega2_a2.json").structures["CA2"]
    p = C.semigroup_pack(s)
    assert p.dim == s.dim * s.omega.size and p.omega.size == 1
    assert check_variety(p).ok
    assert tables_equal(C.semigroup_unpack(p, s.omega, s.carrier, s.variety), s)


def test_current_dimensions():
    h, a = c2()
    assert C.current(h, C.unit_substructure(h), a).dim == 4
    big = C.current(h, C.whole_substructure(h), a)
    assert big.dim == 8 and check_variety(big).ok


def test_current_rejects_failing_input():
    h, _ = c2()
    bad = C.make_ordinary(2, omega2(), {"star": {(a, b): [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]
                                                 for a in range(2) for b in range(2)}},
                          "associative")
    with pytest.raises(C.VarietyCheckFailed):
        C.current(h, C.unit_substructure(h), bad)


def test_rb_lift_and_identity_failure():
    d = doc("c2_omega2_a2.json")
    h = d.hopf["C2"]
    assert check_variety(C.rota_baxter_lift(h, C.unit_substructure(h), d.ordinary["A2rb"])).ok
    # P = id is a Rota-Baxter operator of weight -1, not of weight 1
    bad = C.make_ordinary(2, omega2(), {"star": d.ordinary["A2"].products["star"]}, "commutative",
                          rb={0: [[1, 0], [0, 1]], 1: [[1, 0], [0, 1]]}, weight=1)
    with pytest.raises(C.RBIdentityFailed):
        C.rota_baxter_lift(h, C.unit_substructure(h), bad)


def test_commutator_of_matrices_matches_classical():
    ut = k_structure(upper_triangular(), "associative", name="UT")
    lie = C.commutator_lie(ut)
    B = [oracle.basis(3, x) for x in range(3)]
    for i, j in product(range(3), repeat=2):
        want = [a - b for a, b in zip(oracle.mul(upper_triangular(), B[i], B[j]),
                                      oracle.mul(upper_triangular(), B[j], B[i]))]
        assert kvec(lie.value("star", 0, 0, i, j), 3) == want
    assert check_variety(lie).ok


def test_zinbiel_chain():
    zin = doc("c2_zinbiel.json").structures["Zin"]
    d = C.zinbiel_bridge(zin, "to-dendriform")
    assert check_variety(d).ok
    assert tables_equal(C.zinbiel_bridge(d, "to-zinbiel"), zin)
    assert check_variety(C.zinbiel_bridge(zin, "symmetrize"), "commutative").ok


def test_symmetry_hypothesis_failure():
    # prec = 0, succ = the dual numbers product: dendriform, but succ is not the flipped prec
    n = 2
    carrier = free_module(trivial_hopf(), n, name="D")
    zero = {(i, j): [0, 0] for i in range(n) for j in range(n)}
    succ = {(i, j): list(DUAL[i][j]) for i in range(n) for j in range(n)}
    d = make_structure(carrier, trivial_semigroup(), {"prec": {(0, 0): zero}, "succ": {(0, 0): succ}},
                       "dendriform", name="D")
    assert check_variety(d).ok
    assert C.check_symmetry_hypothesis(d) is not None
    with pytest.raises(C.SymmetryHypothesisFailed):
        C.zinbiel_bridge(d, "to-zinbiel")


def test_oop_outputs():
    ops = doc("c2_operators.json")
    t, b = ops.operator_families["T"], ops.bimodules["H_x_M"]
    s = C.oop_induced(t, b)
    assert check_variety(s).ok
    S, back = C.oop_induced(t, b, "bimodule-back")
    assert tables_equal(S, s)


def test_poisson_of_commutative_has_zero_bracket():
    p = C.commutative_to_poisson(k_structure(DUAL, "commutative"))
    assert check_variety(p).ok
    assert all(not t for t in p.ops["bracket"].values())


def test_classical_check_over_k():
    alg = C.make_ordinary(2, omega2(), {"star": {(a, b): DUAL for a in range(2) for b in range(2)}},
                          "commutative")
    assert C.classical_check(alg) is None
    assert C.classical_check(alg, "lie") is not None
