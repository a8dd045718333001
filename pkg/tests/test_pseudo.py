import copy
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from helpers import DUAL, doc, k_structure
from omega_pseudoalg.hopf import cyclic_table, make_group_algebra, omega2, trivial_hopf
from omega_pseudoalg.hspaces import free_module, regular_module
from omega_pseudoalg.pseudo import (LinearityViolation, OmegaNotCommutative, adjoint_bimodule,
                                    check_bimodule, check_linearity, check_morphism,
                                    check_operator_family, check_variety,
                                    check_zinbiel_consequence, make_bimodule, make_morphism,
                                    make_operator_family, make_structure, zero_structure)

VARIETIES = ["associative", "commutative", "lie", "prelie", "dendriform", "zinbiel", "poisson"]


def dual_over(omega):
    return k_structure({(a, b): DUAL for a in range(omega.size) for b in range(omega.size)},
                       "commutative", omega=omega, name="A2")


@pytest.mark.parametrize("variety", VARIETIES)
def test_zero_structures_satisfy_every_variety(variety):
    h = make_group_algebra(cyclic_table(2))
    s = zero_structure(free_module(h, 1), omega2(), variety)
    assert check_variety(s).ok


def test_constant_product_over_omega2():
    s = dual_over(omega2())
    rep = check_variety(s)
    assert rep.ok
    assert [r.identity for r in rep.results] == ["Ω-associative", "commutative"]
    assert not check_variety(s, "lie").ok


def test_report_line_counts():
    s = k_structure(DUAL, "commutative")
    line = check_variety(s, "associative").results[0].line()
    assert line == "Ω-associative: PASS (16 identities × 1 index triple)"
    s2 = dual_over(omega2())
    assert check_variety(s2, "associative").results[0].line() == \
        "Ω-associative: PASS (16 identities × 8 index triples)"


def test_shipped_current_structure_is_linear():
    s = doc("c2_omega2_a2.json").structures["CA2"]
    assert check_linearity(s.carrier, s.omega, s.ops) is None
    assert s.dim == 4 and s.hopf.dim == 2


def test_linearity_violation_detected():
    h = make_group_algebra(cyclic_table(2))
    M = regular_module(h)
    with pytest.raises(LinearityViolation):
        # e * e = (e (x) e) (x)_H e but g * e left at zero: not H (x) H-linear
        make_structure(M, omega2(), {"star": {(0, 0): {(0, 0): {((0, 0), 0): 1}}}},
                       "associative")


def test_lie_needs_commutative_omega():
    from omega_pseudoalg.hopf import make_semigroup
    om = make_semigroup([[0, 0], [1, 1]])
    s = zero_structure(free_module(trivial_hopf(), 1), om, "lie")
    with pytest.raises(OmegaNotCommutative):
        check_variety(s)


def _star_mult(s, a, b):
    n = s.dim
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), t in s.table("star", a, b).items():
        for (_, e), c in t.items():
            out[i][j][e] += c
    return out


def oracle_tables(s):
    k = s.omega.size
    return {(a, b): _star_mult(s, a, b) for a in range(k) for b in range(k)}


def mutations(tables, n):
    for ab in sorted(tables):
        for i, j, e in product(range(n), repeat=3):
            t = copy.deepcopy(tables)
            t[ab][i][j][e] += 1
            yield (ab, i, j, e), t


def test_associativity_checker_agrees_with_oracle_under_mutation():
    om = omega2()
    base = oracle_tables(dual_over(om))
    assert oracle.is_omega_associative(base, om.mul, 2)
    flips = 0
    for where, t in mutations(base, 2):
        s = k_structure(t, "associative", omega=om)
        ours = check_variety(s, "associative").ok
        assert ours == oracle.is_omega_associative(t, om.mul, 2), where
        flips += not ours
    assert flips > 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-1, 1), min_size=8, max_size=8))
def test_random_two_dim_algebras_agree_with_oracle(c):
    mult = [[[c[0], c[1]], [c[2], c[3]]], [[c[4], c[5]], [c[6], c[7]]]]
    s = k_structure(mult, "associative")
    assert check_variety(s).ok == oracle.is_associative(mult)


def test_zinbiel_fixture_and_consequence():
    z = doc("c2_zinbiel.json").structures["Zin"]
    assert check_variety(z).ok
    assert check_zinbiel_consequence(z).ok


def test_adjoint_bimodule_passes_and_corruption_fails():
    s = doc("c2_omega2_a2.json").structures["CA2"]
    assert check_bimodule(adjoint_bimodule(s)).ok
    zero = make_bimodule(s, s.carrier, {}, {})
    assert check_bimodule(zero).ok
    a = k_structure(DUAL, "associative")
    b = adjoint_bimodule(a)
    right = {ab: {k: {kk: -c if k == (1, 0) else c for kk, c in v.items()}
                  for k, v in t.items()} for ab, t in b.right.items()}
    bad = make_bimodule(a, a.carrier, b.left, right)
    rep = check_bimodule(bad)
    assert not rep.ok
    assert any(r.identity == "bimodule right-right" and not r.ok for r in rep.results)
    assert rep.witnesses


def integration_family(T):
    a = k_structure(DUAL, "associative", name="A2")
    b = adjoint_bimodule(a)
    t = make_operator_family(a.carrier, a.carrier, a.omega, {0: T})
    return t, b


def test_rota_baxter_weight_zero():
    assert check_operator_family(*integration_family([[0, 0], [0, 0]])).ok
    assert check_operator_family(*integration_family([[0, 0], [1, 0]])).ok
    rep = check_operator_family(*integration_family([[0, 1], [1, 0]]))
    assert not rep.ok
    assert (1, 1) in [w.basis for w in rep.witnesses]


def test_shipped_operator_family():
    d = doc("c2_operators.json")
    t = d.operator_families["T"]
    b = d.bimodules[d.raw["operator_families"]["T"]["bimodule"]]
    assert check_operator_family(t, b).ok


def test_morphisms():
    s = dual_over(omega2())
    ident = [[1, 0], [0, 1]]
    assert check_morphism(make_morphism(s, s, {0: ident, 1: ident})).ok
    z = zero_structure(s.carrier, s.omega, "associative")
    assert check_morphism(make_morphism(s, z, {0: [[0, 0], [0, 0]], 1: [[0, 0], [0, 0]]})).ok
    # scaling by 2 is not multiplicative for a unital product
    two = [[2, 0], [0, 2]]
    assert not check_morphism(make_morphism(s, s, {0: two, 1: two})).ok
