"""
Regenerate the machine-written fixtures (current lifts over k[Z/2] with the
two-element semigroup {1, w}).  Hand-written fixtures are not touched.

    python3 scripts/make_fixtures.py [--dir fixtures]
"""

import argparse
import os

from omega_pseudoalg.construct import (current_lift, make_ordinary, operator_lift, zinbiel_bridge)
from omega_pseudoalg.definition import Writer, rat_json
from omega_pseudoalg.deform import current_jet, make_jet
from omega_pseudoalg.hopf import cyclic_table, make_group_algebra, omega2, trivial_hopf
from omega_pseudoalg.hspaces import free_module
from omega_pseudoalg.pseudo import make_structure


def e(n, k, c=1):
    v = [0] * n
    v[k] = c
    return v


def a2_table():
    # k[x]/(x^2), basis 1, x
    return [[e(2, 0), e(2, 1)], [e(2, 1), [0, 0]]]


def ordinary_json(alg, omega_name):
    out = {"semigroup": omega_name, "dim": alg.dim, "variety": alg.variety}
    k = alg.omega.size
    prods = {}
    for op, tabs in alg.products.items():
        conv = lambda t: [[[rat_json(c) for c in v] for v in row] for row in t]
        if alg.family:
            prods[op] = [conv(tabs[a]) for a in range(k)]
        else:
            prods[op] = [[conv(tabs[(a, b)]) for b in range(k)] for a in range(k)]
    out["products"] = prods
    if alg.family:
        out["family"] = True
    if alg.rb is not None:
        out["rb"] = [[[rat_json(c) for c in r] for r in alg.rb[a]] for a in range(k)]
        out["weight"] = rat_json(alg.weight)
    return out


def c2_omega2(h, om):
    A = make_ordinary(2, om, {"star": {(a, b): a2_table() for a in range(2) for b in range(2)}},
                      "commutative", name="A2")
    ident = [[1, 0], [0, 1]]
    R = make_ordinary(2, om, {"star": {(a, b): a2_table() for a in range(2) for b in range(2)}},
                      "commutative", rb={0: ident, 1: ident}, weight=-1, name="A2rb")
    S = current_lift(h, A)
    w = Writer("current lift of k[x]/(x^2) over k[Z/2] with Omega = {1, w}; ordinary inputs for "
               "the current and Rota-Baxter constructions")
    w.structure(S, "CA2")
    on = w.semigroup(om)
    w.doc.setdefault("ordinary", {})["A2"] = ordinary_json(A, on)
    w.doc["ordinary"]["A2rb"] = ordinary_json(R, on)
    return w


def poisson_jet(h, om):
    k = trivial_hopf()
    M = free_module(k, 3, name="B")
    st = {(0, 0): e(3, 0), (0, 1): e(3, 1), (1, 0): e(3, 1), (0, 2): e(3, 2), (2, 0): e(3, 2)}
    B = make_structure(M, om, {"star": {(a, b): st for a in range(2) for b in range(2)}},
                       "commutative", name="B3")
    t1 = {(1, 2): e(3, 1), (2, 1): e(3, 1, -1)}
    t2 = {(2, 2): e(3, 0)}
    J = make_jet(B, [{(a, b): t1 for a in range(2) for b in range(2)},
                     {(a, b): t2 for a in range(2) for b in range(2)}], "J")
    C = current_jet(h, J, "CJ")
    w = Writer("current lift over k[Z/2] of the order-2 jet T1(x,y) = x = -T1(y,x), T2(y,y) = 1 "
               "on k[x,y]/(x,y)^2, Omega = {1, w}")
    w.structure(C.base, "CB3")
    w.jet(C, "CJ")
    return w


def operators(h, om):
    J = [[0, 0], [1, 0]]
    left = [[a2_table()[i][j] for j in range(2)] for i in range(2)]
    right = [[a2_table()[j][i] for i in range(2)] for j in range(2)]
    A = make_ordinary(2, om, {"star": {(a, b): a2_table() for a in range(2) for b in range(2)}},
                      "associative", bimodule=(2, left, right), operators={0: J, 1: [[0, 0], [2, 0]]},
                      name="A2")
    S, B, T = operator_lift(h, A)
    w = Writer("operator family id (x) T over k[Z/2]: T_1 = J, T_w = 2J on the adjoint bimodule "
               "of k[x]/(x^2), J(1) = x")
    w.structure(S, "HA2")
    w.operator_family(T, B, "T")
    return w


def zinbiel(h, om):
    # span{x, x^2} with x *_a x = (a + 1) x^2, lifted to k[Z/2]
    tab = lambda c: [[e(2, 1, c), [0, 0]], [[0, 0], [0, 0]]]
    Z = make_ordinary(2, om, {"star": {0: tab(1), 1: tab(2)}}, "zinbiel", family=True, name="Z")
    S = current_lift(h, Z)
    D = zinbiel_bridge(S, "to-dendriform")
    w = Writer("zinbiel family on span{x, x^2} lifted to k[Z/2] and its dendriform family")
    w.structure(S, "Zin")
    w.structure(D, "Dend")
    return w


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--dir", default=os.path.join(os.path.dirname(__file__), "..", "fixtures"))
    args = p.parse_args()
    h = make_group_algebra(cyclic_table(2), name="C2")
    om = omega2()
    for fname, build in (("c2_omega2_a2.json", c2_omega2), ("c2_poisson_jet.json", poisson_jet),
                         ("c2_operators.json", operators), ("c2_zinbiel.json", zinbiel)):
        path = os.path.join(args.dir, fname)
        build(h, om).write(path)
        print("wrote", os.path.normpath(path))


if __name__ == "__main__":
    main()
