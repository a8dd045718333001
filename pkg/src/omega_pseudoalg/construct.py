"""
Constructions producing new structures from old ones.

Every constructor re-runs the relevant checker on its output (``verify=True``)
and raises VarietyCheckFailed when the result does not satisfy the identities
it is supposed to satisfy.
"""

from dataclasses import dataclass
from itertools import product

from .exactla import ZERO, ONE, Q, ColumnSolver
from .hopf import KindMismatch, make_substructure, trivial_semigroup
from .hspaces import add_into, build_quotient, free_module, make_module, permute_terms
from .pseudo import (OmegaNotCommutative, ShapeMismatch, check_bimodule, check_operator_family,
                     check_variety, make_bimodule, make_operator_family, make_structure,
                     push_terms, sub, family_embed)


class VarietyCheckFailed(ValueError):
    """A checker rejected an input or output; `report` holds the witnesses when there is one."""

    def __init__(self, report):
        if isinstance(report, str):
            super().__init__(report)
            self.report = None
            return
        first = report.witnesses[0].describe(report.omega) if report.witnesses else report.title
        super().__init__("variety check failed: %s" % first)
        self.report = report


class RBIdentityFailed(ValueError):
    def __init__(self, witness):
        super().__init__("Rota-Baxter family identity fails at %r" % (witness,))
        self.witness = witness


class SymmetryHypothesisFailed(ValueError):
    def __init__(self, witness):
        super().__init__("succ/prec symmetry hypothesis fails at %r" % (witness,))
        self.witness = witness


class OperatorIdentityFailed(ValueError):
    def __init__(self, report):
        if isinstance(report, str):
            super().__init__(report)
            self.report = None
            return
        super().__init__("operator family identity fails: %s"
                         % report.witnesses[0].describe(report.omega))
        self.report = report


def _ensure(rep):
    if not rep.ok:
        raise VarietyCheckFailed(rep)
    return rep


def _verified(s, verify, variety=None):
    if verify:
        _ensure(check_variety(s, variety))
    return s


# ---------------------------------------------------------------------------
# ordinary algebras (H = k)

def _vadd(u, v, c=ONE):
    return tuple(a + c * b for a, b in zip(u, v))


def _vscale(c, u):
    return tuple(c * a for a in u)


@dataclass(eq=False)
class OrdinaryAlgebra:
    """
    A finite-dimensional algebra over k with Omega-indexed bilinear products.

    products:  op -> {(a, b): table} with table[i][j] the coefficient vector of
               e_i op_{a,b} e_j; family algebras give op -> {a: table} instead.
    rb:        optional Rota-Baxter family {a: matrix} with weight `weight`.
    bimodule:  optional (dim, left, right) with left[i][j] = e_i . m_j and
               right[j][i] = m_j . e_i (coefficient vectors in M).
    operators: optional O-operator family {a: matrix M -> A}.
    """
    dim: int
    omega: object
    products: dict
    variety: str = "associative"
    family: bool = False
    rb: dict = None
    weight: object = ZERO
    bimodule: tuple = None
    operators: dict = None
    name: str = "A"

    def op(self, name, a, b):
        t = self.products[name]
        if self.family:
            return t[family_embed(name, a, b)]
        return t[(a, b)]

    def mul(self, name, a, b, u, v):
        """Product of coefficient vectors u, v."""
        tab = self.op(name, a, b)
        out = (ZERO,) * self.dim
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    if y:
                        out = _vadd(out, tab[i][j], x * y)
        return out

    def basis(self, i):
        return tuple(ONE if k == i else ZERO for k in range(self.dim))


def make_ordinary(dim, omega, products, variety="associative", family=False, rb=None,
                  weight=0, bimodule=None, operators=None, name="A"):
    def table(t):
        tt = [[tuple(Q(c) for c in t[i][j]) for j in range(dim)] for i in range(dim)]
        return tt
    prods = {}
    for op, tabs in products.items():
        prods[op] = {k: table(v) for k, v in tabs.items()}
    if rb is not None:
        rb = {a: tuple(tuple(Q(c) for c in row) for row in m) for a, m in rb.items()}
    if bimodule is not None:
        mdim, left, right = bimodule
        left = [[tuple(Q(c) for c in left[i][j]) for j in range(mdim)] for i in range(dim)]
        right = [[tuple(Q(c) for c in right[j][i]) for i in range(dim)] for j in range(mdim)]
        bimodule = (mdim, left, right)
    if operators is not None:
        operators = {a: tuple(tuple(Q(c) for c in row) for row in m) for a, m in operators.items()}
    return OrdinaryAlgebra(dim, omega, prods, variety, family, rb, Q(weight), bimodule,
                           operators, name)


def _matvec(m, v):
    return tuple(sum((m[r][j] * v[j] for j in range(len(v)) if v[j]), ZERO) for r in range(len(m)))


def classical_check(alg, variety=None):
    """First witness (indices, basis) where the classical identity fails, or None."""
    variety = variety or alg.variety
    om, n = alg.omega, alg.dim
    m = om.mul
    B = [alg.basis(i) for i in range(n)]
    idx3 = list(product(range(om.size), repeat=3))
    trip = list(product(range(n), repeat=3))

    def mul(op, a, b, u, v):
        return alg.mul(op, a, b, u, v)
    if variety in ("associative", "commutative"):
        for (a, b, g) in idx3:
            for (x, y, z) in trip:
                l = mul("star", m(a, b), g, mul("star", a, b, B[x], B[y]), B[z])
                r = mul("star", a, m(b, g), B[x], mul("star", b, g, B[y], B[z]))
                if l != r:
                    return ("associativity", (a, b, g), (x, y, z))
        if variety == "commutative":
            for a, b in product(range(om.size), repeat=2):
                for x, y in product(range(n), repeat=2):
                    if mul("star", a, b, B[x], B[y]) != mul("star", b, a, B[y], B[x]):
                        return ("commutativity", (a, b), (x, y))
        return None
    if variety == "prelie":
        for (a, b, g) in idx3:
            for (x, y, z) in trip:
                l = _vadd(mul("star", m(a, b), g, mul("star", a, b, B[x], B[y]), B[z]),
                          mul("star", a, m(b, g), B[x], mul("star", b, g, B[y], B[z])), -ONE)
                r = _vadd(mul("star", m(b, a), g, mul("star", b, a, B[y], B[x]), B[z]),
                          mul("star", b, m(a, g), B[y], mul("star", a, g, B[x], B[z])), -ONE)
                if l != r:
                    return ("pre-Lie", (a, b, g), (x, y, z))
        return None
    if variety == "zinbiel":
        for (a, b, g) in idx3:
            for (x, y, z) in trip:
                l = mul("star", a, m(b, g), B[x], mul("star", b, g, B[y], B[z]))
                r = _vadd(mul("star", m(a, b), g, mul("star", a, b, B[x], B[y]), B[z]),
                          mul("star", m(a, b), g, mul("star", b, a, B[y], B[x]), B[z]))
                if l != r:
                    return ("zinbiel", (a, b, g), (x, y, z))
        return None
    if variety == "dendriform":
        P = lambda a, b, u, v: mul("prec", a, b, u, v)
        S = lambda a, b, u, v: mul("succ", a, b, u, v)
        for (a, b, g) in idx3:
            ab, bg = m(a, b), m(b, g)
            for (x, y, z) in trip:
                X, Y, Z = B[x], B[y], B[z]
                if P(ab, g, P(a, b, X, Y), Z) != P(a, bg, X, _vadd(P(b, g, Y, Z), S(b, g, Y, Z))):
                    return ("dendriform 1", (a, b, g), (x, y, z))
                if P(ab, g, S(a, b, X, Y), Z) != S(a, bg, X, P(b, g, Y, Z)):
                    return ("dendriform 2", (a, b, g), (x, y, z))
                if S(ab, g, _vadd(P(a, b, X, Y), S(a, b, X, Y)), Z) != S(a, bg, X, S(b, g, Y, Z)):
                    return ("dendriform 3", (a, b, g), (x, y, z))
        return None
    if variety == "lie":
        for a, b in product(range(om.size), repeat=2):
            for x, y in product(range(n), repeat=2):
                if mul("star", a, b, B[x], B[y]) != _vscale(-ONE, mul("star", b, a, B[y], B[x])):
                    return ("skew", (a, b), (x, y))
        for (a, b, g) in idx3:
            for (x, y, z) in trip:
                l = mul("star", m(a, b), g, mul("star", a, b, B[x], B[y]), B[z])
                r = _vadd(mul("star", a, m(b, g), B[x], mul("star", b, g, B[y], B[z])),
                          mul("star", b, m(a, g), B[y], mul("star", a, g, B[x], B[z])), -ONE)
                if l != r:
                    return ("Jacobi", (a, b, g), (x, y, z))
        return None
    raise ValueError("no classical check for %r" % variety)


def check_rb_family(alg):
    """First (a, b, x, y) where P_a(x)P_b(y) != P_ab(P_a(x)y + xP_b(y) + w xy), or None."""
    om, n, P, w = alg.omega, alg.dim, alg.rb, alg.weight
    for a, b in product(range(om.size), repeat=2):
        for x, y in product(range(n), repeat=2):
            X, Y = alg.basis(x), alg.basis(y)
            Px, Py = _matvec(P[a], X), _matvec(P[b], Y)
            lhs = alg.mul("star", 0, 0, Px, Py)
            inner = _vadd(_vadd(alg.mul("star", 0, 0, Px, Y), alg.mul("star", 0, 0, X, Py)),
                          alg.mul("star", 0, 0, X, Y), w)
            if lhs != _matvec(P[om.mul(a, b)], inner):
                return (a, b, x, y)
    return None


def check_o_operator_family(alg):
    """Classical O-operator family identity on the bimodule data of `alg`."""
    om, (mdim, left, right), T = alg.omega, alg.bimodule, alg.operators

    def lact(u, v):
        out = (ZERO,) * mdim
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                if x and y:
                    out = _vadd(out, left[i][j], x * y)
        return out

    def ract(v, u):
        out = (ZERO,) * mdim
        for j, y in enumerate(v):
            for i, x in enumerate(u):
                if x and y:
                    out = _vadd(out, right[j][i], x * y)
        return out
    E = lambda j: tuple(ONE if k == j else ZERO for k in range(mdim))
    for a, b in product(range(om.size), repeat=2):
        for u, v in product(range(mdim), repeat=2):
            Tu, Tv = _matvec(T[a], E(u)), _matvec(T[b], E(v))
            lhs = alg.mul("star", 0, 0, Tu, Tv)
            rhs = _matvec(T[om.mul(a, b)], _vadd(lact(Tu, E(v)), ract(E(u), Tv)))
            if lhs != rhs:
                return (a, b, u, v)
    return None


def rb_induced(alg):
    """The Omega-associative algebra x *_{a,b} y = P_a(x)y + xP_b(y) + w xy."""
    w = check_rb_family(alg)
    if w:
        raise RBIdentityFailed(w)
    om, n = alg.omega, alg.dim
    tabs = {}
    for a, b in product(range(om.size), repeat=2):
        t = []
        for x in range(n):
            row = []
            for y in range(n):
                X, Y = alg.basis(x), alg.basis(y)
                v = _vadd(_vadd(alg.mul("star", 0, 0, _matvec(alg.rb[a], X), Y),
                                alg.mul("star", 0, 0, X, _matvec(alg.rb[b], Y))),
                          alg.mul("star", 0, 0, X, Y), alg.weight)
                row.append(v)
            t.append(row)
        tabs[(a, b)] = t
    out = make_ordinary(n, om, {"star": tabs}, "associative", name=alg.name + "-rb")
    bad = classical_check(out)
    if bad:
        raise VarietyCheckFailed("classical check fails %r" % (bad,))
    return out


# ---------------------------------------------------------------------------
# building structures from value functions

def build_structure(carrier, omega, fns, variety, family=False, name="A", verify=True):
    """fns: op -> f(a, b, i, j) (or f(a, i, j) when family) returning raw terms."""
    q2 = build_quotient(carrier.hopf, carrier, 2)
    n = carrier.dim
    tables = {}
    for op, fn in fns.items():
        if family:
            tables[op] = {a: {(i, j): q2.reduce(fn(a, i, j)) for i in range(n) for j in range(n)}
                          for a in range(omega.size)}
        else:
            tables[op] = {(a, b): {(i, j): q2.reduce(fn(a, b, i, j))
                                   for i in range(n) for j in range(n)}
                          for a in range(omega.size) for b in range(omega.size)}
    s = make_structure(carrier, omega, tables, variety, family, name)
    return _verified(s, verify)


def flip(s, terms):
    """(sigma (x)_H id) on a value of s."""
    return permute_terms(s.q2, (1, 0), terms)


# ---------------------------------------------------------------------------
# packing A (x) kOmega

def packed_carrier(carrier, omega):
    """A (x) kOmega, basis index a*dim A + x, H acting on the A factor."""
    h, n, k = carrier.hopf, carrier.dim, omega.size
    action = []
    for i in range(h.dim):
        mat = [[ZERO] * (n * k) for _ in range(n * k)]
        for a in range(k):
            for x in range(n):
                for r, c in carrier.act_basis(i, x).items():
                    mat[a * n + r][a * n + x] = c
        action.append(mat)
    return make_module(h, n * k, action, name="%s(x)kOmega" % carrier.name)


def _shift(terms, offset):
    return {(t, e + offset): c for (t, e), c in terms.items()}


def semigroup_pack(s, verify=True, variety="associative"):
    """(x (x) a) * (y (x) b) = x *_{a,b} y (x) ab, over the trivial semigroup."""
    om, n = s.omega, s.dim
    carrier = packed_carrier(s.carrier, om)
    one = trivial_semigroup()
    ops = list(s.ops)

    def fn_for(op):
        def f(_a, _b, i, j):
            a, x = divmod(i, n)
            b, y = divmod(j, n)
            return _shift(s.value(op, a, b, x, y), om.mul(a, b) * n)
        return f
    return build_structure(carrier, one, {op: fn_for(op) for op in ops},
                           variety, name=s.name + "(x)kOmega", verify=verify)


def semigroup_unpack(p, omega, carrier, variety="associative", verify=False):
    """Inverse of semigroup_pack: read x *_{a,b} y off the (ab)-block."""
    n = carrier.dim

    def fn_for(op):
        def f(a, b, x, y):
            v = p.value(op, 0, 0, a * n + x, b * n + y)
            base = omega.mul(a, b) * n
            return {(t, e - base): c for (t, e), c in v.items() if base <= e < base + n}
        return f
    return build_structure(carrier, omega, {op: fn_for(op) for op in p.ops}, variety,
                           name=p.name + "-unpacked", verify=verify)


def pack_operator_family(t, b):
    """
    Single operator T(u (x) a) = T_a(u) (x) a on M (x) kOmega over A (x) kOmega,
    with the packed bimodule (x (x) a).(u (x) b) = x.u (x) ab and symmetrically.
    Returns (packed algebra, packed bimodule, packed operator).
    """
    A, om = b.algebra, t.omega
    nA, nM, k = A.dim, b.carrier.dim, om.size
    carA = packed_carrier(A.carrier, om)
    carM = packed_carrier(b.carrier, om)
    one = trivial_semigroup()

    def star(_a, _b, i, j):
        a, x = divmod(i, nA)
        bb, y = divmod(j, nA)
        return _shift(A.value("star", 0, 0, x, y), om.mul(a, bb) * nA)
    PA = build_structure(carA, one, {"star": star}, "associative", name=A.name + "(x)kOmega")
    left, right = {}, {}
    for i in range(nA * k):
        for j in range(nM * k):
            a, x = divmod(i, nA)
            bb, u = divmod(j, nM)
            left[(i, j)] = _shift(b.lval(0, 0, x, u), om.mul(a, bb) * nM)
            right[(j, i)] = _shift(b.rval(0, 0, u, x), om.mul(bb, a) * nM)
    PM = make_bimodule(PA, carM, {(0, 0): left}, {(0, 0): right}, name=b.name + "(x)kOmega")
    mat = [[ZERO] * (nM * k) for _ in range(nA * k)]
    for a in range(k):
        for r in range(nA):
            for c in range(nM):
                mat[a * nA + r][a * nM + c] = t.maps[a][r][c]
    PT = make_operator_family(carM, carA, one, {0: mat}, name=t.name + "(x)kOmega")
    return PA, PM, PT


# ---------------------------------------------------------------------------
# current constructions H (x) H' (x) A

def _sub_data(h, sub):
    """Coproduct and product of the sub-basis in sub-basis coordinates."""
    ds, d = sub.dim, h.dim
    cols = []
    for p in range(ds):
        for q in range(ds):
            u, v = sub.inclusion[p], sub.inclusion[q]
            cols.append({i * d + j: a * b for i, a in enumerate(u) if a for j, b in enumerate(v) if b})
    solver = ColumnSolver(cols, d * d)
    comult = []
    for p in range(ds):
        dv = h.Delta(sub.inclusion[p])
        x = solver.solve({i * d + j: c for (i, j), c in dv.items()})
        if x is None:
            raise KindMismatch("coproduct leaves the subspace")
        comult.append({divmod(k, ds): c for k, c in enumerate(x) if c})
    return comult


def _sub_coords(sub, vec):
    x = sub.coords(vec)
    if x is None:
        raise KindMismatch("product leaves the subspace")
    return x


def unit_substructure(h):
    return make_substructure(h, [h.unit], "subbialgebra")


def whole_substructure(h):
    return make_substructure(h, [h.basis(i) for i in range(h.dim)], "subbialgebra")


def current_carrier(h, sub, n):
    return free_module(h, sub.dim * n, name="H(x)H'(x)A")


def current(h, sub, alg, formula="bialgebra", verify=True):
    """
    Current structure on H (x) H' (x) A (basis index f*(|H'| n) + s*n + x).

    formula="bialgebra": (f(x)a(x)x)*(g(x)b(x)y) = (f (x) g a1) (x)_H (1 (x) b a2 (x) x.y),
                         H' a sub-bialgebra, A Omega-associative;
    formula="coalgebra": (f(x)a(x)x)*(g(x)b(x)y) = f a S(b1) (x) g (x)_H (1 (x) b2 (x) x.y),
                         H' a subcoalgebra, A Omega-pre-Lie (or associative / pre-Lie family).
    """
    if sub.parent is not h:
        raise KindMismatch("substructure of a different Hopf algebra")
    need = {"bialgebra": "subbialgebra", "coalgebra": "subcoalgebra"}.get(formula)
    if need is None:
        raise ValueError("unknown formula %r" % formula)
    if formula == "bialgebra" and sub.kind != "subbialgebra":
        raise KindMismatch("the bialgebra formula needs a sub-bialgebra")
    if formula == "coalgebra" and not alg.omega.commutative:
        raise OmegaNotCommutative("pre-Lie output needs a commutative Omega")
    bad = classical_check(alg)
    if bad:
        raise VarietyCheckFailed("input fails the classical check %r" % (bad,))
    ds, n = sub.dim, alg.dim
    carrier = current_carrier(h, sub, n)
    comult = _sub_data(h, sub)
    inc = sub.inclusion
    unit = h.unit_terms
    stride = ds * n

    def split(i):
        f, rest = divmod(i, stride)
        s, x = divmod(rest, n)
        return f, s, x

    def module_terms(F_vec_pairs, s_vec, xy):
        # F_vec_pairs: {(f, k): c}; module element 1 (x) s_vec (x) xy
        out = {}
        for Fk, c in F_vec_pairs.items():
            for u, cu in unit.items():
                for s, cs in enumerate(s_vec):
                    if not cs:
                        continue
                    for z, cz in enumerate(xy):
                        if cz:
                            k = (Fk, u * stride + s * n + z)
                            out[k] = out.get(k, ZERO) + c * cu * cs * cz
        return out
    is_family = alg.family
    variety = alg.variety if formula == "bialgebra" else "prelie"
    if variety == "commutative" and ds > 1:
        # a larger H' breaks the symmetry of the product; associativity survives
        variety = "associative"
    allowed = {"bialgebra": ("associative", "commutative"),
               "coalgebra": ("associative", "commutative", "prelie")}[formula]
    if alg.variety not in allowed:
        raise VarietyCheckFailed("input variety %r does not fit the %s formula"
                                 % (alg.variety, formula))
    op_names = list(alg.products)

    def fn_for(op):
        def val(a, b, i, j):
            f, sa, x = split(i)
            g, sb, y = split(j)
            xy = alg.mul(op, a, b, alg.basis(x), alg.basis(y))
            if not any(xy):
                return {}
            acc = {}
            if formula == "bialgebra":
                for (p, q), c in comult[sa].items():
                    ga1 = h.mul(h.basis(g), inc[p])
                    ba2 = _sub_coords(sub, h.mul(inc[sb], inc[q]))
                    F = {(f, k): c * e for k, e in enumerate(ga1) if e}
                    add_into(acc, module_terms(F, ba2, xy))
            else:
                fa = h.mul(h.basis(f), inc[sa])
                for (p, q), c in comult[sb].items():
                    left = h.mul(fa, h.S(inc[p]))
                    F = {(k, g): c * e for k, e in enumerate(left) if e}
                    s_vec = tuple(ONE if r == q else ZERO for r in range(ds))
                    add_into(acc, module_terms(F, s_vec, xy))
            return acc
        if is_family:
            return lambda a, i, j: val(a, a, i, j)
        return val
    return build_structure(carrier, alg.omega, {op: fn_for(op) for op in op_names}, variety,
                           family=is_family, name="current(%s,%s)" % (alg.name, formula),
                           verify=verify)


def current_lift(h, alg, verify=True):
    """H (x) A with (f (x) x) op (g (x) y) = (f (x) g) (x)_H (1 (x) x op y), any variety."""
    return current(h, unit_substructure(h), alg, "bialgebra", verify=verify) \
        if alg.variety in ("associative", "commutative") and not alg.family \
        else _plain_lift(h, alg, verify)


def _plain_lift(h, alg, verify):
    n = alg.dim
    carrier = free_module(h, n, name="H(x)" + alg.name)
    unit = h.unit_terms

    def fn_for(op):
        def val(a, b, i, j):
            f, x = divmod(i, n)
            g, y = divmod(j, n)
            xy = alg.mul(op, a, b, alg.basis(x), alg.basis(y))
            return {((f, g), u * n + z): cu * cz for u, cu in unit.items()
                    for z, cz in enumerate(xy) if cz}
        if alg.family:
            return lambda a, i, j: val(a, a, i, j)
        return val
    return build_structure(carrier, alg.omega, {op: fn_for(op) for op in alg.products},
                           alg.variety, family=alg.family, name="H(x)" + alg.name, verify=verify)


def operator_lift(h, alg, verify=True):
    """
    H (x) A and H (x) M from an ordinary algebra with bimodule and O-operator
    family: products f (x) g (x)_H (1 (x) ab), actions f (x) g (x)_H (1 (x) a.m),
    and the family id (x) T_a.  Returns (structure, bimodule, family).
    """
    bad = check_o_operator_family(alg)
    if bad:
        raise OperatorIdentityFailed("classical O-operator identity fails %r" % (bad,))
    one = trivial_semigroup()
    plain = make_ordinary(alg.dim, one, {"star": {(0, 0): alg.op("star", 0, 0)}}, "associative",
                          name=alg.name)
    S = _plain_lift(h, plain, verify)
    mdim, left, right = alg.bimodule
    n = alg.dim
    carM = free_module(h, mdim, name="H(x)M")
    unit = h.unit_terms
    L, R = {}, {}
    for i in range(h.dim * n):
        f, x = divmod(i, n)
        for j in range(h.dim * mdim):
            g, m = divmod(j, mdim)
            L[(i, j)] = {((f, g), u * mdim + z): cu * cz for u, cu in unit.items()
                         for z, cz in enumerate(left[x][m]) if cz}
    for j in range(h.dim * mdim):
        f, m = divmod(j, mdim)
        for i in range(h.dim * n):
            g, x = divmod(i, n)
            R[(j, i)] = {((f, g), u * mdim + z): cu * cz for u, cu in unit.items()
                         for z, cz in enumerate(right[m][x]) if cz}
    B = make_bimodule(S, carM, {(0, 0): L}, {(0, 0): R}, name="H(x)M")
    maps = {}
    for a in range(alg.omega.size):
        mat = [[ZERO] * (h.dim * mdim) for _ in range(h.dim * n)]
        for f in range(h.dim):
            for r in range(n):
                for c in range(mdim):
                    mat[f * n + r][f * mdim + c] = alg.operators[a][r][c]
        maps[a] = mat
    T = make_operator_family(carM, S.carrier, alg.omega, maps, name="id(x)T")
    if verify:
        _ensure(check_bimodule(B))
        rep = check_operator_family(T, B)
        if not rep.ok:
            raise OperatorIdentityFailed(rep)
    return S, B, T


def rota_baxter_lift(h, sub, alg, verify=True):
    """Current (bialgebra formula) of x *_{a,b} y = P_a(x)y + xP_b(y) + w xy."""
    return current(h, sub, rb_induced(alg), "bialgebra", verify=verify)


# ---------------------------------------------------------------------------
# dendriform / pre-Lie / Lie / zinbiel passages

def dendriform_sum(d, verify=True):
    """x * y = x succ y + x prec y (pairwise tables; family input read through the embedding)."""
    if verify:
        _ensure(check_variety(d, "dendriform"))
    f = lambda a, b, i, j: add_into(dict(d.value("succ", a, b, i, j)), d.value("prec", a, b, i, j))
    return build_structure(d.carrier, d.omega, {"star": f}, "associative",
                           name=d.name + "-sum", verify=verify)


def dendriform_to_prelie(d, verify=True):
    """x o_{a,b} y = x succ_{a,b} y - sigma(y prec_{b,a} x); family in, family out."""
    if not d.omega.commutative:
        raise OmegaNotCommutative("pre-Lie output needs a commutative Omega")
    if verify:
        _ensure(check_variety(d, "dendriform"))
    if d.family:
        f = lambda a, i, j: sub(d.fam("succ", a, i, j), flip(d, d.fam("prec", a, j, i)))
        return build_structure(d.carrier, d.omega, {"star": f}, "prelie", family=True,
                               name=d.name + "-prelie", verify=verify)
    f = lambda a, b, i, j: sub(d.value("succ", a, b, i, j), flip(d, d.value("prec", b, a, j, i)))
    return build_structure(d.carrier, d.omega, {"star": f}, "prelie",
                           name=d.name + "-prelie", verify=verify)


def commutator_lie(p, source=None, verify=True):
    """[x y]_{a,b} = x o_{a,b} y - sigma(y o_{b,a} x) from a pre-Lie, associative or pre-Lie family structure."""
    if not p.omega.commutative:
        raise OmegaNotCommutative("Lie output needs a commutative Omega")
    source = source or p.variety
    if verify:
        _ensure(check_variety(p, {"prelie-family": "prelie", "commutative": "associative"}
                              .get(source, source)))
    f = lambda a, b, i, j: sub(p.value("star", a, b, i, j), flip(p, p.value("star", b, a, j, i)))
    return build_structure(p.carrier, p.omega, {"star": f}, "lie",
                           name=p.name + "-commutator", verify=verify)


def check_symmetry_hypothesis(d):
    """First (a, b, i, j) with x succ_{a,b} y != sigma(y prec_{b,a} x), or None."""
    n, k = d.dim, d.omega.size
    for a, b in product(range(k), repeat=2):
        for i, j in product(range(n), repeat=2):
            if d.value("succ", a, b, i, j) != flip(d, d.value("prec", b, a, j, i)):
                return (a, b, i, j)
    return None


def zinbiel_bridge(s, direction, verify=True):
    """
    direction="to-dendriform": prec_{a,b}(x,y) = sigma(y *_{b,a} x), succ = *;
    direction="to-zinbiel":    * = succ, after checking succ = sigma-flipped prec;
    direction="symmetrize":    x *^ y = x * y + sigma(y *_{b,a} x), commutative associative.
    Family inputs produce family outputs.
    """
    if direction == "to-dendriform":
        if verify:
            _ensure(check_variety(s, "zinbiel"))
        if s.family:
            fns = {"prec": lambda a, i, j: flip(s, s.fam("star", a, j, i)),
                   "succ": lambda a, i, j: dict(s.fam("star", a, i, j))}
        else:
            fns = {"prec": lambda a, b, i, j: flip(s, s.value("star", b, a, j, i)),
                   "succ": lambda a, b, i, j: dict(s.value("star", a, b, i, j))}
        return build_structure(s.carrier, s.omega, fns, "dendriform", family=s.family,
                               name=s.name + "-dendriform", verify=verify)
    if direction == "to-zinbiel":
        w = check_symmetry_hypothesis(s)
        if w:
            raise SymmetryHypothesisFailed(w)
        if verify:
            _ensure(check_variety(s, "dendriform"))
        if s.family:
            fns = {"star": lambda a, i, j: dict(s.fam("succ", a, i, j))}
        else:
            fns = {"star": lambda a, b, i, j: dict(s.value("succ", a, b, i, j))}
        return build_structure(s.carrier, s.omega, fns, "zinbiel", family=s.family,
                               name=s.name + "-zinbiel", verify=verify)
    if direction == "symmetrize":
        if verify:
            _ensure(check_variety(s, "zinbiel"))
        f = lambda a, b, i, j: add_into(dict(s.value("star", a, b, i, j)),
                                        flip(s, s.value("star", b, a, j, i)))
        return build_structure(s.carrier, s.omega, {"star": f}, "commutative",
                               name=s.name + "-symmetrized", verify=verify)
    raise ValueError("unknown direction %r" % direction)


# ---------------------------------------------------------------------------
# structures induced by an operator family

def oop_induced(t, b, output="omega-assoc", verify=True):
    """
    omega-assoc:   u *^_{a,b} v = T_a(u) *_l v + u *_r T_b(v) on M;
    bimodule-back: A over (M, *^) with u |>_{a,b} x = T_a(u)*x - T_ab(u *_r x)
                   and x <|_{a,b} u = x*T_b(u) - T_ab(x *_l u);
    dendriform:    single operator, u prec v = u *_r T(v), u succ v = T(u) *_l v.
    """
    if verify:
        rep = check_operator_family(t, b)
        if not rep.ok:
            raise OperatorIdentityFailed(rep)
    A, M, om = b.algebra, b.carrier, t.omega
    if output == "dendriform":
        if om.size != 1:
            raise ShapeMismatch("the dendriform output needs a single operator")
        fns = {"prec": lambda a, bb, i, j: b.rvec(0, 0, {i: ONE}, t.apply(0, {j: ONE})),
               "succ": lambda a, bb, i, j: b.lvec(0, 0, t.apply(0, {i: ONE}), {j: ONE})}
        return build_structure(M, om, fns, "dendriform", name="induced-dendriform", verify=verify)

    def hat(a, bb, i, j):
        return add_into(dict(b.lvec(0, 0, t.apply(a, {i: ONE}), {j: ONE})),
                        b.rvec(0, 0, {i: ONE}, t.apply(bb, {j: ONE})))
    S = build_structure(M, om, {"star": hat}, "associative", name="induced", verify=verify)
    if output == "omega-assoc":
        return S
    if output != "bimodule-back":
        raise ValueError("unknown output %r" % output)
    qA = A.q2
    m = om.mul
    left, right = {}, {}
    for a, bb in product(range(om.size), repeat=2):
        L, R = {}, {}
        for u in range(M.dim):
            for x in range(A.dim):
                v = sub(A.value_vec("star", 0, 0, t.apply(a, {u: ONE}), {x: ONE}),
                        push_terms(qA, t.maps[m(a, bb)], b.rval(0, 0, u, x)))
                L[(u, x)] = v
                w = sub(A.value_vec("star", 0, 0, {x: ONE}, t.apply(bb, {u: ONE})),
                        push_terms(qA, t.maps[m(a, bb)], b.lval(0, 0, x, u)))
                R[(x, u)] = w
        left[(a, bb)], right[(a, bb)] = L, R
    back = make_bimodule(S, A.carrier, left, right, name="induced-bimodule")
    if verify:
        _ensure(check_bimodule(back))
    return S, back


def commutative_to_poisson(a, verify=True):
    """Adjoin the commutator bracket to a commutative Omega-associative structure."""
    rep = check_variety(a, "commutative")
    if not rep.ok:
        raise VarietyCheckFailed(rep)
    fns = {"star": lambda x, y, i, j: dict(a.value("star", x, y, i, j)),
           "bracket": lambda x, y, i, j: sub(a.value("star", x, y, i, j),
                                             flip(a, a.value("star", y, x, j, i)))}
    return build_structure(a.carrier, a.omega, fns, "poisson", name=a.name + "-poisson",
                           verify=verify)
