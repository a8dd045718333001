"""
Truncated formal deformations T = T0 + T1 t + ... + TN t^N of an
Omega-associative H-pseudoalgebra, their obstructions, first-order
equivalence, rigidity, and the Poisson bracket carried by T1 on a commutative
base.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactla import ZERO, ONE, Q, RowReducer, fstr
from .hspaces import add_into, build_quotient, collapse, embed, free_module, permute_terms
from .construct import build_structure
from .cohomology import (Cochain, apply_d, cochain_basis, cohomology_rank, d_matrix,
                         _IdCache)
from .pseudo import (IdentityResult, LinearityViolation, Report, ShapeMismatch,
                     _normalize_table, adjoint_bimodule, check_linearity, check_variety,
                     make_structure, nest_left, nest_right, run_identity, sub, _apply)


class BaseNotCommutative(ValueError):
    pass


class JetOrderTooLow(ValueError):
    pass


class JetInvalid(ValueError):
    def __init__(self, report):
        super().__init__("jet fails its deformation equations")
        self.report = report


_ADJOINT = _IdCache()


def adjoint_of(s):
    """The adjoint bimodule of s, one object per structure (cochain caches key on it)."""
    b = _ADJOINT.get((s,))
    if b is None:
        b = _ADJOINT.put((s,), (), adjoint_bimodule(s))
    return b


# ---------------------------------------------------------------------------
# jets

@dataclass(eq=False)
class DeformationJet:
    base: object                  # PseudoStructure, the order-0 product
    terms: list                   # T1..TN: {(a, b): {(i, j): terms}}
    name: str = "J"

    @property
    def order(self):
        return len(self.terms)

    def table(self, i):
        """T^(i) as a pair-indexed table; i = 0 is the base product."""
        if i == 0:
            return self.base.ops["star"]
        if i > self.order:
            return None
        return self.terms[i - 1]


def make_jet(base, terms, name="J"):
    """Validated jet; each entry of `terms` is {(a, b): {(i, j): value}} as for make_structure."""
    rep = check_variety(base, "associative")
    if not rep.ok:
        raise JetInvalid(rep)
    q2, n, k = base.q2, base.dim, base.omega.size
    tabs = []
    for t in terms:
        tab = {(a, b): _normalize_table(q2, t.get((a, b), {}), n, n)
               for a in range(k) for b in range(k)}
        w = check_linearity(base.carrier, base.omega, {"T": tab})
        if w:
            raise LinearityViolation(w)
        tabs.append(tab)
    return DeformationJet(base, tabs, name)


def current_jet(h, j, name=None):
    """
    Lift of a jet over k to H (x) A: every term T^(i) becomes
    (f (x) x) T^(i) (g (x) y) = (f (x) g) (x)_H (1 (x) T^(i)(x, y)).
    """
    s = j.base
    if s.hopf.dim != 1:
        raise ShapeMismatch("current jets are lifted from structures over k")
    n = s.dim
    carrier = free_module(h, n, name="H(x)" + s.name)
    unit = h.unit_terms

    def lift(tab):
        def val(a, b, i, k):
            f, x = divmod(i, n)
            g, y = divmod(k, n)
            return {((f, g), u * n + z): cu * c for u, cu in unit.items()
                    for (_, z), c in tab[(a, b)].get((x, y), {}).items()}
        return val
    base = build_structure(carrier, s.omega, {"star": lift(s.ops["star"])}, s.variety,
                           name="H(x)" + s.name)
    q2, idx = base.q2, range(s.omega.size)
    terms = [{(a, b): {(i, k): q2.reduce(lift(t)(a, b, i, k))
                       for i in range(carrier.dim) for k in range(carrier.dim)}
              for a in idx for b in idx} for t in j.terms]
    return make_jet(base, terms, name or "H(x)" + j.name)


def _get(tab, a, b, i, j):
    if tab is None:
        return {}
    return tab[(a, b)].get((i, j), {})


def hat_compose(s, X, Y):
    """
    (X o^ Y)(x, y, z)_{a,b,g} = X_{a,bg}(x, Y_{b,g}(y, z)) - X_{ab,g}(Y_{a,b}(x, y), z)
    for pair-indexed tables X, Y over the structure s; returns f(abc, xyz) -> terms.
    """
    q2, m = s.q2, s.omega.mul

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        lhs = nest_right(q2, _get(Y, b, g, y, z), lambda e: _get(X, a, m(b, g), x, e))
        rhs = nest_left(q2, _get(Y, a, b, x, y), lambda e: _get(X, m(a, b), g, e, z))
        return sub(lhs, rhs)
    return f


def _sum_fns(fns, signs=None):
    signs = signs or [ONE] * len(fns)

    def f(abc, xyz):
        acc = {}
        for g, c in zip(fns, signs):
            add_into(acc, g(abc, xyz), c)
        return acc
    return f


def order_equation(j, s):
    """sum_{i=0..s} T^(i) o^ T^(s-i) as f(abc, xyz)."""
    return _sum_fns([hat_compose(j.base, j.table(i), j.table(s - i)) for i in range(s + 1)])


def first_order_equation(j):
    """x*_{a,bg}T1(y,z) + T1_{a,bg}(x, y*z) - T1_{a,b}(x,y)*_{ab,g}z - T1_{ab,g}(x*y, z), written out."""
    s, T = j.base, j.table(1)
    q2, m = s.q2, s.omega.mul
    star = lambda a, b, x, y: s.value("star", a, b, x, y)

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        acc = nest_right(q2, _get(T, b, g, y, z), lambda e: star(a, m(b, g), x, e))
        add_into(acc, nest_right(q2, star(b, g, y, z), lambda e: _get(T, a, m(b, g), x, e)))
        add_into(acc, nest_left(q2, _get(T, a, b, x, y), lambda e: star(m(a, b), g, e, z)), -ONE)
        add_into(acc, nest_left(q2, star(a, b, x, y), lambda e: _get(T, m(a, b), g, e, z)), -ONE)
        return acc
    return f


def _run3(s, name, fn):
    return run_identity(name, fn, s.omega, 3, [s.dim] * 3, s.q3.dim)


def table_cochain(s, table):
    """A pair-indexed table as a 2-cochain with adjoint coefficients."""
    cs = cochain_basis(s, adjoint_of(s), 2)
    return cs.from_table(table, strict=True)


@dataclass
class JetReport:
    report: Report
    cocycle_by_equation: bool = None     # first-order equation written out
    cocycle_by_differential: bool = None  # d^2 T1 = 0 through the cochain complex

    @property
    def ok(self):
        return self.report.ok and self.cocycle_by_equation in (None, True) \
            and self.cocycle_by_differential in (None, True)

    @property
    def paths_agree(self):
        return self.cocycle_by_equation == self.cocycle_by_differential

    def lines(self):
        out = self.report.lines()
        if self.cocycle_by_differential is not None:
            out.append("T1 2-cocycle via the cochain differential: %s"
                       % ("PASS" if self.cocycle_by_differential else "FAIL"))
        return out

    def text(self):
        return "\n".join(["[%s]" % self.report.title] + self.lines())


def check_jet(j, order=None):
    """Deformation equations for s = 0..order (default: the jet's order) plus the T1 cocycle paths."""
    order = j.order if order is None else order
    if order > j.order:
        raise JetOrderTooLow("jet %s has order %d < %d" % (j.name, j.order, order))
    s = j.base
    rep = Report("%s: deformation equations" % j.name, omega=s.omega)
    for k in range(order + 1):
        rep.results.append(_run3(s, "deformation equation order %d" % k, order_equation(j, k)))
    out = JetReport(rep)
    if order >= 1:
        eq = _run3(s, "first-order deformation equation", first_order_equation(j))
        rep.results.append(eq)
        out.cocycle_by_equation = eq.ok
        c = table_cochain(s, j.table(1))
        out.cocycle_by_differential = apply_d(c.space, c).is_zero()
    return out


# ---------------------------------------------------------------------------
# obstructions

def solve_in_image(cols, nrows, b):
    """Some x with sum_c x_c cols[c] = b (b sparse), or None when b is outside the image."""
    ncols = len(cols)
    rows = [dict() for _ in range(nrows)]
    for c, col in enumerate(cols):
        for r, v in col.items():
            rows[r][c] = v
    red = RowReducer(ncols + 1)
    for r in range(nrows):
        row = rows[r]
        if b.get(r):
            row[ncols] = b[r]
        if row:
            red.add(row)
    if ncols in red.pivots:
        return None
    x = [ZERO] * ncols
    for p, prow in red.pivots.items():
        x[p] = prow.get(ncols, ZERO)
    return x


def cochain_table(c):
    """Pair-indexed table of a 2-cochain."""
    cs, val = c.space, c.value()
    n = cs.algebra.dim
    return {ix: {(i, j): val(ix, (i, j)) for i in range(n) for j in range(n) if val(ix, (i, j))}
            for ix in cs.index_tuples}


@dataclass
class Extension:
    table: dict
    jet: DeformationJet


@dataclass
class ObstructionCertificate:
    coords: tuple          # the obstruction as a 3-cochain
    is_cocycle: bool
    h3_dim: int

    def lines(self):
        nz = sum(1 for c in self.coords if c)
        return ["obstruction: NOT A COBOUNDARY (%d nonzero coordinates, cocycle: %s, dim H^3 = %d)"
                % (nz, "yes" if self.is_cocycle else "no", self.h3_dim)]


def obstruction_cochain(j):
    """O = -sum_{i=1..N} T^(i) o^ T^(N+1-i) as a 3-cochain."""
    s, N = j.base, j.order
    fns = [hat_compose(s, j.table(i), j.table(N + 1 - i)) for i in range(1, N + 1)]
    f = _sum_fns(fns, [-ONE] * len(fns))
    cs = cochain_basis(s, adjoint_of(s), 3)
    return Cochain(cs, cs.extract(lambda ix, t: f(ix, t), strict=True))


def obstruction(j, verify=True):
    """Extension T^(N+1) with d^2 T^(N+1) = O, or a certificate that O is not a coboundary."""
    s = j.base
    if verify:
        rep = check_jet(j)
        if not rep.ok:
            raise JetInvalid(rep)
    adj = adjoint_of(s)
    O = obstruction_cochain(j)
    cols = d_matrix(s, adj, 2)
    b = {i: c for i, c in enumerate(O.coords) if c}
    x = solve_in_image(cols, O.space.dim, b)
    if x is None:
        dO = apply_d(O.space, O)
        return ObstructionCertificate(O.coords, dO.is_zero(), cohomology_rank(s, adj, 3).cohomology)
    X = Cochain(cochain_basis(s, adj, 2), tuple(x))
    tab = cochain_table(X)
    ext = DeformationJet(s, list(j.terms) + [tab], j.name)
    if verify and not check_jet(ext).ok:
        raise AssertionError("extension fails the deformation equations")
    return Extension(tab, ext)


# ---------------------------------------------------------------------------
# equivalence and rigidity

def phi_cochain(s, maps):
    """1-cochain of an Omega-indexed family of H-linear maps {w: matrix} on A."""
    cs = cochain_basis(s, adjoint_of(s), 1)
    q1 = build_quotient(s.hopf, s.carrier, 1)
    mats = {w: tuple(tuple(Q(c) for c in row) for row in maps[w]) for w in range(s.omega.size)}

    def f(ix, t):
        return embed(q1, _apply(mats[ix[0]], {t[0]: ONE}))
    return Cochain(cs, cs.extract(f, strict=True))


def cochain_maps(c):
    """Matrices {w: matrix} of a 1-cochain (values collapsed from H (x)_H A to A)."""
    cs, val = c.space, c.value()
    q1 = cs.hom.space
    n = cs.algebra.dim
    out = {}
    for (w,) in cs.index_tuples:
        mat = [[ZERO] * n for _ in range(n)]
        for x in range(n):
            for r, v in collapse(q1, val((w,), (x,))).items():
                mat[r][x] = v
        out[w] = mat
    return out


def _table_diff(s, t1, t2):
    k, n = s.omega.size, s.dim
    return {(a, b): {(i, j): sub(_get(t1, a, b, i, j), _get(t2, a, b, i, j))
                     for i in range(n) for j in range(n)} for a in range(k) for b in range(k)}


def shifted_jet(j, maps, name=None):
    """Same jet with T1 replaced by T1 - d^1 phi."""
    s = j.base
    d = apply_d(*(lambda c: (c.space, c))(phi_cochain(s, maps)))
    new1 = _table_diff(s, j.table(1), cochain_table(d))
    new1 = {ab: {k: v for k, v in t.items() if v} for ab, t in new1.items()}
    return DeformationJet(s, [new1] + list(j.terms[1:]), name or j.name + "-shifted")


@dataclass
class EquivalenceReport:
    ok: bool
    residual_nonzero: int

    def line(self):
        return "first-order equivalence T1 - T1' = d^1 phi: %s" % ("PASS" if self.ok else "FAIL")


def first_order_equivalent(j1, j2, maps):
    """Check T1 - T1' = d^1 phi for the order-one part `maps` of an equivalence."""
    if j1.base is not j2.base:
        raise ShapeMismatch("jets must share their base")
    s = j1.base
    phi = phi_cochain(s, maps)
    dphi = apply_d(phi.space, phi)
    diff = table_cochain(s, _table_diff(s, j1.table(1), j2.table(1)))
    res = diff - dphi
    nz = sum(1 for c in res.coords if c)
    return EquivalenceReport(nz == 0, nz)


def find_first_order_equivalence(j1, j2):
    """Some phi with T1 - T1' = d^1 phi, as matrices, or None when none exists."""
    s = j1.base
    diff = table_cochain(s, _table_diff(s, j1.table(1), j2.table(1)))
    cols = d_matrix(s, adjoint_of(s), 1)
    x = solve_in_image(cols, diff.space.dim, {i: c for i, c in enumerate(diff.coords) if c})
    if x is None:
        return None
    return cochain_maps(Cochain(cochain_basis(s, adjoint_of(s), 1), tuple(x)))


@dataclass
class RigidityReport:
    name: str
    h2: int
    cochains: int

    @property
    def rigid(self):
        return self.h2 == 0

    def line(self):
        if self.rigid:
            return "%s: RIGID (dim H^2 = 0, so every formal deformation is trivial)" % self.name
        return "%s: INCONCLUSIVE (dim H^2 = %d)" % (self.name, self.h2)


def rigidity_report(s):
    r = cohomology_rank(s, adjoint_of(s), 2)
    return RigidityReport(s.name, r.cohomology, r.cochains)


# ---------------------------------------------------------------------------
# Poisson bracket of a deformation of a commutative base

def _flip(s, terms):
    return permute_terms(s.q2, (1, 0), terms)


def bracket_table(j):
    """{x *_{a,b} y} = T1_{a,b}(x, y) - (sigma (x)_H id) T1_{b,a}(y, x)."""
    s, T = j.base, j.table(1)
    k, n = s.omega.size, s.dim
    return {(a, b): {(x, y): sub(_get(T, a, b, x, y), _flip(s, _get(T, b, a, y, x)))
                     for x in range(n) for y in range(n)} for a in range(k) for b in range(k)}


def _perm(s, cycles, terms):
    return permute_terms(s.q3, cycles, terms)


def _cyclic_sum(s, f, perms, sign=ONE):
    """Sum over (perm, argument order) of perm applied to f at the permuted arguments."""
    def g(abc, xyz):
        acc = {}
        for cycles, order in perms:
            ix = tuple(abc[o] for o in order)
            bt = tuple(xyz[o] for o in order)
            if cycles is None:
                add_into(acc, f(ix, bt), sign)
            else:
                add_into(acc, _perm(s, cycles, f(ix, bt)), sign)
        return acc
    return g


# argument orders: (x,y,z) = (0,1,2); (y,z,x) = (1,2,0); etc.
CYCLIC = [(None, (0, 1, 2)), ("(123)", (1, 2, 0)), ("(132)", (2, 0, 1))]
TRANSPOSED = [("(12)", (1, 0, 2)), ("(13)", (2, 1, 0)), ("(23)", (0, 2, 1))]


def cyclic_lemma(j):
    """-(cyclic sum of T1 o^ T1) = cyclic sum of T2 o^ T0."""
    s = j.base
    lhs = _cyclic_sum(s, hat_compose(s, j.table(1), j.table(1)), CYCLIC, -ONE)
    rhs = _cyclic_sum(s, hat_compose(s, j.table(2), j.table(0)), CYCLIC)
    return lambda abc, xyz: sub(lhs(abc, xyz), rhs(abc, xyz))


def transposed_lemma(j):
    """transposition sum of T1 o^ T1 = -(transposition sum of T2 o^ T0)."""
    s = j.base
    lhs = _cyclic_sum(s, hat_compose(s, j.table(1), j.table(1)), TRANSPOSED)
    rhs = _cyclic_sum(s, hat_compose(s, j.table(2), j.table(0)), TRANSPOSED, -ONE)
    return lambda abc, xyz: sub(lhs(abc, xyz), rhs(abc, xyz))


def skew_leibniz(s, phi):
    """phi_{a,bg}(x, y*z) - phi_{a,b}(x,y)*_{ab,g} z - (12)(y *_{b,ag} phi_{a,g}(x,z))."""
    q2, m = s.q2, s.omega.mul
    star = lambda a, b, x, y: s.value("star", a, b, x, y)

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        lhs = nest_right(q2, star(b, g, y, z), lambda e: _get(phi, a, m(b, g), x, e))
        r1 = nest_left(q2, _get(phi, a, b, x, y), lambda e: star(m(a, b), g, e, z))
        r2 = nest_right(q2, _get(phi, a, g, x, z), lambda e: star(b, m(a, g), y, e))
        return sub(sub(lhs, r1), _perm(s, "(12)", r2))
    return f


def _halve(tab):
    h = Fraction(1, 2)
    return {ab: {k: {kk: h * c for kk, c in v.items()} for k, v in t.items()} for ab, t in tab.items()}


def poisson_extract(j, with_report=False):
    """
    The Omega-Poisson structure (base product, bracket from T1).  Checks the
    full Poisson identity set and, on the same jet, the two triple-sum
    identities relating T1 o^ T1 and T2 o^ T0, plus the Leibniz rule for the
    skew part of T1 when that part is a 2-cocycle.
    """
    s = j.base
    if not check_variety(s, "commutative").ok:
        raise BaseNotCommutative("the base product of %s is not commutative" % j.name)
    if j.order < 2:
        ext = obstruction(j)
        if not isinstance(ext, Extension):
            raise JetOrderTooLow("jet %s has order %d and cannot be extended" % (j.name, j.order))
        j = ext.jet
    jr = check_jet(j, 2)
    if not jr.ok:
        raise JetInvalid(jr)
    br = bracket_table(j)
    P = make_structure(s.carrier, s.omega, {"star": s.ops["star"], "bracket": br}, "poisson",
                       name=j.name + "-poisson")
    if not with_report:
        return P
    rep = check_variety(P, "poisson")
    rep.title = "%s: Poisson extraction" % j.name
    rep.results.append(_run3(s, "cyclic T1 self-composition sum", cyclic_lemma(j)))
    rep.results.append(_run3(s, "transposed T1 self-composition sum", transposed_lemma(j)))
    skew = _halve(br)
    c = table_cochain(s, skew)
    if apply_d(c.space, c).is_zero():
        rep.results.append(_run3(s, "skew part Leibniz rule", skew_leibniz(s, skew)))
    else:
        rep.results.append(IdentityResult("skew part Leibniz rule", 0, 0, 3, [],
                                          note="skipped: skew part is not a 2-cocycle"))
    return P, rep


def format_bracket(P):
    """Nonzero bracket entries, deterministic order."""
    lines = []
    for (a, b) in sorted(P.ops["bracket"]):
        for (i, j) in sorted(P.ops["bracket"][(a, b)]):
            terms = P.ops["bracket"][(a, b)][(i, j)]
            body = " + ".join("%s*[%s|e%d]" % (fstr(c), "(x)".join("h%d" % x for x in t), e)
                              for (t, e), c in sorted(terms.items()))
            lines.append("  {e%d *_{%s,%s} e%d} = %s" % (i, P.omega.label(a), P.omega.label(b),
                                                        j, body))
    return lines
