"""
Omega-indexed operation families on H-modules and checkers for their identities.

A structure stores, for every op name and every index pair (a, b) in Omega^2, a
table {(i, j): terms} giving e_i op_{a,b} e_j as canonical terms of
H^{(x)2} (x)_H A.  Family-indexed structures (single index) are embedded into
the pair-indexed tables:

    prec_{a,b} = prec_b,   succ_{a,b} = succ_a,   o_{a,b} = o_a,   *_{a,b} = *_a

and checked both through the embedding and through their own axioms.
"""

from dataclasses import dataclass, field
from itertools import product

from .exactla import ZERO, ONE, Q, fstr
from .hspaces import (QElement, add_into, act_terms, build_quotient,
                      insert_terms, module_map_is_linear, permute_terms)
from .parallel import pmap


class MissingOpTable(KeyError):
    pass


class LinearityViolation(ValueError):
    def __init__(self, witness):
        super().__init__("H(x)H-linearity fails at %r" % (witness,))
        self.witness = witness


class OmegaNotCommutative(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


VARIETY_OPS = {
    "associative": ("star",),
    "commutative": ("star",),
    "lie": ("star",),
    "prelie": ("star",),
    "dendriform": ("prec", "succ"),
    "zinbiel": ("star",),
    "poisson": ("star", "bracket"),
}

FAMILY_VARIETIES = ("dendriform", "prelie", "zinbiel")
NEEDS_COMMUTATIVE_OMEGA = ("lie", "prelie", "zinbiel", "poisson")


def family_embed(op, a, b):
    """Which single index the pair (a, b) reads for a family op."""
    return a if op in ("succ", "star") else b


# ---------------------------------------------------------------------------
# structures

def _normalize_value(space, v):
    if isinstance(v, QElement):
        if v.space is not space:
            raise ShapeMismatch("table entry lives in the wrong quotient space")
        return v.terms
    if isinstance(v, dict):
        return space.reduce({k: Q(c) for k, c in v.items() if Q(c)})
    vec = list(v)
    if len(vec) != space.ambient_dim:
        raise ShapeMismatch("dense table entry has length %d, expected %d"
                            % (len(vec), space.ambient_dim))
    return space.reduce({space.key(j): Q(c) for j, c in enumerate(vec) if Q(c)})


def _normalize_table(space, table, nrows, ncols):
    out = {}
    for (i, j), v in table.items():
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise ShapeMismatch("basis pair (%d, %d) out of range" % (i, j))
        t = _normalize_value(space, v)
        if t:
            out[(i, j)] = t
    return out


@dataclass(eq=False)
class PseudoStructure:
    carrier: object
    omega: object
    ops: dict                 # name -> {(a, b): {(i, j): terms}}
    variety: str
    family: bool = False
    family_ops: dict = None   # name -> {a: {(i, j): terms}} when family
    name: str = "A"
    _vec_cache: dict = field(default_factory=dict, repr=False)

    @property
    def hopf(self):
        return self.carrier.hopf

    @property
    def dim(self):
        return self.carrier.dim

    @property
    def q2(self):
        return build_quotient(self.hopf, self.carrier, 2)

    @property
    def q3(self):
        return build_quotient(self.hopf, self.carrier, 3)

    def table(self, op, a, b):
        try:
            return self.ops[op][(a, b)]
        except KeyError:
            raise MissingOpTable(op) from None

    def value(self, op, a, b, i, j):
        return self.table(op, a, b).get((i, j), {})

    def fam(self, op, a, i, j):
        return self.family_ops[op][a].get((i, j), {})

    def value_vec(self, op, a, b, u, v):
        """op_{a,b} on sparse vectors u, v of A."""
        tab = self.table(op, a, b)
        acc = {}
        for i, x in u.items():
            for j, y in v.items():
                t = tab.get((i, j))
                if t:
                    add_into(acc, t, x * y)
        return acc

    def __repr__(self):
        return "PseudoStructure(%s, %s, dim=%d, |Omega|=%d)" % (
            self.name, self.variety + (" family" if self.family else ""), self.dim, self.omega.size)


def check_linearity(carrier, omega, ops, left_module=None, right_module=None, target=None):
    """First witness (op, (a,b), h, i, j, side) where an op table is not H(x)H-linear, or None."""
    left_module = left_module or carrier
    right_module = right_module or carrier
    target = target or carrier
    h = carrier.hopf
    q2 = build_quotient(h, target, 2)
    for op in sorted(ops):
        for ab in sorted(ops[op]):
            tab = ops[op][ab]

            def val(u, v):
                acc = {}
                for i, x in u.items():
                    for j, y in v.items():
                        t = tab.get((i, j))
                        if t:
                            add_into(acc, t, x * y)
                return acc
            for k in range(h.dim):
                Fl = {(k, u): c for u, c in h.unit_terms.items()}
                Fr = {(u, k): c for u, c in h.unit_terms.items()}
                for i in range(left_module.dim):
                    hi = left_module.act_basis(k, i)
                    for j in range(right_module.dim):
                        base = tab.get((i, j), {})
                        if val(hi, {j: ONE}) != act_terms(q2, Fl, base):
                            return (op, ab, k, i, j, "left")
                        hj = right_module.act_basis(k, j)
                        if val({i: ONE}, hj) != act_terms(q2, Fr, base):
                            return (op, ab, k, i, j, "right")
    return None


def make_structure(carrier, omega, tables, variety, family=False, name="A"):
    """
    Validated structure.  `tables` maps op name to {(a, b): {(i, j): value}}, or
    for family structures to {a: {(i, j): value}}; a value is canonical terms,
    a QElement, or a dense ambient vector.
    """
    if variety not in VARIETY_OPS:
        raise ValueError("unknown variety %r" % variety)
    if family and variety not in FAMILY_VARIETIES:
        raise ValueError("variety %r has no family form" % variety)
    need = VARIETY_OPS[variety]
    for op in need:
        if op not in tables:
            raise MissingOpTable(op)
    q2 = build_quotient(carrier.hopf, carrier, 2)
    n = carrier.dim
    idx = range(omega.size)
    ops, fam = {}, None
    if family:
        fam = {}
        for op in need:
            fam[op] = {a: _normalize_table(q2, tables[op].get(a, {}), n, n) for a in idx}
        for op in need:
            ops[op] = {(a, b): fam[op][family_embed(op, a, b)] for a in idx for b in idx}
    else:
        for op in need:
            ops[op] = {(a, b): _normalize_table(q2, tables[op].get((a, b), {}), n, n)
                       for a in idx for b in idx}
    w = check_linearity(carrier, omega, ops)
    if w:
        raise LinearityViolation(w)
    return PseudoStructure(carrier, omega, ops, variety, family, fam, name)


def zero_structure(carrier, omega, variety, family=False, name="zero"):
    tabs = {op: {} for op in VARIETY_OPS[variety]}
    return make_structure(carrier, omega, tabs, variety, family, name)


# ---------------------------------------------------------------------------
# nested evaluation

def nest_left(target2, inner, outer):
    """(x op y) op' z: `inner` = x op y (terms over A), outer(e) = e op' z in target2."""
    acc = {}
    for (t, e), c in inner.items():
        val = outer(e)
        if val:
            _, piece = insert_terms(target2, val, 0, t)
            add_into(acc, piece, c)
    return acc


def nest_right(target2, inner, outer):
    """x op (y op' z): `inner` = y op' z, outer(e) = x op e in target2."""
    acc = {}
    for (t, e), c in inner.items():
        val = outer(e)
        if val:
            _, piece = insert_terms(target2, val, 1, t)
            add_into(acc, piece, c)
    return acc


def sub(a, b, c=ONE):
    out = dict(a)
    return add_into(out, b, -c)


# ---------------------------------------------------------------------------
# identity catalog; each entry returns lhs - rhs

def _assoc(s, op="star"):
    q2, m = s.q2, s.omega.mul

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        lhs = nest_left(q2, s.value(op, a, b, x, y), lambda e: s.value(op, m(a, b), g, e, z))
        rhs = nest_right(q2, s.value(op, b, g, y, z), lambda e: s.value(op, a, m(b, g), x, e))
        return sub(lhs, rhs)
    return f


def _commutative(s, op="star"):
    q2 = s.q2

    def f(ab, xy):
        (a, b), (x, y) = ab, xy
        return sub(s.value(op, a, b, x, y), permute_terms(q2, (1, 0), s.value(op, b, a, y, x)))
    return f


def _skew(s, op):
    q2 = s.q2

    def f(ab, xy):
        (a, b), (x, y) = ab, xy
        out = dict(s.value(op, a, b, x, y))
        return add_into(out, permute_terms(q2, (1, 0), s.value(op, b, a, y, x)))
    return f


def _jacobi(s, op):
    q2, q3, m = s.q2, s.q3, s.omega.mul

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        lhs = nest_left(q2, s.value(op, a, b, x, y), lambda e: s.value(op, m(a, b), g, e, z))
        r1 = nest_right(q2, s.value(op, b, g, y, z), lambda e: s.value(op, a, m(b, g), x, e))
        r2 = nest_right(q2, s.value(op, a, g, x, z), lambda e: s.value(op, b, m(a, g), y, e))
        return add_into(sub(lhs, r1), permute_terms(q3, (1, 0, 2), r2))
    return f


def _prelie(s, op="star"):
    q2, q3, m = s.q2, s.q3, s.omega.mul

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        l1 = nest_left(q2, s.value(op, a, b, x, y), lambda e: s.value(op, m(a, b), g, e, z))
        l2 = nest_right(q2, s.value(op, b, g, y, z), lambda e: s.value(op, a, m(b, g), x, e))
        r1 = nest_left(q2, s.value(op, b, a, y, x), lambda e: s.value(op, m(b, a), g, e, z))
        r2 = nest_right(q2, s.value(op, a, g, x, z), lambda e: s.value(op, b, m(a, g), y, e))
        return sub(sub(l1, l2), permute_terms(q3, (1, 0, 2), sub(r1, r2)))
    return f


def _prelie_family(s, op="star"):
    q2, q3, m = s.q2, s.q3, s.omega.mul
    F = lambda a, i, j: s.fam(op, a, i, j)

    def f(ab, xyz):
        (a, b), (x, y, z) = ab, xyz
        l1 = nest_left(q2, F(a, x, y), lambda e: F(m(a, b), e, z))
        l2 = nest_right(q2, F(b, y, z), lambda e: F(a, x, e))
        r1 = nest_left(q2, F(b, y, x), lambda e: F(m(b, a), e, z))
        r2 = nest_right(q2, F(a, x, z), lambda e: F(b, y, e))
        return sub(sub(l1, l2), permute_terms(q3, (1, 0, 2), sub(r1, r2)))
    return f


def _dend(s, which):
    q2, m = s.q2, s.omega.mul
    P = lambda a, b, i, j: s.value("prec", a, b, i, j)
    S = lambda a, b, i, j: s.value("succ", a, b, i, j)

    def both(a, b, i, j):
        return add_into(dict(P(a, b, i, j)), S(a, b, i, j))

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        ab, bg = m(a, b), m(b, g)
        if which == 1:
            lhs = nest_left(q2, P(a, b, x, y), lambda e: P(ab, g, e, z))
            rhs = nest_right(q2, both(b, g, y, z), lambda e: P(a, bg, x, e))
        elif which == 2:
            lhs = nest_left(q2, S(a, b, x, y), lambda e: P(ab, g, e, z))
            rhs = nest_right(q2, P(b, g, y, z), lambda e: S(a, bg, x, e))
        else:
            lhs = nest_left(q2, both(a, b, x, y), lambda e: S(ab, g, e, z))
            rhs = nest_right(q2, S(b, g, y, z), lambda e: S(a, bg, x, e))
        return sub(lhs, rhs)
    return f


def _dend_family(s, which):
    q2, m = s.q2, s.omega.mul
    P = lambda a, i, j: s.fam("prec", a, i, j)
    S = lambda a, i, j: s.fam("succ", a, i, j)

    def f(ab_, xyz):
        (a, b), (x, y, z) = ab_, xyz
        ab = m(a, b)
        if which == 1:
            lhs = nest_left(q2, P(a, x, y), lambda e: P(b, e, z))
            inner = add_into(dict(P(b, y, z)), S(a, y, z))
            rhs = nest_right(q2, inner, lambda e: P(ab, x, e))
        elif which == 2:
            lhs = nest_left(q2, S(a, x, y), lambda e: P(b, e, z))
            rhs = nest_right(q2, P(b, y, z), lambda e: S(a, x, e))
        else:
            inner = add_into(dict(P(b, x, y)), S(a, x, y))
            lhs = nest_left(q2, inner, lambda e: S(ab, e, z))
            rhs = nest_right(q2, S(b, y, z), lambda e: S(a, x, e))
        return sub(lhs, rhs)
    return f


def _zinbiel(s, op="star"):
    q2, q3, m = s.q2, s.q3, s.omega.mul

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        lhs = nest_right(q2, s.value(op, b, g, y, z), lambda e: s.value(op, a, m(b, g), x, e))
        r1 = nest_left(q2, s.value(op, a, b, x, y), lambda e: s.value(op, m(a, b), g, e, z))
        r2 = nest_left(q2, s.value(op, b, a, y, x), lambda e: s.value(op, m(a, b), g, e, z))
        return sub(sub(lhs, r1), permute_terms(q3, (1, 0, 2), r2))
    return f


def _zinbiel_family(s, op="star"):
    q2, q3, m = s.q2, s.q3, s.omega.mul
    F = lambda a, i, j: s.fam(op, a, i, j)

    def f(ab_, xyz):
        (a, b), (x, y, z) = ab_, xyz
        lhs = nest_right(q2, F(b, y, z), lambda e: F(a, x, e))
        r1 = nest_left(q2, F(a, x, y), lambda e: F(m(a, b), e, z))
        r2 = nest_left(q2, F(b, y, x), lambda e: F(m(a, b), e, z))
        return sub(sub(lhs, r1), permute_terms(q3, (1, 0, 2), r2))
    return f


def _zinbiel_symmetry(s, op="star"):
    q2, q3, m = s.q2, s.q3, s.omega.mul

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        lhs = nest_right(q2, s.value(op, b, g, y, z), lambda e: s.value(op, a, m(b, g), x, e))
        rhs = nest_right(q2, s.value(op, a, g, x, z), lambda e: s.value(op, b, m(a, g), y, e))
        return sub(lhs, permute_terms(q3, (1, 0, 2), rhs))
    return f


def _leibniz(s, prod="star", br="bracket"):
    q2, q3, m = s.q2, s.q3, s.omega.mul

    def f(abc, xyz):
        (a, b, g), (x, y, z) = abc, xyz
        lhs = nest_right(q2, s.value(prod, b, g, y, z), lambda e: s.value(br, a, m(b, g), x, e))
        r1 = nest_left(q2, s.value(br, a, b, x, y), lambda e: s.value(prod, m(a, b), g, e, z))
        r2 = nest_right(q2, s.value(br, a, g, x, z), lambda e: s.value(prod, b, m(a, g), y, e))
        return sub(sub(lhs, r1), permute_terms(q3, (1, 0, 2), r2))
    return f


# ---------------------------------------------------------------------------
# reports

INDEX_WORD = {1: "index", 2: "index pair", 3: "index triple"}


@dataclass
class Witness:
    identity: str
    indices: tuple
    basis: tuple
    residual: dict

    def describe(self, omega=None):
        lab = (lambda a: omega.label(a)) if omega is not None else str
        return "%s fails at indices (%s), basis (%s)" % (
            self.identity, ",".join(lab(a) for a in self.indices),
            ",".join("e%d" % b for b in self.basis))


@dataclass
class IdentityResult:
    identity: str
    per_index: int          # scalar equations per index tuple
    n_index: int
    index_arity: int
    failures: list
    note: str = ""

    @property
    def ok(self):
        return not self.failures

    def line(self):
        word = INDEX_WORD.get(self.index_arity, "index tuple")
        plural = "" if self.n_index == 1 else ("es" if word == "index" else "s")
        tag = "PASS" if self.ok else "FAIL"
        s = "%s: %s (%d identities × %d %s%s)" % (
            self.identity, tag, self.per_index, self.n_index, word, plural)
        if self.note:
            s += " [%s]" % self.note
        return s

    def to_json(self, omega=None):
        return {
            "identity": self.identity,
            "status": "PASS" if self.ok else "FAIL",
            "identities_per_index_tuple": self.per_index,
            "index_tuples": self.n_index,
            "failures": len(self.failures),
            "witnesses": [{"indices": list(w.indices), "basis": list(w.basis)}
                          for w in self.failures[:5]],
        }


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)
    omega: object = None

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    @property
    def witnesses(self):
        return [w for r in self.results for w in r.failures]

    def extend(self, other):
        self.results.extend(other.results)
        return self

    def lines(self, max_witnesses=3):
        out = []
        for r in self.results:
            out.append(r.line())
            for w in r.failures[:max_witnesses]:
                out.append("    " + w.describe(self.omega))
        return out

    def text(self):
        return "\n".join(["[%s]" % self.title] + self.lines())

    def to_json(self):
        return {"title": self.title, "ok": self.ok,
                "results": [r.to_json(self.omega) for r in self.results]}


def run_identity(name, fn, omega, index_arity, dims, target_dim, note=""):
    """Evaluate fn over every index tuple and basis tuple; deterministic order."""
    idx = list(product(range(omega.size), repeat=index_arity))
    bases = list(product(*[range(d) for d in dims]))

    def one(ix):
        fails = []
        for bt in bases:
            r = fn(ix, bt)
            if r:
                fails.append(Witness(name, ix, bt, r))
        return fails
    fails = [w for chunk in pmap(one, idx) for w in chunk]
    per = target_dim
    for d in dims:
        per *= d
    return IdentityResult(name, per, len(idx), index_arity, fails, note)


def _require_commutative(s, variety):
    if variety in NEEDS_COMMUTATIVE_OMEGA and not s.omega.commutative:
        raise OmegaNotCommutative("variety %r needs a commutative Omega" % variety)


def identity_catalog(s, variety):
    """(name, fn, index arity, arity) entries defining `variety` for s."""
    if variety == "associative":
        return [("Ω-associative", _assoc(s), 3, 3)]
    if variety == "commutative":
        return [("Ω-associative", _assoc(s), 3, 3), ("commutative", _commutative(s), 2, 2)]
    if variety == "lie":
        op = "bracket" if "bracket" in s.ops else "star"
        return [("skew-symmetry", _skew(s, op), 2, 2), ("Jacobi identity", _jacobi(s, op), 3, 3)]
    if variety == "prelie":
        out = [("Ω-pre-Lie", _prelie(s), 3, 3)]
        if s.family:
            out.append(("pre-Lie family", _prelie_family(s), 2, 3))
        return out
    if variety == "dendriform":
        out = [("dendriform prec-prec", _dend(s, 1), 3, 3),
               ("dendriform succ-prec", _dend(s, 2), 3, 3),
               ("dendriform sum-succ", _dend(s, 3), 3, 3)]
        if s.family:
            out += [("dendriform family prec-prec", _dend_family(s, 1), 2, 3),
                    ("dendriform family succ-prec", _dend_family(s, 2), 2, 3),
                    ("dendriform family sum-succ", _dend_family(s, 3), 2, 3)]
        return out
    if variety == "zinbiel":
        out = [("Ω-zinbiel", _zinbiel(s), 3, 3)]
        if s.family:
            out.append(("zinbiel family", _zinbiel_family(s), 2, 3))
        return out
    if variety == "zinbiel-symmetry":
        return [("zinbiel left symmetry", _zinbiel_symmetry(s), 3, 3)]
    if variety == "poisson":
        return [("skew-symmetry", _skew(s, "bracket"), 2, 2),
                ("Jacobi identity", _jacobi(s, "bracket"), 3, 3),
                ("Ω-associative", _assoc(s), 3, 3),
                ("commutative", _commutative(s), 2, 2),
                ("Leibniz compatibility", _leibniz(s), 3, 3)]
    raise ValueError("unknown variety %r" % variety)


def check_variety(s, variety=None):
    """Report on every defining identity of `variety` (default: the claimed one)."""
    variety = variety or s.variety
    base = variety
    if variety != "zinbiel-symmetry":
        for op in VARIETY_OPS[variety]:
            if op not in s.ops:
                raise MissingOpTable(op)
    else:
        base = "zinbiel"
    _require_commutative(s, base)
    rep = Report("%s: %s" % (s.name, variety), omega=s.omega)
    q2, q3 = s.q2, s.q3
    for name, fn, iar, ar in identity_catalog(s, variety):
        tdim = (q2 if ar == 2 else q3).dim
        rep.results.append(run_identity(name, fn, s.omega, iar, [s.dim] * ar, tdim))
    return rep


def check_zinbiel_consequence(s):
    return check_variety(s, "zinbiel-symmetry")


# ---------------------------------------------------------------------------
# bimodules

@dataclass(eq=False)
class BimoduleStructure:
    algebra: PseudoStructure
    carrier: object
    left: dict     # (a, b) -> {(i, j): terms}, i in A, j in M
    right: dict    # (a, b) -> {(j, i): terms}, j in M, i in A
    name: str = "M"

    @property
    def q2(self):
        return build_quotient(self.carrier.hopf, self.carrier, 2)

    @property
    def q3(self):
        return build_quotient(self.carrier.hopf, self.carrier, 3)

    def lval(self, a, b, i, j):
        return self.left[(a, b)].get((i, j), {})

    def rval(self, a, b, j, i):
        return self.right[(a, b)].get((j, i), {})

    def lvec(self, a, b, u, v):
        acc = {}
        tab = self.left[(a, b)]
        for i, x in u.items():
            for j, y in v.items():
                t = tab.get((i, j))
                if t:
                    add_into(acc, t, x * y)
        return acc

    def rvec(self, a, b, v, u):
        acc = {}
        tab = self.right[(a, b)]
        for j, y in v.items():
            for i, x in u.items():
                t = tab.get((j, i))
                if t:
                    add_into(acc, t, x * y)
        return acc


def make_bimodule(algebra, carrier, left, right, name="M"):
    if carrier.hopf is not algebra.hopf:
        raise ShapeMismatch("bimodule over a different Hopf algebra")
    q2 = build_quotient(carrier.hopf, carrier, 2)
    idx = range(algebra.omega.size)
    nA, nM = algebra.dim, carrier.dim
    L = {(a, b): _normalize_table(q2, left.get((a, b), {}), nA, nM) for a in idx for b in idx}
    R = {(a, b): _normalize_table(q2, right.get((a, b), {}), nM, nA) for a in idx for b in idx}
    w = check_linearity(carrier, algebra.omega, {"left": L}, left_module=algebra.carrier,
                        right_module=carrier, target=carrier)
    w = w or check_linearity(carrier, algebra.omega, {"right": R}, left_module=carrier,
                             right_module=algebra.carrier, target=carrier)
    if w:
        raise LinearityViolation(w)
    return BimoduleStructure(algebra, carrier, L, R, name)


def adjoint_bimodule(algebra):
    """A as a bimodule over itself through its own product."""
    t = algebra.ops["star"]
    return BimoduleStructure(algebra, algebra.carrier, t, t, name=algebra.name + "-adjoint")


def check_bimodule(b):
    A, m = b.algebra, b.algebra.omega.mul
    if "star" not in A.ops:
        raise MissingOpTable("star")
    q2 = b.q2
    star = lambda a, c, i, j: A.value("star", a, c, i, j)

    def ll(abc, t):
        (a, bb, g), (x, y, u) = abc, t
        lhs = nest_left(q2, star(a, bb, x, y), lambda e: b.lval(m(a, bb), g, e, u))
        rhs = nest_right(q2, b.lval(bb, g, y, u), lambda e: b.lval(a, m(bb, g), x, e))
        return sub(lhs, rhs)

    def lr(abc, t):
        (a, bb, g), (x, u, y) = abc, t
        lhs = nest_left(q2, b.lval(a, bb, x, u), lambda e: b.rval(m(a, bb), g, e, y))
        rhs = nest_right(q2, b.rval(bb, g, u, y), lambda e: b.lval(a, m(bb, g), x, e))
        return sub(lhs, rhs)

    def rr(abc, t):
        (a, bb, g), (u, x, y) = abc, t
        lhs = nest_left(q2, b.rval(a, bb, u, x), lambda e: b.rval(m(a, bb), g, e, y))
        rhs = nest_right(q2, star(bb, g, x, y), lambda e: b.rval(a, m(bb, g), u, e))
        return sub(lhs, rhs)

    nA, nM, t3 = A.dim, b.carrier.dim, b.q3.dim
    rep = Report("%s: bimodule over %s" % (b.name, A.name), omega=A.omega)
    rep.results.append(run_identity("bimodule left-left", ll, A.omega, 3, [nA, nA, nM], t3))
    rep.results.append(run_identity("bimodule left-right", lr, A.omega, 3, [nA, nM, nA], t3))
    rep.results.append(run_identity("bimodule right-right", rr, A.omega, 3, [nM, nA, nA], t3))
    return rep


# ---------------------------------------------------------------------------
# operator families and morphisms

def _apply(mat, v):
    out = {}
    for j, c in v.items():
        for r in range(len(mat)):
            x = mat[r][j]
            if x:
                w = out.get(r, ZERO) + c * x
                if w:
                    out[r] = w
                else:
                    out.pop(r, None)
    return out


def push_terms(space_out, mat, terms):
    """(id (x)_H T) on terms: the module factor is mapped by the matrix."""
    raw = {}
    for (t, e), c in terms.items():
        for r in range(len(mat)):
            x = mat[r][e]
            if x:
                raw[(t, r)] = raw.get((t, r), ZERO) + c * x
    return space_out.reduce(raw)


def _matrix(mat, rows, cols):
    m = [[Q(c) for c in row] for row in mat]
    if len(m) != rows or any(len(r) != cols for r in m):
        raise ShapeMismatch("map must be a %dx%d matrix" % (rows, cols))
    return tuple(tuple(r) for r in m)


@dataclass(eq=False)
class OperatorFamily:
    domain: object     # HModule M
    codomain: object   # HModule A
    omega: object
    maps: dict         # a -> matrix (dim A rows x dim M cols)
    name: str = "T"

    def apply(self, a, v):
        return _apply(self.maps[a], v)


def make_operator_family(domain, codomain, omega, maps, name="T"):
    mats = {a: _matrix(maps[a], codomain.dim, domain.dim) for a in range(omega.size)}
    for a, mat in mats.items():
        w = module_map_is_linear(domain, codomain, mat)
        if w:
            raise ShapeMismatch("T_%s is not H-linear at %r" % (omega.label(a), w))
    return OperatorFamily(domain, codomain, omega, mats, name)


def check_operator_family(t, b):
    """T_a(u)*T_b(v) = T_ab(T_a(u)*_l v + u*_r T_b(v)) over all a, b and basis u, v."""
    A = b.algebra
    if A.omega.size != 1:
        raise ShapeMismatch("operator families act over an algebra with trivial Omega")
    if t.domain is not b.carrier or t.codomain is not A.carrier:
        raise ShapeMismatch("operator family does not match the bimodule")
    qA = A.q2
    m = t.omega.mul

    def f(ab, uv):
        (a, bb), (u, v) = ab, uv
        Tu, Tv = t.apply(a, {u: ONE}), t.apply(bb, {v: ONE})
        lhs = A.value_vec("star", 0, 0, Tu, Tv)
        inner = add_into(dict(b.lvec(0, 0, Tu, {v: ONE})), b.rvec(0, 0, {u: ONE}, Tv))
        rhs = push_terms(qA, t.maps[m(a, bb)], inner)
        return sub(lhs, rhs)
    rep = Report("%s: operator family" % t.name, omega=t.omega)
    rep.results.append(run_identity("operator family identity", f, t.omega, 2,
                                    [t.domain.dim] * 2, qA.dim))
    return rep


@dataclass(eq=False)
class MorphismFamily:
    source: PseudoStructure
    target: PseudoStructure
    maps: dict
    name: str = "f"


def make_morphism(source, target, maps, name="f"):
    if source.hopf is not target.hopf or source.omega.size != target.omega.size:
        raise ShapeMismatch("source and target must share H and Omega")
    mats = {a: _matrix(maps[a], target.dim, source.dim) for a in range(source.omega.size)}
    for a, mat in mats.items():
        w = module_map_is_linear(source.carrier, target.carrier, mat)
        if w:
            raise ShapeMismatch("f_%s is not H-linear at %r" % (source.omega.label(a), w))
    return MorphismFamily(source, target, mats, name)


def check_morphism(f, op="star"):
    S, T = f.source, f.target
    m = S.omega.mul
    q2 = T.q2

    def g(ab, xy):
        (a, b), (x, y) = ab, xy
        lhs = push_terms(q2, f.maps[m(a, b)], S.value(op, a, b, x, y))
        rhs = T.value_vec(op, a, b, _apply(f.maps[a], {x: ONE}), _apply(f.maps[b], {y: ONE}))
        return sub(lhs, rhs)
    rep = Report("%s: morphism %s -> %s" % (f.name, S.name, T.name), omega=S.omega)
    rep.results.append(run_identity("morphism identity", g, S.omega, 2, [S.dim] * 2, q2.dim))
    return rep


def tables_equal(s1, s2, op1="star", op2=None):
    """Entry-wise equality of two op tables on the same carrier."""
    op2 = op2 or op1
    for ab in s1.ops[op1]:
        t1, t2 = s1.ops[op1][ab], s2.ops[op2][ab]
        keys = set(t1) | set(t2)
        for k in keys:
            if t1.get(k, {}) != t2.get(k, {}):
                return False
    return True


def format_table(s, op):
    """Deterministic human-readable op table."""
    lines = []
    for (a, b) in sorted(s.ops[op]):
        for (i, j) in sorted(s.ops[op][(a, b)]):
            terms = s.ops[op][(a, b)][(i, j)]
            body = " + ".join("%s*[%s|e%d]" % (fstr(c), "(x)".join("h%d" % x for x in t), e)
                              for (t, e), c in sorted(terms.items()))
            lines.append("  e%d %s_{%s,%s} e%d = %s" % (
                i, op, s.omega.label(a), s.omega.label(b), j, body))
    return lines
