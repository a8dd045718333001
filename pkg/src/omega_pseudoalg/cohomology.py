"""
Cochain complexes of Omega-associative H-pseudoalgebras with bimodule
coefficients, the twisted complex of an operator family, and exact ranks.

An n-cochain (n >= 1) is an Omega^n-indexed family of H^{(x)n}-linear maps
A^{(x)n} -> H^{(x)n} (x)_H M.  The space of such maps is computed once per
degree as the kernel of the linearity constraints; the constraints only couple
basis tuples lying in the same H-orbit component, so the kernel is solved one
component at a time.  Each kernel vector is 1 at exactly one free unknown and
0 at the others, so the coordinates of any H-linear map are its values at the
free unknowns ("generator tuples").
"""

from dataclasses import dataclass, field
from itertools import product

from .exactla import ZERO, ONE, RowReducer
from .hspaces import (add_into, act_terms, build_quotient, counit_at, collapse, embed,
                      insert_terms)
from .config import DEFAULTS
from .parallel import pmap
from .pseudo import nest_left, nest_right, push_terms, sub

DEFAULT_DEGREE_CAP = DEFAULTS.degree_cap


class NoUnitInOmega(ValueError):
    pass


class CoordinateSolveFailed(AssertionError):
    """A map that should be H-linear is not in the span of the hom basis."""


class DegreeTooHigh(ValueError):
    pass


def _components(module):
    """Connected components of basis indices under the H-action support graph."""
    n = module.dim
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for k in range(module.hopf.dim):
        for i in range(n):
            for r in module.act_basis(k, i):
                a, b = find(i), find(r)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return [comps[r] for r in sorted(comps)]


def _unit_tensor(h, n, slot, k):
    """1 (x) .. h_k .. (x) 1 as {tuple: coeff}."""
    out = {(): ONE}
    for i in range(n):
        fac = {k: ONE} if i == slot else h.unit_terms
        out = {t + (a,): c * e for t, c in out.items() for a, e in fac.items()}
    return out


def _q_matrix(q, F):
    """Action of F (x)_H 1 on the canonical basis of q: list of sparse coordinate dicts."""
    return [q.sparse_coords(act_terms(q, F, {b: ONE})) for b in q.basis_keys]


@dataclass(eq=False)
class HomBasis:
    """Basis of Hom_{H^{(x)n}}(A^{(x)n}, H^{(x)n} (x)_H M)."""
    n: int
    space: object                         # target quotient space
    vectors: list                         # j -> {tuple: canonical terms}
    free: list                            # j -> (tuple, coordinate position)
    by_tuple: dict = field(default_factory=dict)     # tuple -> [(j, terms)]
    generators: dict = field(default_factory=dict)   # tuple -> [(j, position)]

    @property
    def dim(self):
        return len(self.vectors)


class _IdCache:
    """Cache keyed by object identity; keeps the key objects alive so ids stay unique."""

    def __init__(self):
        self._d = {}

    def get(self, objs, extra=()):
        hit = self._d.get(tuple(map(id, objs)) + tuple(extra))
        if hit is not None and all(a is b for a, b in zip(hit[0], objs)):
            return hit[1]
        return None

    def put(self, objs, extra, value):
        self._d[tuple(map(id, objs)) + tuple(extra)] = (tuple(objs), value)
        return value


_HOM = _IdCache()


def hom_basis(source, target, n):
    """Hom space for source (A, an H-module) and coefficient module target (M)."""
    hb = _HOM.get((source, target), (n,))
    if hb is not None:
        return hb
    h = source.hopf
    q = build_quotient(h, target, n)
    qd = q.dim
    comps = _components(source)
    L = {(i, k): _q_matrix(q, _unit_tensor(h, n, i, k)) for i in range(n) for k in range(h.dim)}
    vectors, free = [], []
    for combo in product(range(len(comps)), repeat=n):
        tuples = list(product(*[comps[c] for c in combo]))
        pos = {t: p for p, t in enumerate(tuples)}
        red = RowReducer(len(tuples) * qd)
        for t in tuples:
            base = pos[t] * qd
            for i in range(n):
                for k in range(h.dim):
                    acts = source.act_basis(k, t[i])
                    Lm = L[(i, k)]
                    rows = [dict() for _ in range(qd)]
                    for r, c in acts.items():
                        tt = t[:i] + (r,) + t[i + 1:]
                        b2 = pos[tt] * qd
                        for p in range(qd):
                            rows[p][b2 + p] = rows[p].get(b2 + p, ZERO) + c
                    for pp in range(qd):
                        for p, c in Lm[pp].items():
                            rows[p][base + pp] = rows[p].get(base + pp, ZERO) - c
                    for row in rows:
                        row = {a: v for a, v in row.items() if v}
                        if row:
                            red.add(row)
        kern, fcols = red.kernel_basis()
        for vec, fc in zip(kern, fcols):
            val = {}
            for u, c in vec.items():
                t = tuples[u // qd]
                val.setdefault(t, {})[q.basis_keys[u % qd]] = c
            vectors.append(val)
            free.append((tuples[fc // qd], fc % qd))
    hb = HomBasis(n, q, vectors, free)
    for j, val in enumerate(vectors):
        for t, terms in val.items():
            hb.by_tuple.setdefault(t, []).append((j, terms))
    for j, (t, p) in enumerate(free):
        hb.generators.setdefault(t, []).append((j, p))
    return _HOM.put((source, target), (n,), hb)


# ---------------------------------------------------------------------------
# cochain spaces

@dataclass(eq=False)
class CochainSpace:
    n: int
    algebra: object          # PseudoStructure (Omega-associative)
    coefficients: object     # BimoduleStructure
    hom: HomBasis = None     # n >= 1
    reps: list = None        # n == 0: module basis indices spanning M / H_+ M
    _h0: RowReducer = None

    @property
    def omega(self):
        return self.algebra.omega

    @property
    def index_tuples(self):
        return list(product(range(self.omega.size), repeat=self.n))

    @property
    def hom_dim(self):
        return len(self.reps) if self.n == 0 else self.hom.dim

    @property
    def dim(self):
        return self.omega.size ** self.n * self.hom_dim if self.n else len(self.reps)

    @property
    def target(self):
        return self.hom.space

    def coordinate(self, ix, j):
        p = 0
        for a in ix:
            p = p * self.omega.size + a
        return p * self.hom.dim + j

    def basis_cochain(self, c):
        v = [ZERO] * self.dim
        v[c] = ONE
        return Cochain(self, tuple(v))

    def zero(self):
        return Cochain(self, (ZERO,) * self.dim)

    # degree 0
    def reduce0(self, vec):
        """Coordinates in M / H_+ M of a module vector {index: coeff}."""
        r = self._h0.reduce(vec)
        return tuple(r.get(j, ZERO) for j in self.reps)

    # n >= 1
    def values(self, coords):
        """Evaluator (ix, basis tuple) -> canonical terms of the cochain with `coords`."""
        hb, cache = self.hom, {}
        offsets = {ix: self.coordinate(ix, 0) for ix in self.index_tuples}

        def val(ix, xt):
            key = (ix, xt)
            out = cache.get(key)
            if out is None:
                out = {}
                off = offsets[ix]
                for j, terms in hb.by_tuple.get(xt, ()):
                    c = coords[off + j]
                    if c:
                        add_into(out, terms, c)
                cache[key] = out
            return out
        return val

    def extract(self, fn, strict=False):
        """Coordinates of the H-linear family given by fn(ix, basis tuple) -> terms."""
        hb, q = self.hom, self.hom.space
        coords = [ZERO] * self.dim
        for ix in self.index_tuples:
            off = self.coordinate(ix, 0)
            for t, entries in hb.generators.items():
                v = q.sparse_coords(fn(ix, t))
                for j, p in entries:
                    coords[off + j] = v.get(p, ZERO)
        coords = tuple(coords)
        if strict:
            back = self.values(coords)
            src = self.algebra.dim
            for ix in self.index_tuples:
                for t in product(range(src), repeat=self.n):
                    if fn(ix, t) != back(ix, t):
                        raise CoordinateSolveFailed(
                            "degree %d family is not H-linear at indices %r, basis %r"
                            % (self.n, ix, t))
        return coords

    def from_table(self, table, strict=True):
        """2-cochain from a table {(a, b): {(i, j): terms}} (e.g. a deformation term)."""
        return Cochain(self, self.extract(lambda ix, t: table[ix].get(t, {}), strict=strict))


@dataclass(frozen=True)
class Cochain:
    space: CochainSpace
    coords: tuple

    def value(self):
        return self.space.values(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def __add__(self, other):
        return Cochain(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Cochain(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c):
        return Cochain(self.space, tuple(c * a for a in self.coords))


_SPACES = _IdCache()


def cochain_basis(algebra, coefficients, n):
    """The cochain space C^n(A, M); cached per (A, M, n)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    cs = _SPACES.get((algebra, coefficients), (n,))
    if cs is not None:
        return cs
    M = coefficients.carrier
    if n == 0:
        if algebra.omega.unit is None:
            raise NoUnitInOmega("degree-0 cochains need a unit in Omega")
        h = M.hopf
        red = RowReducer(M.dim)
        for k in range(h.dim):
            e = h.counit[k]
            for m in range(M.dim):
                row = dict(M.act_basis(k, m))
                if e:
                    row[m] = row.get(m, ZERO) - e
                row = {a: v for a, v in row.items() if v}
                if row:
                    red.add(row)
        cs = CochainSpace(0, algebra, coefficients, reps=red.free_columns(), _h0=red)
    else:
        cs = CochainSpace(n, algebra, coefficients, hom=hom_basis(algebra.carrier, M, n))
    return _SPACES.put((algebra, coefficients), (n,), cs)


# ---------------------------------------------------------------------------
# differentials

def index_product(omega, ix):
    p = ix[0]
    for a in ix[1:]:
        p = omega.mul(p, a)
    return p


def _star_at(A, a, b, x, y):
    return A.value("star", a, b, x, y)


def d0_value(algebra, coefficients, mvec):
    """alpha, a -> (id (x) eps)(a ._{alpha,1} m) - (eps (x) id)(m ._{1,alpha} a) in H (x)_H M."""
    B, om = coefficients, algebra.omega
    one = om.unit
    if one is None:
        raise NoUnitInOmega("d^0 needs a unit in Omega")
    q2 = B.q2

    def val(ix, xt):
        (a,), (x,) = ix, xt
        acc = {}
        for m, c in mvec.items():
            _, l = counit_at(q2, B.lval(a, one, x, m), 1)
            _, r = counit_at(q2, B.rval(one, a, m, x), 0)
            add_into(acc, l, c)
            add_into(acc, r, -c)
        return acc
    return val


def d_value(algebra, coefficients, n, f):
    """Evaluator of d^n f for n >= 1, f an evaluator (ix, basis tuple) -> terms."""
    A, B, om = algebra, coefficients, algebra.omega
    M = B.carrier
    q2 = B.q2
    m = om.mul
    qn = build_quotient(M.hopf, M, n)

    def val(ix, xt):
        acc = {}
        rest = index_product(om, ix[1:])
        first = f(ix[1:], xt[1:])
        add_into(acc, nest_right(q2, first, lambda e: B.lval(ix[0], rest, xt[0], e)))
        for i in range(1, n + 1):
            sign = ONE if i % 2 == 0 else -ONE
            jx = ix[:i - 1] + (m(ix[i - 1], ix[i]),) + ix[i + 1:]
            for (g, e), c in _star_at(A, ix[i - 1], ix[i], xt[i - 1], xt[i]).items():
                inner = f(jx, xt[:i - 1] + (e,) + xt[i + 1:])
                if inner:
                    _, piece = insert_terms(qn, inner, i - 1, g)
                    add_into(acc, piece, sign * c)
        head = index_product(om, ix[:n])
        last = f(ix[:n], xt[:n])
        sign = ONE if (n + 1) % 2 == 0 else -ONE
        add_into(acc, nest_left(q2, last, lambda e: B.rval(head, ix[n], e, xt[n])), sign)
        return acc
    return val


def apply_d(space, f, strict=False):
    """d^n f as a cochain of degree n + 1."""
    A, B = space.algebra, space.coefficients
    nxt = cochain_basis(A, B, space.n + 1)
    if space.n == 0:
        mvec = {space.reps[j]: c for j, c in enumerate(f.coords) if c}
        fn = d0_value(A, B, mvec)
    else:
        fn = d_value(A, B, space.n, f.value())
    return Cochain(nxt, nxt.extract(fn, strict=strict))


_MATRICES = _IdCache()


def d_matrix(algebra, coefficients, n):
    """Columns (sparse dicts) of d^n in the cochain bases."""
    cols = _MATRICES.get((algebra, coefficients), ("d", n))
    if cols is None:
        cs = cochain_basis(algebra, coefficients, n)
        cols = pmap(lambda c: _sparse(apply_d(cs, cs.basis_cochain(c)).coords), range(cs.dim))
        _MATRICES.put((algebra, coefficients), ("d", n), cols)
    return cols


def _sparse(v):
    return {i: c for i, c in enumerate(v) if c}


def matrix_rank(cols, nrows):
    red = RowReducer(nrows)
    for c in cols:
        red.add(c)
    return red.rank


@dataclass
class ComplexViolation:
    degree: int
    cochain: int
    indices: tuple
    basis: tuple


@dataclass
class ComplexReport:
    title: str
    checked: dict = field(default_factory=dict)     # n -> number of cochains pushed through
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def lines(self):
        out = []
        for n in sorted(self.checked):
            bad = [v for v in self.violations if v.degree == n]
            out.append("d^%d∘d^%d = 0: %s (%d basis cochains)" % (
                n, n - 1, "FAIL" if bad else "PASS", self.checked[n]))
            for v in bad[:3]:
                out.append("    nonzero on basis cochain %d at indices %r, basis %r"
                           % (v.cochain, v.indices, v.basis))
        return out

    def text(self):
        return "\n".join(["[%s]" % self.title] + self.lines())


def verify_complex(algebra, coefficients, n_max, full=False, start=None):
    """
    Check d^n o d^{n-1} = 0 on every basis cochain of C^{n-1}, 1 <= n <= n_max.
    By default d^n is evaluated on generator tuples (enough for H-linear
    results); full=True evaluates on every basis tuple.
    """
    if n_max > DEFAULT_DEGREE_CAP:
        raise DegreeTooHigh("degree cap is %d" % DEFAULT_DEGREE_CAP)
    start = start if start is not None else (0 if algebra.omega.unit is not None else 2)
    rep = ComplexReport("complex %s with coefficients %s" % (algebra.name, coefficients.name))
    for n in range(max(1, start), n_max + 1):
        prev = cochain_basis(algebra, coefficients, n - 1)
        tuples = (list(product(range(algebra.dim), repeat=n + 1)) if full
                  else list(cochain_basis(algebra, coefficients, n + 1).hom.generators))

        def one(c):
            g = apply_d(prev, prev.basis_cochain(c))
            dd = d_value(algebra, coefficients, n, g.value())
            for ix in product(range(algebra.omega.size), repeat=n + 1):
                for t in tuples:
                    if dd(ix, t):
                        return ComplexViolation(n, c, ix, t)
            return None
        found = [v for v in pmap(one, range(prev.dim)) if v]
        rep.checked[n] = prev.dim
        rep.violations.extend(found)
    return rep


@dataclass(frozen=True)
class CohomologyRank:
    degree: int
    cochains: int
    cocycles: int
    coboundaries: int

    @property
    def cohomology(self):
        return self.cocycles - self.coboundaries

    def line(self):
        return "H^%d: dim C = %d, dim Z = %d, dim B = %d, dim H = %d" % (
            self.degree, self.cochains, self.cocycles, self.coboundaries, self.cohomology)


def cohomology_rank(algebra, coefficients, n, matrix=d_matrix):
    if n > DEFAULT_DEGREE_CAP:
        raise DegreeTooHigh("degree cap is %d" % DEFAULT_DEGREE_CAP)
    cs = cochain_basis(algebra, coefficients, n)
    nxt = cochain_basis(algebra, coefficients, n + 1)
    rk = matrix_rank(matrix(algebra, coefficients, n), nxt.dim)
    z = cs.dim - rk
    b = 0
    if n > 1 or (n == 1 and algebra.omega.unit is not None):
        b = matrix_rank(matrix(algebra, coefficients, n - 1), cs.dim)
    return CohomologyRank(n, cs.dim, z, b)


# ---------------------------------------------------------------------------
# cohomology of an operator family

def mu_one_eps(q2, terms):
    """h (x) g (x)_H a |-> eps(g) h.a."""
    q1, t = counit_at(q2, terms, 1)
    return collapse(q1, t)


def mu_eps_one(q2, terms):
    """h (x) g (x)_H a |-> eps(h) g.a."""
    q1, t = counit_at(q2, terms, 0)
    return collapse(q1, t)


@dataclass(eq=False)
class OperatorComplex:
    """The twisted complex C^n(M, A) of an operator family T over (A, M)."""
    family: object
    bimodule: object
    induced: object        # Omega-associative structure on M
    back: object           # A as a bimodule over `induced`

    def space(self, n):
        return cochain_basis(self.induced, self.back, n)


def operator_complex(t, b, verify=True):
    from .construct import oop_induced
    S, back = oop_induced(t, b, "bimodule-back", verify=verify)
    return OperatorComplex(t, b, S, back)


def delta_value(oc, n, f):
    """The twisted differential written directly in terms of T, * and the actions."""
    T, B = oc.family, oc.bimodule
    A = B.algebra
    om = T.omega
    qA2 = A.q2
    qM2 = B.q2
    carA = A.carrier
    m = om.mul

    if n == 0:
        avec = f
        q1 = build_quotient(carA.hopf, carA, 1)

        def val0(ix, xt):
            (a,), (u,) = ix, xt
            Tu = T.apply(a, {u: ONE})
            acc = {}
            for e, c in avec.items():
                l = sub(A.value_vec("star", 0, 0, Tu, {e: ONE}),
                        push_terms(qA2, T.maps[a], B.rval(0, 0, u, e)))
                r = sub(A.value_vec("star", 0, 0, {e: ONE}, Tu),
                        push_terms(qA2, T.maps[a], B.lval(0, 0, e, u)))
                add_into(acc, mu_one_eps(qA2, l), c)
                add_into(acc, mu_eps_one(qA2, r), -c)
            return embed(q1, acc)
        return val0

    qAn = build_quotient(carA.hopf, carA, n)
    qAn1 = build_quotient(carA.hopf, carA, n + 1)

    def val(ix, xt):
        total = index_product(om, ix)
        acc = {}
        first = f(ix[1:], xt[1:])
        Tu1 = T.apply(ix[0], {xt[0]: ONE})
        add_into(acc, nest_right(qA2, first, lambda e: A.value_vec("star", 0, 0, Tu1, {e: ONE})))
        through_m = nest_right(qM2, first, lambda e: B.rval(0, 0, xt[0], e))
        add_into(acc, push_terms(qAn1, T.maps[total], through_m), -ONE)
        for i in range(1, n + 1):
            sign = ONE if i % 2 == 0 else -ONE
            jx = ix[:i - 1] + (m(ix[i - 1], ix[i]),) + ix[i + 1:]
            u, v = xt[i - 1], xt[i]
            hat = add_into(dict(B.lvec(0, 0, T.apply(ix[i - 1], {u: ONE}), {v: ONE})),
                           B.rvec(0, 0, {u: ONE}, T.apply(ix[i], {v: ONE})))
            for (g, e), c in hat.items():
                inner = f(jx, xt[:i - 1] + (e,) + xt[i + 1:])
                if inner:
                    _, piece = insert_terms(qAn, inner, i - 1, g)
                    add_into(acc, piece, sign * c)
        sign = ONE if (n + 1) % 2 == 0 else -ONE
        last = f(ix[:n], xt[:n])
        Tun = T.apply(ix[n], {xt[n]: ONE})
        add_into(acc, nest_left(qA2, last, lambda e: A.value_vec("star", 0, 0, {e: ONE}, Tun)), sign)
        through_m = nest_left(qM2, last, lambda e: B.lval(0, 0, e, xt[n]))
        add_into(acc, push_terms(qAn1, T.maps[total], through_m), -sign)
        return acc
    return val


def oop_apply_delta(oc, space, f, strict=False):
    nxt = oc.space(space.n + 1)
    if space.n == 0:
        fn = delta_value(oc, 0, {space.reps[j]: c for j, c in enumerate(f.coords) if c})
    else:
        fn = delta_value(oc, space.n, f.value())
    return Cochain(nxt, nxt.extract(fn, strict=strict))


def delta_matrix(oc, n):
    cols = _MATRICES.get((oc,), ("delta", n))
    if cols is None:
        cs = oc.space(n)
        cols = pmap(lambda c: _sparse(oop_apply_delta(oc, cs, cs.basis_cochain(c)).coords),
                    range(cs.dim))
        _MATRICES.put((oc,), ("delta", n), cols)
    return cols


def oop_cohomology_rank(oc, n):
    return cohomology_rank(oc.induced, oc.back, n,
                           matrix=lambda _a, _b, k: delta_matrix(oc, k))


def compare_delta_with_induced(oc, n_max):
    """Degrees n <= n_max at which the two differentials differ (expected: none)."""
    bad = []
    for n in range(0 if oc.induced.omega.unit is not None else 1, n_max + 1):
        if delta_matrix(oc, n) != d_matrix(oc.induced, oc.back, n):
            bad.append(n)
    return bad
