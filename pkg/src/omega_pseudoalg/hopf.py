"""
Finite-dimensional cocommutative Hopf algebras and finite semigroups.

A Hopf algebra is stored by structure tensors on a fixed basis h_0..h_{d-1}:

* ``mult[i][j]``   -- coefficient vector of h_i h_j
* ``unit``         -- coefficient vector of 1
* ``comult[i]``    -- dict {(j, k): c} for Delta(h_i) = sum c h_j (x) h_k
* ``counit[i]``    -- epsilon(h_i)
* ``antipode[j][i]`` -- coefficient of h_j in S(h_i)

Elements of H are tuples of Fractions; elements of H^{(x)n} are dicts mapping
index n-tuples to Fractions.
"""

from dataclasses import dataclass, field
from itertools import product

from .exactla import ZERO, ONE, Q, RowReducer


class NotAGroup(ValueError):
    def __init__(self, axiom, witness):
        super().__init__("not a group: %s fails at %r" % (axiom, witness))
        self.axiom = axiom
        self.witness = witness


class SemigroupError(ValueError):
    def __init__(self, msg, witness):
        super().__init__("%s at %r" % (msg, witness))
        self.witness = witness


class NotAssociative(SemigroupError):
    def __init__(self, witness):
        super().__init__("semigroup table is not associative", witness)


class UnitNotNeutral(SemigroupError):
    def __init__(self, witness):
        super().__init__("declared unit is not two-sided", witness)


class NotCommutative(SemigroupError):
    def __init__(self, witness):
        super().__init__("semigroup flagged commutative but table is not", witness)


class KindMismatch(ValueError):
    pass


def _vec(d, items=()):
    v = [ZERO] * d
    for i, c in items:
        v[i] += c
    return tuple(v)


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    dim: int
    mult: tuple
    unit: tuple
    comult: tuple
    counit: tuple
    antipode: tuple
    group: tuple = None         # multiplication table when H is a group algebra
    name: str = "H"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- elements of H ----------------------------------------------------
    def basis(self, i):
        return _vec(self.dim, [(i, ONE)])

    def mul(self, x, y):
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def mul_basis(self, i, j):
        """h_i h_j as a sparse dict."""
        key = ("mb", i, j)
        r = self._cache.get(key)
        if r is None:
            r = {k: c for k, c in enumerate(self.mult[i][j]) if c}
            self._cache[key] = r
        return r

    def epsilon(self, x):
        return sum((a * e for a, e in zip(x, self.counit) if a), ZERO)

    def S(self, x):
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if a:
                for j in range(self.dim):
                    c = self.antipode[j][i]
                    if c:
                        out[j] += a * c
        return tuple(out)

    def S_basis(self, i):
        return {j: self.antipode[j][i] for j in range(self.dim) if self.antipode[j][i]}

    def Delta(self, x):
        out = {}
        for i, a in enumerate(x):
            if a:
                for jk, c in self.comult[i].items():
                    out[jk] = out.get(jk, ZERO) + a * c
        return {k: v for k, v in out.items() if v}

    @property
    def unit_terms(self):
        return {i: c for i, c in enumerate(self.unit) if c}

    # -- tensor powers ----------------------------------------------------
    def iterated_comult_basis(self, n, i):
        """Delta^{(n-1)}(h_i) as dict over n-tuples; Delta^{(0)} = id."""
        key = ("dn", n, i)
        r = self._cache.get(key)
        if r is not None:
            return r
        if n < 1:
            raise ValueError("n must be >= 1")
        if n == 1:
            r = {(i,): ONE}
        else:
            # (id (x) ... (x) Delta) on the last factor of Delta^{(n-2)}
            r = {}
            for t, c in self.iterated_comult_basis(n - 1, i).items():
                for (j, k), e in self.comult[t[-1]].items():
                    key2 = t[:-1] + (j, k)
                    r[key2] = r.get(key2, ZERO) + c * e
            r = {k: v for k, v in r.items() if v}
        self._cache[key] = r
        return r

    def tensor_mul(self, s, t):
        """Componentwise product of two basis tuples, as dict over tuples."""
        out = {(): ONE}
        for a, b in zip(s, t):
            ab = self.mul_basis(a, b)
            nxt = {}
            for u, c in out.items():
                for k, e in ab.items():
                    nxt[u + (k,)] = nxt.get(u + (k,), ZERO) + c * e
            out = nxt
        return {k: v for k, v in out.items() if v}

    def __repr__(self):
        return "HopfAlgebra(%s, dim=%d)" % (self.name, self.dim)


def iterated_comult(h, n, x):
    """Delta^{(n-1)}(x) for an element x of H (tuple), as dict over n-tuples."""
    out = {}
    for i, a in enumerate(x):
        if a:
            for t, c in h.iterated_comult_basis(n, i).items():
                out[t] = out.get(t, ZERO) + a * c
    return {k: v for k, v in out.items() if v}


def make_hopf(dim, mult, unit, comult, counit, antipode, name="H", group=None):
    mult = tuple(tuple(tuple(Q(c) for c in mult[i][j]) for j in range(dim)) for i in range(dim))
    unit = tuple(Q(c) for c in unit)
    cm = []
    for i in range(dim):
        ci = comult[i]
        if isinstance(ci, dict):
            ci = {tuple(k): Q(v) for k, v in ci.items() if Q(v)}
        else:
            # dense d*d vector, index j*d + k
            ci = {(j, k): Q(ci[j * dim + k]) for j in range(dim) for k in range(dim) if Q(ci[j * dim + k])}
        cm.append(ci)
    counit = tuple(Q(c) for c in counit)
    antipode = tuple(tuple(Q(c) for c in row) for row in antipode)
    return HopfAlgebra(dim, mult, unit, tuple(cm), counit, antipode, group=group, name=name)


def _check_group(table):
    n = len(table)
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup("associativity", (a, b, c))
    ids = [e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))]
    if not ids:
        raise NotAGroup("identity", None)
    e = ids[0]
    inv = []
    for a in range(n):
        b = [b for b in range(n) if table[a][b] == e and table[b][a] == e]
        if not b:
            raise NotAGroup("inverses", (a,))
        inv.append(b[0])
    return e, inv


def make_group_algebra(table, name="kG"):
    """Group algebra k[G] with Delta(g) = g (x) g, epsilon(g) = 1, S(g) = g^{-1}."""
    table = [list(row) for row in table]
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAGroup("table shape", None)
    for row in table:
        for x in row:
            if not (0 <= x < n):
                raise NotAGroup("closure", (x,))
    e, inv = _check_group(table)
    mult = [[_vec(n, [(table[i][j], ONE)]) for j in range(n)] for i in range(n)]
    unit = _vec(n, [(e, ONE)])
    comult = [{(i, i): ONE} for i in range(n)]
    counit = [ONE] * n
    antipode = [[ONE if inv[i] == j else ZERO for i in range(n)] for j in range(n)]
    return make_hopf(n, mult, unit, comult, counit, antipode, name=name,
                     group=tuple(tuple(r) for r in table))


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_table(t1, t2):
    n1, n2 = len(t1), len(t2)
    return [[t1[a // n2][b // n2] * n2 + t2[a % n2][b % n2] for b in range(n1 * n2)]
            for a in range(n1 * n2)]


def trivial_hopf():
    """H = k."""
    return make_group_algebra([[0]], name="k")


@dataclass
class Failure:
    axiom: str
    witness: tuple

    def __str__(self):
        return "%s fails at %r" % (self.axiom, self.witness)


def _plain(c):
    """Integral Fractions as ints (exact, and far cheaper in the inner loops)."""
    return c.numerator if c.denominator == 1 else c


def _acc(out, key, c):
    out[key] = out.get(key, 0) + c


def _nonzero(d):
    return {k: v for k, v in d.items() if v}


def verify_hopf(h):
    """Every failed Hopf / cocommutativity axiom with a witness basis tuple."""
    d = h.dim
    out = []
    # sparse local copies of the structure maps
    sm = [[[(k, _plain(c)) for k, c in enumerate(h.mult[i][j]) if c] for j in range(d)]
          for i in range(d)]
    cm = [[(jk, _plain(c)) for jk, c in h.comult[i].items()] for i in range(d)]
    eps = [_plain(c) for c in h.counit]
    unit = [(i, _plain(c)) for i, c in enumerate(h.unit) if c]
    S = [[(j, _plain(h.antipode[j][i])) for j in range(d) if h.antipode[j][i]] for i in range(d)]

    def lin(first, second):
        """sum_l c_l second(l), with second(l) a sparse list: the result as a dense list."""
        acc = [0] * d
        for l, c in first:
            for r, e in second(l):
                acc[r] += c * e
        return acc

    def basis(i):
        return [1 if k == i else 0 for k in range(d)]

    for i, j, k in product(range(d), repeat=3):
        if lin(sm[i][j], lambda l: sm[l][k]) != lin(sm[j][k], lambda l: sm[i][l]):
            out.append(Failure("associativity", (i, j, k)))
    for i in range(d):
        if lin(unit, lambda u: sm[u][i]) != basis(i) or lin(unit, lambda u: sm[i][u]) != basis(i):
            out.append(Failure("unit", (i,)))
    for i in range(d):
        # coassociativity
        lhs, rhs = {}, {}
        for (a, b), c in cm[i]:
            for (x, y), e in cm[a]:
                _acc(lhs, (x, y, b), c * e)
            for (x, y), e in cm[b]:
                _acc(rhs, (a, x, y), c * e)
        if _nonzero(lhs) != _nonzero(rhs):
            out.append(Failure("coassociativity", (i,)))
        # counit laws
        left, right = [0] * d, [0] * d
        for (a, b), c in cm[i]:
            left[b] += eps[a] * c
            right[a] += eps[b] * c
        if left != basis(i) or right != basis(i):
            out.append(Failure("counit", (i,)))
        # cocommutativity
        if {(b, a): c for (a, b), c in cm[i]} != dict(cm[i]):
            out.append(Failure("cocommutativity", (i,)))
        # antipode
        l2, r2 = [0] * d, [0] * d
        for (a, b), c in cm[i]:
            for t, v in S[a]:
                for k, w in sm[t][b]:
                    l2[k] += c * v * w
            for t, v in S[b]:
                for k, w in sm[a][t]:
                    r2[k] += c * v * w
        target = [0] * d
        for u, c in unit:
            target[u] += eps[i] * c
        if l2 != target or r2 != target:
            out.append(Failure("antipode", (i,)))
    # bialgebra compatibility
    for i, j in product(range(d), repeat=2):
        lhs = {}
        for k, c in sm[i][j]:
            for jk, e in cm[k]:
                _acc(lhs, jk, c * e)
        rhs = {}
        for (a, b), c in cm[i]:
            for (x, y), e in cm[j]:
                for p, f in sm[a][x]:
                    for q, g in sm[b][y]:
                        _acc(rhs, (p, q), c * e * f * g)
        if _nonzero(lhs) != _nonzero(rhs):
            out.append(Failure("bialgebra", (i, j)))
        if sum(c * eps[k] for k, c in sm[i][j]) != eps[i] * eps[j]:
            out.append(Failure("counit multiplicative", (i, j)))
    d1, uu = {}, {}
    for u, c in unit:
        for jk, e in cm[u]:
            _acc(d1, jk, c * e)
        for v, e in unit:
            _acc(uu, (u, v), c * e)
    if _nonzero(d1) != _nonzero(uu) or sum(c * eps[u] for u, c in unit) != 1:
        out.append(Failure("unit coalgebra map", ()))
    return out


# ---------------------------------------------------------------------------
# sub-bialgebras and subcoalgebras

@dataclass(frozen=True, eq=False)
class SubStructure:
    parent: HopfAlgebra
    inclusion: tuple      # basis vectors of the subspace (tuples in H)
    kind: str             # "subbialgebra" | "subcoalgebra"

    @property
    def dim(self):
        return len(self.inclusion)

    def coords(self, x):
        """Coordinates of an element of the subspace in the sub-basis."""
        red = self._solver()
        row = {i: c for i, c in enumerate(x) if c}
        return red(row)

    def _solver(self):
        from .exactla import ColumnSolver
        s = self.__dict__.get("_solver_obj")
        if s is None:
            cols = [{i: c for i, c in enumerate(v) if c} for v in self.inclusion]
            s = ColumnSolver(cols, self.parent.dim)
            object.__setattr__(self, "_solver_obj", s)
        return s.solve


def _in_span(red, vec):
    return not red.reduce(vec)


def make_substructure(h, basis, kind):
    """Validated sub-bialgebra or subcoalgebra spanned by `basis` (vectors in H)."""
    if kind not in ("subbialgebra", "subcoalgebra"):
        raise ValueError("unknown substructure kind %r" % kind)
    basis = tuple(tuple(Q(c) for c in v) for v in basis)
    d = h.dim
    red = RowReducer(d)
    for v in basis:
        if not red.add({i: c for i, c in enumerate(v) if c}):
            raise KindMismatch("substructure basis is linearly dependent")
    # C (x) C spanned by pairs; test Delta(b) in C (x) C via d*d coordinates
    red2 = RowReducer(d * d)
    for u in basis:
        for v in basis:
            red2.add({i * d + j: a * b for i, a in enumerate(u) if a for j, b in enumerate(v) if b})
    for n, v in enumerate(basis):
        dv = h.Delta(v)
        if not _in_span(red2, {i * d + j: c for (i, j), c in dv.items()}):
            raise KindMismatch("Delta(b_%d) is not in C(x)C: not a subcoalgebra" % n)
    if kind == "subbialgebra":
        if not _in_span(red, {i: c for i, c in enumerate(h.unit) if c}):
            raise KindMismatch("unit not in the subspace")
        for u in basis:
            for v in basis:
                w = h.mul(u, v)
                if not _in_span(red, {i: c for i, c in enumerate(w) if c}):
                    raise KindMismatch("subspace not closed under multiplication")
    return SubStructure(h, basis, kind)


# ---------------------------------------------------------------------------
# finite semigroups

@dataclass(frozen=True)
class FiniteSemigroup:
    size: int
    table: tuple
    unit: int = None
    commutative: bool = False
    names: tuple = None

    def mul(self, a, b):
        return self.table[a][b]

    def prod(self, *xs):
        r = xs[0]
        for x in xs[1:]:
            r = self.table[r][x]
        return r

    @property
    def trivial(self):
        return self.size == 1

    def label(self, a):
        return self.names[a] if self.names else str(a)


def make_semigroup(table, unit=None, commutative=None, names=None):
    """Validated finite semigroup; commutativity is detected when not given."""
    table = tuple(tuple(int(x) for x in row) for row in table)
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise SemigroupError("semigroup table must be square and nonempty", None)
    for row in table:
        for x in row:
            if not 0 <= x < n:
                raise SemigroupError("table entry out of range", (x,))
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAssociative((a, b, c))
    if unit is not None:
        for a in range(n):
            if table[unit][a] != a or table[a][unit] != a:
                raise UnitNotNeutral((unit, a))
    sym = next(((a, b) for a in range(n) for b in range(n) if table[a][b] != table[b][a]), None)
    if commutative is None:
        commutative = sym is None
    elif commutative and sym is not None:
        raise NotCommutative(sym)
    return FiniteSemigroup(n, table, unit, commutative, tuple(names) if names else None)


def trivial_semigroup():
    return make_semigroup([[0]], unit=0, names=["1"])


def omega2():
    """{1, w} with w*w = w, 1 neutral."""
    return make_semigroup([[0, 1], [1, 1]], unit=0, names=["1", "w"])
