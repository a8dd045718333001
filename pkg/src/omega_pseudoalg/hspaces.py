"""
Left H-modules and the quotient spaces H^{(x)n} (x)_H M.

An element of H^{(x)n} (x)_H M is handled as a sparse dict ("terms") mapping
ambient keys (t, m) -- t an n-tuple of H-basis indices, m an M-basis index --
to Fractions.  A term dict is canonical when it only uses the complement keys
chosen by the quotient space; `QuotientTensorSpace.reduce` produces it.

The relation subspace is spanned by  F.Delta^{(n-1)}(h) (x) m - F (x) h.m .
"""

from dataclasses import dataclass, field
from itertools import product
import threading

from .exactla import ZERO, ONE, Q, RowReducer, fstr


class ModuleAxiomFailure(ValueError):
    def __init__(self, msg, witness):
        super().__init__("%s at %r" % (msg, witness))
        self.witness = witness


class DimensionMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def _clean(d):
    return {k: v for k, v in d.items() if v}


def add_into(acc, terms, c=ONE):
    for k, v in terms.items():
        w = acc.get(k, ZERO) + c * v
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)
    return acc


def lincomb(pairs):
    """sum c * terms over (c, terms) pairs."""
    acc = {}
    for c, t in pairs:
        if c:
            add_into(acc, t, c)
    return acc


# ---------------------------------------------------------------------------
# modules

@dataclass(frozen=True, eq=False)
class HModule:
    hopf: object
    dim: int
    action: tuple          # action[i][row][col]: h_i . e_col = sum_row action[i][row][col] e_row
    name: str = "M"
    _cache: dict = field(default_factory=dict, repr=False)

    def act_basis(self, i, j):
        key = (i, j)
        r = self._cache.get(key)
        if r is None:
            a = self.action[i]
            r = {row: a[row][j] for row in range(self.dim) if a[row][j]}
            self._cache[key] = r
        return r

    def act(self, x, v):
        """x in H (tuple), v in M (sparse dict)."""
        out = {}
        for i, a in enumerate(x):
            if a:
                for j, c in v.items():
                    add_into(out, self.act_basis(i, j), a * c)
        return out

    def act_h(self, i, v):
        out = {}
        for j, c in v.items():
            add_into(out, self.act_basis(i, j), c)
        return out

    def __repr__(self):
        return "HModule(%s, dim=%d)" % (self.name, self.dim)


def verify_module(h, dim, action):
    """Failures of the module axioms (unit acts as identity, (gh).m = g.(h.m))."""
    out = []
    mod = HModule(h, dim, action)
    for j in range(dim):
        if mod.act(h.unit, {j: ONE}) != {j: ONE}:
            out.append(("unit acts as identity", (j,)))
    for a, b in product(range(h.dim), repeat=2):
        ab = h.mul(h.basis(a), h.basis(b))
        for j in range(dim):
            lhs = mod.act(ab, {j: ONE})
            rhs = mod.act_h(a, mod.act_h(b, {j: ONE}))
            if _clean(lhs) != _clean(rhs):
                out.append(("action is multiplicative", (a, b, j)))
    return out


def make_module(h, dim, action, name="M"):
    if len(action) != h.dim:
        raise DimensionMismatch("need one action matrix per H-basis element")
    act = []
    for mat in action:
        if len(mat) != dim or any(len(r) != dim for r in mat):
            raise DimensionMismatch("action matrix must be %dx%d" % (dim, dim))
        act.append(tuple(tuple(Q(c) for c in r) for r in mat))
    act = tuple(act)
    bad = verify_module(h, dim, act)
    if bad:
        raise ModuleAxiomFailure(*bad[0])
    return HModule(h, dim, act, name=name)


def free_module(h, rank, name=None):
    """H (x) k^rank with H acting on the left factor; basis index f*rank + j."""
    d = h.dim
    dim = d * rank
    action = []
    for i in range(d):
        mat = [[ZERO] * dim for _ in range(dim)]
        for f in range(d):
            for k, c in h.mul_basis(i, f).items():
                for j in range(rank):
                    mat[k * rank + j][f * rank + j] += c
        action.append(mat)
    return make_module(h, dim, action, name=name or "H(x)k^%d" % rank)


def regular_module(h):
    return free_module(h, 1, name="H")


def trivial_module(h, dim=1):
    """k^dim with h acting by epsilon(h)."""
    action = [[[h.counit[i] if r == c else ZERO for c in range(dim)] for r in range(dim)]
              for i in range(h.dim)]
    return make_module(h, dim, action, name="k^%d" % dim)


def module_map_is_linear(src, dst, mat):
    """Witness (h, j) where mat (dst.dim x src.dim rows) fails H-linearity, else None."""
    def apply(v):
        out = {}
        for j, c in v.items():
            for r in range(dst.dim):
                if mat[r][j]:
                    out[r] = out.get(r, ZERO) + c * mat[r][j]
        return _clean(out)
    for i in range(src.hopf.dim):
        for j in range(src.dim):
            lhs = apply(src.act_basis(i, j))
            rhs = _clean(dst.act_h(i, apply({j: ONE})))
            if lhs != rhs:
                return (i, j)
    return None


# ---------------------------------------------------------------------------
# quotient spaces

class QuotientTensorSpace:
    """H^{(x)n} (x)_H M with a fixed complement basis and a cached reducer."""

    def __init__(self, h, module, n):
        if n < 1:
            raise DimensionMismatch("arity must be >= 1")
        if module.hopf is not h:
            raise DimensionMismatch("module lives over a different Hopf algebra")
        self.hopf = h
        self.module = module
        self.n = n
        d, md = h.dim, module.dim
        self.ambient_dim = d ** n * md
        self._tuples = list(product(range(d), repeat=n))
        red = RowReducer(self.ambient_dim)
        for F in self._tuples:
            for i in range(d):
                dh = h.iterated_comult_basis(n, i)
                for m in range(md):
                    row = {}
                    for t, c in dh.items():
                        for u, e in h.tensor_mul(F, t).items():
                            k = self.index((u, m))
                            row[k] = row.get(k, ZERO) + c * e
                    fi = self.index((F, 0))
                    for r, c in module.act_basis(i, m).items():
                        k = fi + r
                        row[k] = row.get(k, ZERO) - c
                    red.add(_clean(row))
        self.relation_rank = red.rank
        self._pivots = red.pivots
        self.basis_keys = tuple(self.key(j) for j in red.free_columns())
        self.position = {k: p for p, k in enumerate(self.basis_keys)}
        self.dim = len(self.basis_keys)
        self._red = {}
        self._lock = threading.Lock()

    # flattened ambient index: (t read base d) * dim M + m
    def index(self, key):
        t, m = key
        d = self.hopf.dim
        v = 0
        for a in t:
            v = v * d + a
        return v * self.module.dim + m

    def key(self, idx):
        md, d = self.module.dim, self.hopf.dim
        m = idx % md
        v = idx // md
        t = []
        for _ in range(self.n):
            t.append(v % d)
            v //= d
        return (tuple(reversed(t)), m)

    def reduce_key(self, key):
        r = self._red.get(key)
        if r is None:
            if key in self.position:
                r = {key: ONE}
            else:
                row = self._pivots[self.index(key)]
                r = {self.key(j): -c for j, c in row.items() if j != self.index(key)}
            self._red[key] = r
        return r

    def reduce(self, terms):
        out = {}
        for k, c in terms.items():
            if c:
                add_into(out, self.reduce_key(k), c)
        return out

    def reduce_vector(self, vec):
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch("ambient vector has length %d, expected %d"
                                    % (len(vec), self.ambient_dim))
        return QElement(self, self.coords(self.reduce(
            {self.key(j): Q(c) for j, c in enumerate(vec) if Q(c)})))

    def coords(self, terms):
        """Coordinate vector of canonical terms."""
        v = [ZERO] * self.dim
        for k, c in terms.items():
            v[self.position[k]] += c
        return tuple(v)

    def sparse_coords(self, terms):
        return {self.position[k]: c for k, c in terms.items() if c}

    def from_coords(self, coords):
        return {self.basis_keys[p]: Q(c) for p, c in enumerate(coords) if Q(c)}

    def element(self, terms):
        return QElement(self, self.coords(self.reduce(terms)))

    def zero(self):
        return QElement(self, (ZERO,) * self.dim)

    def __repr__(self):
        return "Q(%s, %s, n=%d, dim=%d)" % (self.hopf.name, self.module.name, self.n, self.dim)


_SPACES = {}
_SPACES_LOCK = threading.Lock()


def build_quotient(h, module, n):
    """Shared (cached) quotient space H^{(x)n} (x)_H M."""
    key = (id(h), id(module), n)
    with _SPACES_LOCK:
        s = _SPACES.get(key)
        if s is not None and s.hopf is h and s.module is module:
            return s
    s = QuotientTensorSpace(h, module, n)
    with _SPACES_LOCK:
        _SPACES[key] = (s)
    return s


@dataclass(frozen=True)
class QElement:
    space: QuotientTensorSpace
    coords: tuple

    @property
    def terms(self):
        return self.space.from_coords(self.coords)

    def _same(self, other):
        if other.space is not self.space:
            raise DimensionMismatch("elements of different quotient spaces")

    def __add__(self, other):
        self._same(other)
        return QElement(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return QElement(self.space, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return QElement(self.space, tuple(-a for a in self.coords))

    def scale(self, c):
        c = Q(c)
        return QElement(self.space, tuple(c * a for a in self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        return (isinstance(other, QElement) and other.space is self.space
                and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "QElement(%s)" % format_terms(self.terms)


def reduce(space, vec):
    return space.reduce_vector(vec)


# ---------------------------------------------------------------------------
# operations on representatives

def _tensor_terms(F):
    """Accept a basis tuple or a dict {tuple: coeff} for an element of H^{(x)r}."""
    if isinstance(F, dict):
        return F
    return {tuple(F): ONE}


def act_terms(space, F, terms):
    """(F (x)_H 1) . terms, with F in H^{(x)n}."""
    h = space.hopf
    out = {}
    for f, a in _tensor_terms(F).items():
        if len(f) != space.n:
            raise DimensionMismatch("tensor has %d factors, space has arity %d" % (len(f), space.n))
        for (t, m), c in terms.items():
            for u, e in h.tensor_mul(f, t).items():
                k = (u, m)
                out[k] = out.get(k, ZERO) + a * c * e
    return space.reduce(out)


def act(space, F, x):
    return QElement(space, space.coords(act_terms(space, F, x.terms)))


def parse_perm(cycles, n):
    """Cycle notation such as "(123)" or "(12)(3)" (1-based) -> image tuple (0-based)."""
    img = list(range(n))
    s = cycles.replace(" ", "")
    cycles = [c for c in s.replace(")", "").split("(") if c]
    for cyc in cycles:
        pts = [int(ch) - 1 for ch in cyc]
        if len(set(pts)) != len(pts) or not all(0 <= a < n for a in pts):
            raise ValueError("bad permutation %r" % cycles)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    if sorted(img) != list(range(n)):
        raise ValueError("bad permutation %r" % cycles)
    return tuple(img)


def compose_perm(p, q):
    """p o q (apply q first)."""
    return tuple(p[q[i]] for i in range(len(q)))


def permute_terms(space, perm, terms):
    """Factor in position i moves to position perm[i]; result reduced."""
    if isinstance(perm, str):
        perm = parse_perm(perm, space.n)
    if len(perm) != space.n:
        raise DimensionMismatch("permutation degree differs from arity")
    out = {}
    for (t, m), c in terms.items():
        u = [None] * len(t)
        for i, a in enumerate(t):
            u[perm[i]] = a
        k = (tuple(u), m)
        out[k] = out.get(k, ZERO) + c
    return space.reduce(out)


def permute(space, perm, x):
    return QElement(space, space.coords(permute_terms(space, perm, x.terms)))


_INSERT = {}


def insert_terms(space, terms, slot, F):
    """
    Replace the factor h at position `slot` by F.Delta^{(r-1)}(h), where F is an
    element of H^{(x)r}; the result lives in H^{(x)(n+r-1)} (x)_H M and is reduced.

    All expansion conventions (left/right fusion of a pseudoproduct, insertion
    of an inner product into a cochain slot) are instances of this map.
    """
    if not 0 <= slot < space.n:
        raise IndexOutOfRange("slot %d outside 0..%d" % (slot, space.n - 1))
    F = _tensor_terms(F)
    r = len(next(iter(F))) if F else 1
    out_space = build_quotient(space.hopf, space.module, space.n + r - 1)
    h = space.hopf
    acc = {}
    for f, a in F.items():
        for k, c in terms.items():
            ck = (id(space), slot, f, k)
            piece = _INSERT.get(ck)
            if piece is None:
                t, m = k
                raw = {}
                for mid, e in h.iterated_comult_basis(r, t[slot]).items():
                    for u, g in h.tensor_mul(f, mid).items():
                        key = (t[:slot] + u + t[slot + 1:], m)
                        raw[key] = raw.get(key, ZERO) + e * g
                piece = out_space.reduce(raw)
                _INSERT[ck] = piece
            add_into(acc, piece, a * c)
    return out_space, acc


def counit_at(space, terms, slot):
    """Apply epsilon to the factor at `slot` (id (x) .. eps .. (x) id), landing in arity n-1."""
    if space.n < 2:
        raise DimensionMismatch("cannot contract the only tensor factor")
    h = space.hopf
    out_space = build_quotient(h, space.module, space.n - 1)
    raw = {}
    for (t, m), c in terms.items():
        e = h.counit[t[slot]]
        if e:
            key = (t[:slot] + t[slot + 1:], m)
            raw[key] = raw.get(key, ZERO) + c * e
    return out_space, out_space.reduce(raw)


def collapse(space, terms):
    """Arity-1 quotient H (x)_H M -> M, h (x) m |-> h.m."""
    if space.n != 1:
        raise DimensionMismatch("collapse needs arity 1")
    out = {}
    for ((i,), m), c in terms.items():
        add_into(out, space.module.act_basis(i, m), c)
    return out


def embed(space, vec):
    """M -> H (x)_H M, m |-> 1 (x) m (reduced); `space` has arity 1."""
    if space.n != 1:
        raise DimensionMismatch("embed needs arity 1")
    raw = {}
    for i, a in space.hopf.unit_terms.items():
        for m, c in vec.items():
            raw[((i,), m)] = raw.get(((i,), m), ZERO) + a * c
    return space.reduce(raw)


def fuse(space_in, x, side, payload):
    """
    Expansion of a pseudoproduct value x in H^{(x)2} (x)_H A along an outer factor.

    side="left":  (payload (x)_H a) * b   -- payload expands the first factor
    side="right": a * (payload (x)_H b)   -- payload expands the second factor
    Arbitrary arity: `payload` may be any element of H^{(x)r}.
    """
    slot = {"left": 0, "right": space_in.n - 1}.get(side)
    if slot is None:
        raise ValueError("side must be 'left' or 'right'")
    terms = x.terms if isinstance(x, QElement) else x
    out_space, t = insert_terms(space_in, terms, slot, payload)
    return QElement(out_space, out_space.coords(t))


def slot_compose(space_in, f_value, i, g):
    """f(a_1, .., g (x)_H a_i, .., a_n) from the value f(a_1, .., a_n); i is 1-based."""
    if not 1 <= i <= space_in.n:
        raise IndexOutOfRange("slot %d outside 1..%d" % (i, space_in.n))
    terms = f_value.terms if isinstance(f_value, QElement) else f_value
    out_space, t = insert_terms(space_in, terms, i - 1, g)
    return QElement(out_space, out_space.coords(t))


def format_terms(terms, hnames=None, mnames=None):
    if not terms:
        return "0"
    parts = []
    for (t, m), c in sorted(terms.items()):
        ht = "(x)".join(hnames[a] if hnames else "h%d" % a for a in t)
        mm = mnames[m] if mnames else "e%d" % m
        parts.append("%s*[%s|%s]" % (fstr(c), ht, mm))
    return " + ".join(parts)
