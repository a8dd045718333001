"""
Independent brute-force classical oracles (H = k, Omega = {1}).

Nothing here imports the package: algebras are plain structure-constant
arrays mult[i][j] = coefficient list of e_i e_j, and ranks come from sympy.
"""

from fractions import Fraction
from itertools import product

import sympy


def _vec(n):
    return [Fraction(0)] * n


def mul(mult, u, v):
    n = len(mult)
    out = _vec(n)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                if y:
                    for k, c in enumerate(mult[i][j]):
                        out[k] += x * y * Fraction(c)
    return out


def basis(n, i):
    v = _vec(n)
    v[i] = Fraction(1)
    return v


def is_associative(mult):
    n = len(mult)
    B = [basis(n, i) for i in range(n)]
    for x, y, z in product(range(n), repeat=3):
        if mul(mult, mul(mult, B[x], B[y]), B[z]) != mul(mult, B[x], mul(mult, B[y], B[z])):
            return False
    return True


def is_omega_associative(tables, omul, k):
    """tables[(a, b)] = mult; checks (x a.b y) ab.g z = x a.bg (y b.g z)."""
    n = len(tables[(0, 0)])
    B = [basis(n, i) for i in range(n)]
    for a, b, g in product(range(k), repeat=3):
        for x, y, z in product(range(n), repeat=3):
            l = mul(tables[(omul(a, b), g)], mul(tables[(a, b)], B[x], B[y]), B[z])
            r = mul(tables[(a, omul(b, g))], B[x], mul(tables[(b, g)], B[y], B[z]))
            if l != r:
                return False
    return True


def hochschild_value(mult, n, f, args):
    """(d f)(a_1..a_{n+1}) for f: tuple of n basis indices -> vector, on basis arguments."""
    dim = len(mult)
    B = [basis(dim, i) for i in range(dim)]

    def fv(vecs):
        # multilinear extension of f
        out = _vec(dim)
        for idx in product(range(dim), repeat=len(vecs)):
            c = Fraction(1)
            for v, i in zip(vecs, idx):
                c *= v[i]
                if not c:
                    break
            if c:
                for k, y in enumerate(f(idx)):
                    out[k] += c * y
        return out
    vecs = [B[i] for i in args]
    out = mul(mult, vecs[0], fv(vecs[1:]))
    for i in range(1, n + 1):
        merged = vecs[:i - 1] + [mul(mult, vecs[i - 1], vecs[i])] + vecs[i + 1:]
        w = fv(merged)
        s = (-1) ** i
        out = [o + s * x for o, x in zip(out, w)]
    last = mul(mult, fv(vecs[:n]), vecs[n])
    s = (-1) ** (n + 1)
    return [o + s * x for o, x in zip(out, last)]


def hochschild_matrix(mult, n):
    """Matrix of d^n: C^n = Hom(A^{(x)n}, A) -> C^{n+1}, standard coordinates."""
    dim = len(mult)
    src = list(product(range(dim), repeat=n))
    dst = list(product(range(dim), repeat=n + 1))
    cols = []
    for t in src:
        for k in range(dim):
            f = (lambda t0, k0: lambda idx: basis(dim, k0) if idx == t0 else _vec(dim))(t, k)
            col = []
            for args in dst:
                col.extend(hochschild_value(mult, n, f, args))
            cols.append(col)
    return sympy.Matrix(len(dst) * dim, len(src) * dim,
                        lambda r, c: sympy.Rational(cols[c][r].numerator, cols[c][r].denominator))


def hochschild_dims(mult, top):
    """dim HH^n(A, A) for n = 0..top via ranks of the standard complex."""
    dim = len(mult)
    ranks = {n: hochschild_matrix(mult, n).rank() for n in range(top + 1)}
    out = {}
    for n in range(top + 1):
        cn = dim ** (n + 1)
        z = cn - ranks[n]
        b = ranks[n - 1] if n >= 1 else 0
        out[n] = z - b
    return out


def dd_is_zero(mult, n):
    """d^{n} d^{n-1} = 0 as a matrix product."""
    P = hochschild_matrix(mult, n) * hochschild_matrix(mult, n - 1)
    return P.is_zero_matrix


def gerstenhaber(mult_x, mult_y, args):
    """X(x, Y(y, z)) - X(Y(x, y), z) on basis arguments."""
    n = len(mult_x)
    x, y, z = (basis(n, i) for i in args)
    l = mul(mult_x, x, mul(mult_y, y, z))
    r = mul(mult_x, mul(mult_y, x, y), z)
    return [a - b for a, b in zip(l, r)]


def truncated_quotient_product(u, v):
    """(a + b x)(c + d x) in k[t][x]/(x^2 - t), as {t-power: (coeff 1, coeff x)}."""
    a, b = u
    c, d = v
    return {0: (a * c, a * d + b * c), 1: (b * d, 0)}


def is_o_operator_family(mult, left, right, maps, omul, k):
    """T_a(u) T_b(v) = T_ab(T_a(u).v + u.T_b(v)) with actions left[i][j] = e_i.m_j, right[j][i] = m_j.e_i."""
    nM = len(left[0])

    def act(tab, u, v):
        out = _vec(nM)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                if x and y:
                    for r, c in enumerate(tab[i][j]):
                        out[r] += x * y * Fraction(c)
        return out

    def apply(m, v):
        return [sum((Fraction(m[r][c]) * v[c] for c in range(len(v))), Fraction(0))
                for r in range(len(m))]
    for a, b in product(range(k), repeat=2):
        for u, v in product(range(nM), repeat=2):
            U, V = basis(nM, u), basis(nM, v)
            Tu, Tv = apply(maps[a], U), apply(maps[b], V)
            lhs = mul(mult, Tu, Tv)
            inner = [x + y for x, y in zip(act(left, Tu, V), act(right, U, Tv))]
            if lhs != apply(maps[omul(a, b)], inner):
                return False
    return True
