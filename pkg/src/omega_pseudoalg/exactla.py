"""
Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms with a positive
denominator).  Elimination works on sparse rows (dicts column -> value) so the
mostly-zero relation and constraint matrices used downstream stay cheap.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x):
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    raise TypeError("cannot interpret %r as a rational" % (x,))


def fstr(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class Matrix:
    """Dense rows x cols matrix of Fractions (row-major)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        data = [[Q(v) for v in row] for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns, rows):
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    @property
    def entries(self):
        return [v for row in self.data for v in row]

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j):
        return [row[j] for row in self.data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return Matrix([list(col) for col in zip(*self.data)] if self.rows else [], self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            assert self.cols == other.rows
            ot = other.transpose().data
            return Matrix([[sum((a * b for a, b in zip(row, col) if a and b), ZERO)
                            for col in ot] for row in self.data], other.cols)
        return matvec(self.data, other)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return "Matrix(%s)" % [[fstr(v) for v in row] for row in self.data]


def _rows_of(m):
    if isinstance(m, Matrix):
        return m.data, m.cols
    m = list(m)
    return m, (len(m[0]) if m else 0)


def matvec(rows, v):
    return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in rows]


def sparse_rows(rows):
    return [{j: Q(v) for j, v in enumerate(row) if v} for row in rows]


class RowReducer:
    """
    Incremental reduced row-echelon form of sparse rows.

    Pivot rows are kept fully reduced against each other, so the result is the
    unique RREF of the rows inserted so far (independent of insertion order).
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}        # pivot column -> row dict (1 at the pivot)

    def reduce(self, row):
        """Reduce a sparse row against the current pivots (copy)."""
        row = dict(row)
        for p in [c for c in row if c in self.pivots]:
            f = row.get(p)
            if not f:
                continue
            for k, v in self.pivots[p].items():
                w = row.get(k, ZERO) - f * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
        return row

    def add(self, row):
        """Insert a row; return True if it enlarged the row space."""
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        f = row[p]
        if f != ONE:
            row = {k: v / f for k, v in row.items()}
        for q, prow in self.pivots.items():
            g = prow.get(p)
            if g:
                for k, v in row.items():
                    w = prow.get(k, ZERO) - g * v
                    if w:
                        prow[k] = w
                    else:
                        prow.pop(k, None)
        self.pivots[p] = row
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def pivot_columns(self):
        return sorted(self.pivots)

    def free_columns(self):
        return [j for j in range(self.ncols) if j not in self.pivots]

    def kernel_basis(self):
        """Basis of the solution space of row . x = 0, one vector per free column."""
        free = self.free_columns()
        basis = []
        for f in free:
            v = {f: ONE}
            for p, prow in self.pivots.items():
                c = prow.get(f)
                if c:
                    v[p] = -c
            basis.append(v)
        return basis, free


def rref(m):
    """Reduced row-echelon form and pivot columns (leftmost pivoting)."""
    rows, ncols = _rows_of(m)
    red = RowReducer(ncols)
    for row in sparse_rows(rows):
        red.add(row)
    piv = red.pivot_columns()
    out = [[red.pivots[p].get(j, ZERO) for j in range(ncols)] for p in piv]
    out += [[ZERO] * ncols for _ in range(len(rows) - len(piv))]
    return Matrix(out, ncols), piv


def rank(m):
    rows, ncols = _rows_of(m)
    red = RowReducer(ncols)
    for row in sparse_rows(rows):
        red.add(row)
    return red.rank


def sparse_rank(rows, ncols):
    red = RowReducer(ncols)
    for row in rows:
        red.add(row)
    return red.rank


def nullspace(m):
    """Matrix whose columns form a basis of ker m."""
    rows, ncols = _rows_of(m)
    red = RowReducer(ncols)
    for row in sparse_rows(rows):
        red.add(row)
    basis, _ = red.kernel_basis()
    cols = [[v.get(i, ZERO) for i in range(ncols)] for v in basis]
    if not cols:
        return Matrix([[] for _ in range(ncols)], 0)
    return Matrix.from_columns(cols, ncols)


def solve(m, b):
    """Some x with m x = b (free variables zero), or None if b is not in the column space."""
    rows, ncols = _rows_of(m)
    b = [Q(v) for v in b]
    if len(b) != len(rows):
        raise ValueError("right-hand side has wrong length")
    red = RowReducer(ncols + 1)
    for row, bi in zip(sparse_rows(rows), b):
        if bi:
            row[ncols] = bi
        red.add(row)
    if ncols in red.pivots:
        return None
    x = [ZERO] * ncols
    for p, prow in red.pivots.items():
        x[p] = prow.get(ncols, ZERO)
    return x


class ColumnSolver:
    """
    Solve A x = b repeatedly for a fixed A with independent columns.

    Elimination is done once on the transposed system; each `solve` then costs
    one sparse pass.  Returns None when b is not in the column space.
    """

    def __init__(self, columns, nrows):
        # columns: list of sparse dicts row -> value
        self.ncols = len(columns)
        self.nrows = nrows
        tag = nrows
        red = RowReducer(nrows + self.ncols)
        for j, col in enumerate(columns):
            row = dict(col)
            row[tag + j] = ONE
            red.add(row)
        self.red = red
        for p in red.pivots:
            if p >= nrows:
                raise ValueError("columns are linearly dependent")

    def solve(self, b):
        # b is a sparse dict; reducing (b | 0) leaves (0 | -x) when b = A x
        work = dict(b)
        for p in sorted(self.red.pivots):
            f = work.get(p)
            if not f:
                continue
            for k, v in self.red.pivots[p].items():
                w = work.get(k, ZERO) - f * v
                if w:
                    work[k] = w
                else:
                    work.pop(k, None)
        if any(k < self.nrows for k in work):
            return None
        # work now holds -sum x_j e_{tag+j}
        out = [ZERO] * self.ncols
        for k, v in work.items():
            out[k - self.nrows] = -v
        return out
