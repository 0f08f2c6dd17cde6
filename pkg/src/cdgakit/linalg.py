"""Exact rational linear algebra: matrices, kernels, images, quotients.

Everything is computed over Fraction (arbitrary precision rationals); no
floating point. Subspaces are kept in reduced column echelon form so that
equality of subspaces is equality of representations.
"""

from fractions import Fraction


class NotSubspace(Exception):
    pass


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows=None, cols=None):
        entries = tuple(tuple(_frac(x) for x in row) for row in entries)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry grid does not match rows x cols")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def zero(rows, cols):
        return Matrix([[Fraction(0)] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(n):
        return Matrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(columns, rows=None):
        columns = list(columns)
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return Matrix([[columns[j][i] for j in range(len(columns))] for i in range(rows)],
                      rows, len(columns))

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "Matrix(%r)" % (list(list(map(str, r)) for r in self.entries),)

    def __add__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = _frac(c)
        return Matrix([[c * x for x in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            assert self.cols == other.rows, (self.cols, other.rows)
            ot = other.transpose().entries
            return Matrix([[sum(a * b for a, b in zip(row, col)) for col in ot]
                           for row in self.entries], self.rows, other.cols)
        return self.scale(other)

    def apply(self, vec):
        """Matrix times column vector (tuple)."""
        assert len(vec) == self.cols
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def transpose(self):
        return Matrix([[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.cols, self.rows)

    def hstack(self, other):
        assert self.rows == other.rows
        return Matrix([ra + rb for ra, rb in zip(self.entries, other.entries)],
                      self.rows, self.cols + other.cols)

    def vstack(self, other):
        assert self.cols == other.cols
        return Matrix(self.entries + other.entries, self.rows + other.rows, self.cols)

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def kronecker(self, other):
        """Kronecker product; index (a, b) -> a * other_dim + b."""
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append([x * y for x in ra for y in rb])
        return Matrix(out, self.rows * other.rows, self.cols * other.cols)


def rref(m):
    """Reduced row echelon form. Returns (rref matrix, pivot columns, rank)."""
    a = [list(row) for row in m.entries]
    pivots = []
    r = 0
    for c in range(m.cols):
        pr = None
        for i in range(r, m.rows):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(a, m.rows, m.cols), tuple(pivots), len(pivots)


def rank(m):
    return rref(m)[2]


class Subspace:
    """Subspace of K^n, basis stored as reduced column echelon columns.

    The representation is canonical: two equal subspaces have identical
    basis matrices.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, columns):
        cols = [tuple(_frac(x) for x in c) for c in columns]
        for c in cols:
            if len(c) != ambient_dim:
                raise ValueError("column length does not match ambient dimension")
        if cols:
            r, pivots, rk = rref(Matrix(cols))
            cols = [r.entries[i][:ambient_dim] for i in range(rk)]
            cols = [tuple(c) for c in cols]
        self.ambient_dim = ambient_dim
        self.basis = tuple(cols)

    @staticmethod
    def zero(n):
        return Subspace(n, [])

    @staticmethod
    def full(n):
        return Subspace(n, Matrix.identity(n).columns())

    @property
    def dim(self):
        return len(self.basis)

    def basis_matrix(self):
        return Matrix.from_columns(list(self.basis), self.ambient_dim)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Subspace(dim %d in K^%d)" % (self.dim, self.ambient_dim)

    def contains(self, vec):
        return solve(self.basis_matrix(), tuple(vec)) is not None

    def contains_subspace(self, other):
        assert self.ambient_dim == other.ambient_dim
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, vec):
        """Coordinates of vec in the canonical basis, or None."""
        return solve(self.basis_matrix(), tuple(vec))

    def sum(self, other):
        assert self.ambient_dim == other.ambient_dim
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other):
        """Zassenhaus-free intersection: solve [A | -B] kernel."""
        assert self.ambient_dim == other.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        a = self.basis_matrix()
        b = other.basis_matrix()
        k = kernel(a.hstack(b))
        cols = []
        for v in k.basis:
            coeff = v[: a.cols]
            cols.append(a.apply(coeff))
        return Subspace(self.ambient_dim, cols)


def kernel(m):
    """Kernel of m as a Subspace of K^cols."""
    r, pivots, rk = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r.entries[i][f]
        cols.append(tuple(v))
    return Subspace(m.cols, cols)


def image(m):
    """Column span of m as a Subspace of K^rows."""
    return Subspace(m.rows, m.columns())


def solve(m, b):
    """One solution x of m x = b, or None when b is not in the image."""
    aug = m.hstack(Matrix.from_columns([tuple(b)], m.rows))
    r, pivots, rk = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = r.entries[i][m.cols]
    return tuple(x)


def solve_matrix(m, b):
    """Solve m X = b column by column; None if any column fails."""
    cols = []
    for j in range(b.cols):
        x = solve(m, b.column(j))
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_columns(cols, m.cols)


def quotient_basis(v, w):
    """Representatives of V/W and the projection matrix.

    Returns (reps, proj) where reps is a list of dim(V) - dim(W) ambient
    vectors and proj is a (dim V - dim W) x ambient matrix with
    proj * rep_i = e_i and proj * w = 0 for w in W.
    Raises NotSubspace when W is not contained in V.
    """
    if not v.contains_subspace(w):
        raise NotSubspace("W is not contained in V")
    n = v.ambient_dim
    cols = list(w.basis)
    reps = []
    for cand in v.basis:
        if rank(Matrix.from_columns(cols + [cand], n)) > len(cols):
            cols.append(cand)
            reps.append(cand)
    # complete to a basis of the ambient space
    full_cols = list(cols)
    for j in range(n):
        e = tuple(Fraction(int(i == j)) for i in range(n))
        if rank(Matrix.from_columns(full_cols + [e], n)) > len(full_cols):
            full_cols.append(e)
    b = Matrix.from_columns(full_cols, n)
    binv = inverse(b)
    start = w.dim
    proj = Matrix(binv.entries[start:start + len(reps)], len(reps), n)
    return reps, proj


def inverse(m):
    assert m.rows == m.cols
    aug = m.hstack(Matrix.identity(m.rows))
    r, pivots, rk = rref(aug)
    if rk < m.rows:
        raise ValueError("matrix is singular")
    return Matrix([row[m.rows:] for row in r.entries], m.rows, m.rows)


def preimage(m, s):
    """Subspace {x : m x in S} for a Subspace S of the target."""
    if s.dim == s.ambient_dim:
        return Subspace.full(m.cols)
    _, proj = quotient_basis(Subspace.full(s.ambient_dim), s)
    return kernel(proj * m)


def restrict(m, source, target):
    """Matrix of m between subspace bases; None if image leaves target."""
    cols = []
    for v in source.basis:
        c = target.coordinates(m.apply(v))
        if c is None:
            return None
        cols.append(c)
    return Matrix.from_columns(cols, target.dim)


def char_poly(m):
    """Characteristic polynomial det(xI - m), coefficients low to high."""
    assert m.rows == m.cols
    n = m.rows
    # Faddeev-LeVerrier: exact over the rationals
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m * mk
        tr = sum(mk.entries[i][i] for i in range(n))
        c = -tr / k
        coeffs[n - k] = c
        mk = mk + Matrix.identity(n).scale(c)
    return coeffs


def scalar_to_str(x):
    x = _frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def scalar_from_str(s):
    return Fraction(s)
