"""Bounded cochain complexes, cohomology, chain maps, total complexes."""

from fractions import Fraction

from .linalg import (Matrix, Subspace, kernel, image, quotient_basis, rank,
                     solve_matrix)


class NotDoubleComplex(Exception):
    pass


class Complex:
    """Cochain complex of finite dimensional spaces.

    dims[i] is the dimension in degree lower_bound + i, and d[i] maps
    degree lower_bound + i to the next degree. d_{i+1} d_i = 0 is checked
    on construction.
    """

    def __init__(self, dims, d, lower_bound=0, check=True):
        dims = list(dims)
        d = list(d)
        if len(d) != max(len(dims) - 1, 0):
            raise ValueError("need one differential per adjacent pair of degrees")
        for i, m in enumerate(d):
            if m.cols != dims[i] or m.rows != dims[i + 1]:
                raise ValueError("differential %d has shape %dx%d, expected %dx%d"
                                 % (i, m.rows, m.cols, dims[i + 1], dims[i]))
        if check:
            for i in range(len(d) - 1):
                if not (d[i + 1] * d[i]).is_zero():
                    raise ValueError("d^2 != 0 at degree index %d" % i)
        self.dims = dims
        self.d = d
        self.lower_bound = lower_bound

    @property
    def top(self):
        return self.lower_bound + len(self.dims) - 1

    def degrees(self):
        return range(self.lower_bound, self.top + 1)

    def dim(self, deg):
        i = deg - self.lower_bound
        if 0 <= i < len(self.dims):
            return self.dims[i]
        return 0

    def diff(self, deg):
        """Differential out of degree deg (zero matrix outside range)."""
        i = deg - self.lower_bound
        if 0 <= i < len(self.d):
            return self.d[i]
        return Matrix.zero(self.dim(deg + 1), self.dim(deg))

    def euler_characteristic(self):
        return sum((-1) ** deg * self.dim(deg) for deg in self.degrees())

    def __eq__(self, other):
        return (isinstance(other, Complex) and self.dims == other.dims
                and self.d == other.d and self.lower_bound == other.lower_bound)


class HDegree:
    """Cohomology in one degree: dimension, cycles, boundaries,
    representatives and the projection matrix H-coordinates <- cycles."""

    def __init__(self, dim, cycles, boundaries, reps, projection):
        self.dim = dim
        self.cycles = cycles
        self.boundaries = boundaries
        self.reps = reps
        self.projection = projection


def cohomology(c):
    """Per-degree cohomology data, as a dict degree -> HDegree."""
    out = {}
    for deg in c.degrees():
        cyc = kernel(c.diff(deg))
        prev = c.diff(deg - 1)
        bdry = image(prev) if prev.cols > 0 else Subspace.zero(c.dim(deg))
        reps, proj = quotient_basis(cyc, bdry)
        out[deg] = HDegree(len(reps), cyc, bdry, reps, proj)
    return out


def betti(c):
    return {deg: h.dim for deg, h in cohomology(c).items()}


class ChainMap:
    """Degree-wise linear map commuting with the differentials."""

    def __init__(self, source, target, components, check=True):
        comps = {}
        for deg in source.degrees():
            m = components.get(deg)
            if m is None:
                m = Matrix.zero(target.dim(deg), source.dim(deg))
            if m.cols != source.dim(deg) or m.rows != target.dim(deg):
                raise ValueError("component at degree %d has wrong shape" % deg)
            comps[deg] = m
        self.source = source
        self.target = target
        self.components = comps
        if check:
            for deg in source.degrees():
                lhs = self.component(deg + 1) * source.diff(deg)
                rhs = target.diff(deg) * self.component(deg)
                if not (lhs - rhs).is_zero():
                    raise ValueError("does not commute with d at degree %d" % deg)

    def component(self, deg):
        m = self.components.get(deg)
        if m is None:
            return Matrix.zero(self.target.dim(deg), self.source.dim(deg))
        return m

    def compose(self, other):
        """self after other."""
        assert other.target is self.source or other.target.dims == self.source.dims
        comps = {deg: self.component(deg) * other.component(deg)
                 for deg in other.source.degrees()}
        return ChainMap(other.source, self.target, comps, check=False)


def identity_map(c):
    return ChainMap(c, c, {deg: Matrix.identity(c.dim(deg)) for deg in c.degrees()},
                    check=False)


def induced_on_cohomology(f, h_src=None, h_tgt=None):
    """Induced matrices H(source) -> H(target) per degree."""
    if h_src is None:
        h_src = cohomology(f.source)
    if h_tgt is None:
        h_tgt = cohomology(f.target)
    degs = sorted(set(h_src) | set(h_tgt))
    out = {}
    for deg in degs:
        hs = h_src.get(deg)
        ht = h_tgt.get(deg)
        sdim = hs.dim if hs else 0
        tdim = ht.dim if ht else 0
        if sdim == 0 or tdim == 0:
            out[deg] = Matrix.zero(tdim, sdim)
            continue
        cols = []
        for rep in hs.reps:
            img = f.component(deg).apply(rep)
            cols.append(ht.projection.apply(img))
        out[deg] = Matrix.from_columns(cols, tdim)
    return out


def is_quasi_iso(f, up_to=None):
    """True iff f induces isomorphisms on cohomology (in degrees <= up_to
    when given). Returns (bool, witness dict of induced matrices)."""
    h_src = cohomology(f.source)
    h_tgt = cohomology(f.target)
    induced = induced_on_cohomology(f, h_src, h_tgt)
    ok = True
    for deg, m in induced.items():
        if up_to is not None and deg > up_to:
            continue
        if m.rows != m.cols or rank(m) != m.rows:
            ok = False
    return ok, induced


class DoubleComplex:
    """First-quadrant grid of spaces with commuting differentials.

    dims[i][j] is the dimension at horizontal degree i, vertical degree j.
    horiz[i][j] : (i, j) -> (i+1, j); vert[i][j] : (i, j) -> (i, j+1).
    Squares must commute; the Koszul sign twist is applied when totalizing.
    """

    def __init__(self, dims, horiz, vert, check=True):
        self.dims = [list(row) for row in dims]
        self.nh = len(self.dims)
        self.nv = len(self.dims[0]) if self.dims else 0
        self.horiz = horiz
        self.vert = vert
        if check:
            self._check()

    def dim(self, i, j):
        if 0 <= i < self.nh and 0 <= j < self.nv:
            return self.dims[i][j]
        return 0

    def h(self, i, j):
        m = None
        if 0 <= i < self.nh - 1 and 0 <= j < self.nv:
            m = self.horiz[i][j]
        return m if m is not None else Matrix.zero(self.dim(i + 1, j), self.dim(i, j))

    def v(self, i, j):
        m = None
        if 0 <= i < self.nh and 0 <= j < self.nv - 1:
            m = self.vert[i][j]
        return m if m is not None else Matrix.zero(self.dim(i, j + 1), self.dim(i, j))

    def _check(self):
        for i in range(self.nh - 1):
            for j in range(self.nv):
                if not (self.h(i + 1, j) * self.h(i, j)).is_zero():
                    raise NotDoubleComplex("horizontal d^2 != 0 at (%d,%d)" % (i, j))
        for i in range(self.nh):
            for j in range(self.nv - 1):
                if not (self.v(i, j + 1) * self.v(i, j)).is_zero():
                    raise NotDoubleComplex("vertical d^2 != 0 at (%d,%d)" % (i, j))
        for i in range(self.nh - 1):
            for j in range(self.nv - 1):
                lhs = self.v(i + 1, j) * self.h(i, j)
                rhs = self.h(i, j + 1) * self.v(i, j)
                if not (lhs - rhs).is_zero():
                    raise NotDoubleComplex("square does not commute at (%d,%d)" % (i, j))


def tot(dc):
    """Total complex, d = d_h + (-1)^{horizontal degree} d_v.

    Returns (Complex, offsets) where offsets[n] maps (i, j) with i+j = n to
    the starting index of that summand inside Tot^n.
    """
    top = dc.nh + dc.nv - 2 if dc.nh and dc.nv else 0
    dims = []
    offsets = []
    for n in range(top + 1):
        off = {}
        total = 0
        for i in range(dc.nh):
            j = n - i
            if 0 <= j < dc.nv and dc.dim(i, j) > 0:
                off[(i, j)] = total
                total += dc.dim(i, j)
        offsets.append(off)
        dims.append(total)
    ds = []
    for n in range(top):
        m = [[Fraction(0)] * dims[n] for _ in range(dims[n + 1])]
        for (i, j), src_off in offsets[n].items():
            # horizontal component to (i+1, j)
            if (i + 1, j) in offsets[n + 1]:
                t_off = offsets[n + 1][(i + 1, j)]
                h = dc.h(i, j)
                for a in range(h.rows):
                    for b in range(h.cols):
                        m[t_off + a][src_off + b] += h.entries[a][b]
            # vertical component to (i, j+1), Koszul sign (-1)^i
            if (i, j + 1) in offsets[n + 1]:
                t_off = offsets[n + 1][(i, j + 1)]
                v = dc.v(i, j)
                sign = -1 if i % 2 else 1
                for a in range(v.rows):
                    for b in range(v.cols):
                        m[t_off + a][src_off + b] += sign * v.entries[a][b]
        ds.append(Matrix(m, dims[n + 1], dims[n]))
    return Complex(dims, ds), offsets


def shift_complex(c, shift):
    """Same data with lower_bound shifted by the given amount."""
    return Complex(c.dims, c.d, c.lower_bound + shift, check=False)


def direct_sum_maps(mats):
    """Block diagonal matrix."""
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    ro = co = 0
    for m in mats:
        for a in range(m.rows):
            for b in range(m.cols):
                out[ro + a][co + b] = m.entries[a][b]
        ro += m.rows
        co += m.cols
    return Matrix(out, rows, cols)


def sub_complex(c, subspaces):
    """Complex structure on d-stable subspaces; returns (Complex, inclusions).

    subspaces is a dict degree -> Subspace of C^deg. The differential must
    map each subspace into the next; expressed in the subspace bases.
    """
    dims = []
    incs = {}
    ds = []
    degs = list(c.degrees())
    for deg in degs:
        s = subspaces.get(deg, Subspace.zero(c.dim(deg)))
        dims.append(s.dim)
        incs[deg] = s.basis_matrix()
    for idx, deg in enumerate(degs[:-1]):
        s = subspaces.get(deg, Subspace.zero(c.dim(deg)))
        t = subspaces.get(deg + 1, Subspace.zero(c.dim(deg + 1)))
        m = solve_matrix(t.basis_matrix(), c.diff(deg) * s.basis_matrix())
        if m is None:
            raise ValueError("subspaces are not d-stable at degree %d" % deg)
        ds.append(m)
    return Complex(dims, ds, c.lower_bound, check=False), incs
