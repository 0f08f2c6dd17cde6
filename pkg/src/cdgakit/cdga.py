"""Graded-commutative differential graded algebras with explicit
multiplication tensors, their morphisms, tensor products, and cohomology
algebras.

All algebras are truncated at the top degree of their underlying complex;
products that would land above the truncation are discarded. The truncation
degree is part of the value.
"""

from fractions import Fraction

from .linalg import Matrix, Subspace, image
from .complexes import Complex, ChainMap, cohomology


class CDGA:
    """Unital graded-commutative dga on a bounded complex.

    mult[(i, j)] is a matrix of shape dim(i+j) x (dim(i) * dim(j)) acting
    on the Kronecker basis e_a (x) e_b |-> a * dim(j) + b, stored for all
    i + j <= top. unit is a vector in degree 0; augmentation, when present,
    is a linear functional on degree 0.
    """

    def __init__(self, complex_, mult, unit, augmentation=None):
        self.complex = complex_
        self.mult = dict(mult)
        self.unit = tuple(Fraction(x) for x in unit)
        self.augmentation = (tuple(Fraction(x) for x in augmentation)
                             if augmentation is not None else None)
        if complex_.lower_bound != 0:
            raise ValueError("CDGA complexes start in degree 0")
        for i in range(complex_.top + 1):
            for j in range(complex_.top + 1 - i):
                m = self.mult.get((i, j))
                di, dj, dij = complex_.dim(i), complex_.dim(j), complex_.dim(i + j)
                if m is None:
                    self.mult[(i, j)] = Matrix.zero(dij, di * dj)
                elif m.rows != dij or m.cols != di * dj:
                    raise ValueError("mult tensor (%d,%d) has wrong shape" % (i, j))

    @property
    def top(self):
        return self.complex.top

    def dim(self, deg):
        return self.complex.dim(deg)

    def product(self, i, x, j, y):
        """Product of x in degree i with y in degree j; None above top."""
        if i + j > self.top:
            return None
        kron = tuple(a * b for a in x for b in y)
        return self.mult[(i, j)].apply(kron)

    def is_augmented(self):
        return self.augmentation is not None

    def aug(self, x):
        assert self.augmentation is not None
        return sum(a * b for a, b in zip(self.augmentation, x))


def _basis(n):
    return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]


def validate(a):
    """Check all CDGA identities; returns a list of violation strings."""
    bad = []
    c = a.complex
    top = a.top
    # unit laws
    for j in range(top + 1):
        for b, eb in enumerate(_basis(c.dim(j))):
            p = a.product(0, a.unit, j, eb)
            if p != eb:
                bad.append("unit law fails on degree-%d basis vector %d" % (j, b))
            p2 = a.product(j, eb, 0, a.unit)
            if p2 != eb:
                bad.append("right unit law fails on degree-%d basis vector %d" % (j, b))
    # d(unit) = 0
    if c.top >= 1 and any(x != 0 for x in c.diff(0).apply(a.unit)):
        bad.append("differential of the unit is nonzero")
    # graded commutativity
    for i in range(top + 1):
        for j in range(i, top + 1 - i):
            sign = -1 if (i % 2 and j % 2) else 1
            for x, ex in enumerate(_basis(c.dim(i))):
                for y, ey in enumerate(_basis(c.dim(j))):
                    p = a.product(i, ex, j, ey)
                    q = a.product(j, ey, i, ex)
                    if p != tuple(sign * v for v in q):
                        bad.append("graded commutativity fails at degrees (%d,%d) "
                                   "basis (%d,%d)" % (i, j, x, y))
    # associativity within the bound
    for i in range(top + 1):
        for j in range(top + 1 - i):
            for k in range(top + 1 - i - j):
                for x, ex in enumerate(_basis(c.dim(i))):
                    for y, ey in enumerate(_basis(c.dim(j))):
                        for z, ez in enumerate(_basis(c.dim(k))):
                            left = a.product(i + j, a.product(i, ex, j, ey), k, ez)
                            right = a.product(i, ex, j + k, a.product(j, ey, k, ez))
                            if left != right:
                                bad.append("associativity fails at degrees "
                                           "(%d,%d,%d) basis (%d,%d,%d)"
                                           % (i, j, k, x, y, z))
    # Leibniz
    for i in range(top + 1):
        for j in range(top - i):
            sign = -1 if i % 2 else 1
            for x, ex in enumerate(_basis(c.dim(i))):
                for y, ey in enumerate(_basis(c.dim(j))):
                    lhs = c.diff(i + j).apply(a.product(i, ex, j, ey))
                    t1 = a.product(i + 1, c.diff(i).apply(ex), j, ey)
                    t2 = a.product(i, ex, j + 1, c.diff(j).apply(ey))
                    rhs = tuple(u + sign * v for u, v in zip(t1, t2))
                    if lhs != rhs:
                        bad.append("Leibniz fails at degrees (%d,%d) basis (%d,%d)"
                                   % (i, j, x, y))
    # augmentation
    if a.augmentation is not None:
        if a.aug(a.unit) != 1:
            bad.append("augmentation of the unit is not 1")
        for x, ex in enumerate(_basis(c.dim(0))):
            for y, ey in enumerate(_basis(c.dim(0))):
                p = a.product(0, ex, 0, ey)
                if a.aug(p) != a.aug(ex) * a.aug(ey):
                    bad.append("augmentation is not multiplicative on basis "
                               "(%d,%d)" % (x, y))
        if c.top >= 0 and c.dim(0) > 0 and len(c.d) > 0:
            pass  # eps lives on degree 0 only; eps o d does not apply (no degree -1)
    return bad


class CDGAMorphism:
    """Strict morphism of CDGAs: multiplicative unital chain map."""

    def __init__(self, source, target, chain_map, check=True):
        self.source = source
        self.target = target
        self.chain_map = chain_map
        if check:
            bad = self.violations()
            if bad:
                raise ValueError("not a CDGA morphism: " + "; ".join(bad[:3]))

    def component(self, deg):
        return self.chain_map.component(deg)

    def violations(self):
        bad = []
        f = self.chain_map
        if f.component(0).apply(self.source.unit) != self.target.unit:
            bad.append("unit is not preserved")
        top = min(self.source.top, self.target.top)
        for i in range(top + 1):
            for j in range(top + 1 - i):
                for x, ex in enumerate(_basis(self.source.dim(i))):
                    for y, ey in enumerate(_basis(self.source.dim(j))):
                        p = self.source.product(i, ex, j, ey)
                        lhs = f.component(i + j).apply(p)
                        rhs = self.target.product(i, f.component(i).apply(ex),
                                                  j, f.component(j).apply(ey))
                        if lhs != rhs:
                            bad.append("multiplicativity fails at degrees (%d,%d) "
                                       "basis (%d,%d)" % (i, j, x, y))
        if self.source.augmentation is not None and self.target.augmentation is not None:
            for ex in _basis(self.source.dim(0)):
                if self.source.aug(ex) != self.target.aug(f.component(0).apply(ex)):
                    bad.append("augmentation is not preserved")
                    break
        return bad


def ground_field(augmented=True):
    """The CDGA K concentrated in degree 0."""
    c = Complex([1], [])
    mult = {(0, 0): Matrix.identity(1)}
    return CDGA(c, mult, (Fraction(1),), (Fraction(1),) if augmented else None)


def tensor(a, b):
    """Graded tensor product with Koszul signs, truncated at top_a + top_b."""
    top = a.top + b.top
    dims = []
    index = []  # per total degree: list of (i, j, a_idx, b_idx)
    offsets = {}
    for n in range(top + 1):
        idx = []
        for i in range(min(n, a.top) + 1):
            j = n - i
            if j > b.top:
                continue
            offsets[(n, i)] = len(idx)
            for x in range(a.dim(i)):
                for y in range(b.dim(j)):
                    idx.append((i, j, x, y))
        index.append(idx)
        dims.append(len(idx))

    def pos(n, i, x, y):
        j = n - i
        return offsets[(n, i)] + x * b.dim(j) + y

    ds = []
    for n in range(top):
        m = [[Fraction(0)] * dims[n] for _ in range(dims[n + 1])]
        for col, (i, j, x, y) in enumerate(index[n]):
            da = a.complex.diff(i)
            for r in range(da.rows):
                if da.entries[r][x] != 0 and (n + 1, i + 1) in offsets and n + 1 - (i + 1) <= b.top:
                    m[pos(n + 1, i + 1, r, y)][col] += da.entries[r][x]
            db = b.complex.diff(j)
            sign = -1 if i % 2 else 1
            for r in range(db.rows):
                if db.entries[r][y] != 0 and (n + 1, i) in offsets:
                    m[pos(n + 1, i, x, r)][col] += sign * db.entries[r][y]
        ds.append(Matrix(m, dims[n + 1], dims[n]))
    cx = Complex(dims, ds)

    mult = {}
    for p in range(top + 1):
        for q in range(top + 1 - p):
            m = [[Fraction(0)] * (dims[p] * dims[q]) for _ in range(dims[p + q])]
            for cp, (i1, j1, x1, y1) in enumerate(index[p]):
                for cq, (i2, j2, x2, y2) in enumerate(index[q]):
                    col = cp * dims[q] + cq
                    # (x1 (x) y1)(x2 (x) y2) = (-1)^{|y1||x2|} x1 x2 (x) y1 y2
                    sign = -1 if (j1 % 2 and i2 % 2) else 1
                    pa = a.product(i1, _basis(a.dim(i1))[x1], i2, _basis(a.dim(i2))[x2])
                    pb = b.product(j1, _basis(b.dim(j1))[y1], j2, _basis(b.dim(j2))[y2])
                    if pa is None or pb is None:
                        continue
                    if p + q - (i1 + i2) > b.top or (p + q, i1 + i2) not in offsets:
                        continue
                    for r1, v1 in enumerate(pa):
                        if v1 == 0:
                            continue
                        for r2, v2 in enumerate(pb):
                            if v2 == 0:
                                continue
                            m[pos(p + q, i1 + i2, r1, r2)][col] += sign * v1 * v2
            mult[(p, q)] = Matrix(m, dims[p + q], dims[p] * dims[q])

    unit = [Fraction(0)] * dims[0]
    for col, (i, j, x, y) in enumerate(index[0]):
        unit[col] = a.unit[x] * b.unit[y]
    augmentation = None
    if a.augmentation is not None and b.augmentation is not None:
        augmentation = [Fraction(0)] * dims[0]
        for col, (i, j, x, y) in enumerate(index[0]):
            augmentation[col] = a.augmentation[x] * b.augmentation[y]
    return CDGA(cx, mult, unit, augmentation)


def h_star(a, check_well_defined=True):
    """Cohomology algebra: zero differential, induced product.

    Returns (CDGA, reps, projs) where reps[deg] are cocycle representatives
    and projs[deg] the projections cycles -> H coordinates.
    """
    h = cohomology(a.complex)
    top = a.top
    dims = [h[deg].dim for deg in range(top + 1)]
    reps = {deg: h[deg].reps for deg in range(top + 1)}
    projs = {deg: h[deg].projection for deg in range(top + 1)}
    mult = {}
    for i in range(top + 1):
        for j in range(top + 1 - i):
            m = [[Fraction(0)] * (dims[i] * dims[j]) for _ in range(dims[i + j])]
            for x in range(dims[i]):
                for y in range(dims[j]):
                    p = a.product(i, reps[i][x], j, reps[j][y])
                    coords = projs[i + j].apply(p)
                    for r, v in enumerate(coords):
                        m[r][x * dims[j] + y] = v
            mult[(i, j)] = Matrix(m, dims[i + j], dims[i] * dims[j])
    if check_well_defined:
        # product of a cycle with a boundary must be a boundary
        for i in range(top + 1):
            for j in range(top + 1 - i):
                bd = h[j].boundaries
                for x in range(dims[i]):
                    for bvec in bd.basis:
                        p = a.product(i, reps[i][x], j, bvec)
                        if any(v != 0 for v in projs[i + j].apply(p)):
                            raise ValueError("induced product is not well defined "
                                             "at degrees (%d,%d)" % (i, j))
    unit = projs[0].apply(a.unit) if dims[0] else tuple()
    cx = Complex(dims, [Matrix.zero(dims[k + 1], dims[k]) for k in range(top)])
    augmentation = None
    if a.augmentation is not None and dims[0]:
        # augmentation descends when it kills boundaries in degree 0 (none exist)
        augmentation = tuple(a.aug(reps[0][x]) for x in range(dims[0]))
    res = CDGA(cx, mult, unit, augmentation)
    return res, reps, projs
