"""Finite-truncation cosimplicial modules and algebras.

Provides the simplex category combinatorics (monotone maps, epi-mono
factorization, shuffles), cosimplicial objects generated by coface and
codegeneracy maps, normalization, Tot_N, and the Dold-Kan denormalization
of a dga into a cosimplicial algebra with level-wise shuffle products.
"""

from fractions import Fraction
from itertools import combinations

from .linalg import Matrix, Subspace, solve_matrix
from .complexes import (Complex, ChainMap, DoubleComplex, tot, identity_map,
                        sub_complex)
from .cdga import CDGA, CDGAMorphism


class TruncationTooSmall(Exception):
    pass


class SimplexMap:
    """Monotone map [m] -> [n], stored by its value tuple."""

    __slots__ = ("source_level", "target_level", "values")

    def __init__(self, source_level, target_level, values):
        values = tuple(values)
        if len(values) != source_level + 1:
            raise ValueError("value tuple has wrong length")
        if any(v < 0 or v > target_level for v in values):
            raise ValueError("values out of range")
        if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
            raise ValueError("map is not monotone")
        self.source_level = source_level
        self.target_level = target_level
        self.values = values

    def __eq__(self, other):
        return (self.source_level == other.source_level
                and self.target_level == other.target_level
                and self.values == other.values)

    def __hash__(self):
        return hash((self.source_level, self.target_level, self.values))

    def __repr__(self):
        return "SimplexMap([%d]->[%d], %r)" % (self.source_level,
                                               self.target_level, self.values)

    def __call__(self, x):
        return self.values[x]

    def compose(self, other):
        """self after other."""
        assert other.target_level == self.source_level
        return SimplexMap(other.source_level, self.target_level,
                          tuple(self.values[v] for v in other.values))

    def is_identity(self):
        return (self.source_level == self.target_level
                and self.values == tuple(range(self.source_level + 1)))

    def is_surjective(self):
        return set(self.values) == set(range(self.target_level + 1))

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def epi_mono_factorization(self):
        """Unique factorization as mono . epi."""
        img = sorted(set(self.values))
        k = len(img) - 1
        pos = {v: i for i, v in enumerate(img)}
        epi = SimplexMap(self.source_level, k, tuple(pos[v] for v in self.values))
        mono = SimplexMap(k, self.target_level, tuple(img))
        return epi, mono


def identity(n):
    return SimplexMap(n, n, tuple(range(n + 1)))


def coface(n, i):
    """delta_i : [n] -> [n+1], skipping i."""
    return SimplexMap(n, n + 1, tuple(x if x < i else x + 1 for x in range(n + 1)))


def codegeneracy(n, i):
    """sigma_i : [n+1] -> [n], repeating i."""
    return SimplexMap(n + 1, n, tuple(x if x <= i else x - 1 for x in range(n + 2)))


def surjections(n, k):
    """All monotone surjections [n] ->> [k]."""
    if k > n or k < 0:
        return []
    # choose the positions 1..n where the value increases
    out = []
    for rises in combinations(range(1, n + 1), k):
        vals = []
        v = 0
        rises = set(rises)
        for x in range(n + 1):
            if x in rises:
                v += 1
            vals.append(v)
        out.append(SimplexMap(n, k, tuple(vals)))
    out.sort(key=lambda s: s.values)
    return out


def shuffle_of_surjection_pair(s, t):
    """Shuffle decomposition of a pair of surjections with common source.

    For s : [n] ->> [p], t : [n] ->> [q], the joint map x -> (s(x), t(x))
    traces a monotone path in the (p, q) grid. When that path moves by
    exactly one unit in exactly one coordinate at each step (so the joint
    map is a surjection onto a (p, q)-shuffle path), returns
    (u, sign) where u : [n] ->> [p + q] is the joint surjection and sign
    is the Koszul sign of the shuffle for degrees counted by steps of the
    first coordinate (degree p block) against the second (degree q block).
    Otherwise returns None.
    """
    assert s.source_level == t.source_level
    n = s.source_level
    p, q = s.target_level, t.target_level
    path = []
    for x in range(n + 1):
        pt = (s(x), t(x))
        if not path or path[-1] != pt:
            path.append(pt)
    if len(path) != p + q + 1:
        return None
    word = []
    for (a0, b0), (a1, b1) in zip(path, path[1:]):
        da, db = a1 - a0, b1 - b0
        if (da, db) == (1, 0):
            word.append(0)
        elif (da, db) == (0, 1):
            word.append(1)
        else:
            return None
    # inversions: a vertical (1) step occurring before a horizontal (0) step
    inv = 0
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] == 1 and word[j] == 0:
                inv += 1
    sign = -1 if inv % 2 else 1
    # joint surjection [n] ->> [p+q]
    pos = {pt: idx for idx, pt in enumerate(path)}
    u = SimplexMap(n, p + q, tuple(pos[(s(x), t(x))] for x in range(n + 1)))
    return u, sign


class CosimplicialModule:
    """Truncated cosimplicial object of complexes.

    levels[n] is a Complex; cofaces[n][i] is the chain map for
    delta_i : [n] -> [n+1] and codegeneracies[n][i] the chain map for
    sigma_i : [n+1] -> [n].
    """

    def __init__(self, levels, cofaces, codegeneracies, check=True):
        self.truncation = len(levels) - 1
        self.levels = list(levels)
        self.cofaces = cofaces
        self.codegeneracies = codegeneracies
        if check:
            bad = self.identity_violations()
            if bad:
                raise ValueError("cosimplicial identities fail: " + bad[0])

    def level(self, n):
        return self.levels[n]

    def coface_map(self, n, i):
        return self.cofaces[n][i]

    def codegeneracy_map(self, n, i):
        return self.codegeneracies[n][i]

    def _gen_matrixmaps(self, theta):
        """ChainMap for an arbitrary monotone map, by generator factorization."""
        m, n = theta.source_level, theta.target_level
        if theta.is_identity():
            return identity_map(self.levels[m])
        if not theta.is_surjective():
            missing = min(set(range(n + 1)) - set(theta.values))
            inner = SimplexMap(m, n - 1,
                               tuple(v if v < missing else v - 1 for v in theta.values))
            return self.coface_map(n - 1, missing).compose(self.structure_map(inner))
        # surjective, not injective: peel one codegeneracy
        j = next(x for x in range(m) if theta.values[x] == theta.values[x + 1])
        inner = SimplexMap(m - 1, n,
                           theta.values[:j + 1] + theta.values[j + 2:])
        return self.structure_map(inner).compose(self.codegeneracy_map(m - 1, j))

    def structure_map(self, theta):
        if theta.source_level > self.truncation or theta.target_level > self.truncation:
            raise TruncationTooSmall("map %r exceeds truncation %d"
                                     % (theta, self.truncation))
        return self._gen_matrixmaps(theta)

    def identity_violations(self):
        bad = []
        N = self.truncation

        def comps_equal(f, g):
            return all((f.component(d) - g.component(d)).is_zero()
                       for d in f.source.degrees())

        for n in range(N - 1):
            for i in range(n + 2):
                for j in range(i + 1, n + 3):
                    # delta_j delta_i = delta_i delta_{j-1} : [n] -> [n+2]
                    lhs = self.coface_map(n + 1, j).compose(self.coface_map(n, i))
                    rhs = self.coface_map(n + 1, i).compose(self.coface_map(n, j - 1))
                    if not comps_equal(lhs, rhs):
                        bad.append("coface identity (%d,%d) at level %d" % (i, j, n))
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    # sigma_j sigma_i = sigma_i sigma_{j+1} : [n+2] -> [n]
                    lhs = self.codegeneracy_map(n, j).compose(
                        self.codegeneracy_map(n + 1, i))
                    rhs = self.codegeneracy_map(n, i).compose(
                        self.codegeneracy_map(n + 1, j + 1))
                    if not comps_equal(lhs, rhs):
                        bad.append("codegeneracy identity (%d,%d) at level %d"
                                   % (i, j, n))
        for n in range(N):
            for j in range(n + 1):
                for i in range(n + 2):
                    # sigma_j delta_i on [n+1]
                    lhs = self.codegeneracy_map(n, j).compose(self.coface_map(n, i))
                    if i < j:
                        rhs = self.coface_map(n - 1, i).compose(
                            self.codegeneracy_map(n - 1, j - 1)) if n >= 1 else None
                    elif i in (j, j + 1):
                        rhs = identity_map(self.levels[n])
                    else:
                        rhs = self.coface_map(n - 1, i - 1).compose(
                            self.codegeneracy_map(n - 1, j)) if n >= 1 else None
                    if rhs is not None and not comps_equal(lhs, rhs):
                        bad.append("mixed identity (%d,%d) at level %d" % (i, j, n))
        return bad


class CosimplicialCDGA(CosimplicialModule):
    """Truncated cosimplicial CDGA; structure maps are algebra morphisms."""

    def __init__(self, levels, cofaces, codegeneracies, check=True):
        self.algebras = list(levels)
        super().__init__([a.complex for a in levels],
                         cofaces, codegeneracies, check=check)
        if check:
            for n in range(self.truncation):
                for i in range(n + 2):
                    m = CDGAMorphism(self.algebras[n], self.algebras[n + 1],
                                     self.coface_map(n, i), check=False)
                    bad = m.violations()
                    if bad:
                        raise ValueError("coface (%d,%d) is not an algebra map: %s"
                                         % (n, i, bad[0]))
                for i in range(n + 1):
                    m = CDGAMorphism(self.algebras[n + 1], self.algebras[n],
                                     self.codegeneracy_map(n, i), check=False)
                    bad = m.violations()
                    if bad:
                        raise ValueError("codegeneracy (%d,%d) is not an algebra "
                                         "map: %s" % (n, i, bad[0]))

    def algebra(self, n):
        return self.algebras[n]


class Normalization:
    """Normalized double complex of a cosimplicial module.

    grid is a DoubleComplex with horizontal degree the cosimplicial level
    and vertical degree the internal degree. inclusions[(n, k)] is the
    matrix embedding the normalized piece into level n, degree k.
    """

    def __init__(self, grid, inclusions):
        self.grid = grid
        self.inclusions = inclusions


def normalize(c):
    """Intersection-of-codegeneracy-kernels normalization.

    N^n = intersection of ker(sigma_i), i < n, inside level n, with
    horizontal differential the alternating sum of cofaces.
    """
    N = c.truncation
    vtop = max((lvl.top for lvl in c.levels), default=0)
    subspaces = {}
    for n in range(N + 1):
        lvl = c.level(n)
        for k in range(vtop + 1):
            s = Subspace.full(lvl.dim(k))
            for i in range(n):
                sk = c.codegeneracy_map(n - 1, i).component(k)
                from .linalg import kernel as _ker
                s = s.intersect(_ker(sk))
            subspaces[(n, k)] = s
    dims = [[subspaces[(n, k)].dim for k in range(vtop + 1)] for n in range(N + 1)]
    inclusions = {key: s.basis_matrix() for key, s in subspaces.items()}
    horiz = [[None] * (vtop + 1) for _ in range(N + 1)]
    vert = [[None] * (vtop + 1) for _ in range(N + 1)]
    for n in range(N):
        for k in range(vtop + 1):
            m = Matrix.zero(c.level(n + 1).dim(k), c.level(n).dim(k))
            for i in range(n + 2):
                comp = c.coface_map(n, i).component(k)
                m = m + comp.scale(-1 if i % 2 else 1)
            restricted = solve_matrix(inclusions[(n + 1, k)],
                                      m * inclusions[(n, k)])
            if restricted is None:
                raise ValueError("alternating coface sum does not preserve "
                                 "the normalized part")
            horiz[n][k] = restricted
    for n in range(N + 1):
        lvl = c.level(n)
        for k in range(vtop):
            restricted = solve_matrix(inclusions[(n, k + 1)],
                                      lvl.diff(k) * inclusions[(n, k)])
            if restricted is None:
                raise ValueError("internal differential does not preserve "
                                 "the normalized part")
            vert[n][k] = restricted
    grid = DoubleComplex(dims, horiz, vert)
    return Normalization(grid, inclusions)


def tot_n(c):
    """Total complex of the normalized double complex.

    Returns (Complex, Normalization, offsets)."""
    norm = normalize(c)
    total, offsets = tot(norm.grid)
    return total, norm, offsets


def constant_cosimplicial(a, N):
    """Constant cosimplicial CDGA on a, truncated at level N."""
    ident = identity_map(a.complex)
    cofaces = [[ident for _ in range(n + 2)] for n in range(N)]
    codegens = [[ident for _ in range(n + 1)] for n in range(N)]
    return CosimplicialCDGA([a] * (N + 1), cofaces, codegens, check=False)


# ---------------------------------------------------------------------------
# Dold-Kan denormalization


class _DKLevel:
    """Bookkeeping for one level of the denormalization: the list of
    surjection summands and index offsets."""

    def __init__(self, a, n):
        self.summands = []
        self.offsets = []
        off = 0
        for p in range(min(n, a.top) + 1):
            for s in surjections(n, p):
                self.summands.append(s)
                self.offsets.append(off)
                off += a.dim(p)
        self.dim = off
        self.index = {s: i for i, s in enumerate(self.summands)}


def _mono_action(a, mono):
    """Action of a mono [k] -> [p] on the cochain complex a.

    Identity acts as identity; the mono [p-1] -> [p] omitting p acts as
    (-1)^{p-1} d (the Moore-complex sign for the last-face differential);
    all other monos act as zero. Returns a matrix a.dim(p) x a.dim(k) or
    None for zero.
    """
    k, p = mono.source_level, mono.target_level
    if mono.is_identity():
        return Matrix.identity(a.dim(p))
    if p == k + 1 and mono.values == tuple(range(k + 1)):
        d = a.complex.diff(k)
        return d if k % 2 == 0 else d.scale(Fraction(-1))
    return None


def dold_kan_D(a, N):
    """Denormalization of a CDGA into a truncated cosimplicial CDGA.

    Level n is the direct sum over surjections s : [n] ->> [p] of copies of
    the degree-p piece, with shuffle products; raises TruncationTooSmall
    when N is below the top degree of a.
    """
    if N < a.top:
        raise TruncationTooSmall("truncation %d below top degree %d" % (N, a.top))
    levels_meta = [_DKLevel(a, n) for n in range(N + 1)]

    def theta_matrix(theta):
        """Matrix of D(theta) : level m -> level n."""
        m, n = theta.source_level, theta.target_level
        src, tgt = levels_meta[m], levels_meta[n]
        out = [[Fraction(0)] * src.dim for _ in range(tgt.dim)]
        for ti, t in enumerate(tgt.summands):
            comp = t.compose(theta)
            epi, mono = comp.epi_mono_factorization()
            act = _mono_action(a, mono)
            if act is None:
                continue
            si = src.index.get(epi)
            if si is None:
                continue
            so, to = src.offsets[si], tgt.offsets[ti]
            for r in range(act.rows):
                for cc in range(act.cols):
                    out[to + r][so + cc] += act.entries[r][cc]
        return Matrix(out, tgt.dim, src.dim)

    # The product is transported through the Dold-Kan decomposition: each
    # level of the tensor square splits along surjections gamma, the
    # gamma-component is read off in the conormalization (projection along
    # coface images), the dual shuffle map lands it in a tensor of source
    # degrees, and the source multiplication finishes. The cosimplicial
    # invariant checker in the constructor certifies the outcome.
    theta_cache = {}

    def theta(m):
        key = (m.source_level, m.target_level, m.values)
        if key not in theta_cache:
            theta_cache[key] = theta_matrix(m)
        return theta_cache[key]

    id_proj = [None] * (N + 1)

    def identity_projection(r):
        """Projection level r -> a^r along the span of the coface images."""
        if id_proj[r] is not None:
            return id_proj[r]
        meta = levels_meta[r]
        ident = SimplexMap(r, r, tuple(range(r + 1)))
        off = meta.offsets[meta.index[ident]]
        c = a.dim(r)
        cols = [tuple(Fraction(int(i == off + x)) for i in range(meta.dim))
                for x in range(c)]
        if r > 0:
            degen = Subspace(meta.dim, [
                theta(coface(r - 1, i)).column(j)
                for i in range(r + 1) for j in range(levels_meta[r - 1].dim)])
            cols.extend(degen.basis)
        m = Matrix.from_columns(cols, meta.dim)
        inv = solve_matrix(m, Matrix.identity(meta.dim))
        id_proj[r] = Matrix(inv.entries[:c], c, meta.dim)
        return id_proj[r]

    def collapse(r, steps):
        """Surjection [r] ->> [r - len(steps)] collapsing the given steps."""
        vals = [0]
        for x in range(r):
            vals.append(vals[-1] + (0 if x in steps else 1))
        return SimplexMap(r, r - len(steps), tuple(vals))

    def level_algebra(n):
        meta = levels_meta[n]
        dim = meta.dim
        mult = [[Fraction(0)] * (dim * dim) for _ in range(dim)]
        for g in meta.summands:
            r = g.target_level
            go = meta.offsets[meta.index[g]]
            for da in range(r + 1):
                db = r - da
                pm = a.mult.get((da, db))
                if pm is None:
                    continue
                for mu in combinations(range(r), da):
                    nu = tuple(x for x in range(r) if x not in mu)
                    sign = 1
                    for i in mu:
                        for j in nu:
                            if j < i:
                                sign = -sign
                    x_map = collapse(r, set(nu)).compose(g)
                    y_map = collapse(r, set(mu)).compose(g)
                    xm = identity_projection(da) * theta(x_map)
                    ym = identity_projection(db) * theta(y_map)
                    for xi in range(dim):
                        xcol = [xm.entries[x][xi] for x in range(a.dim(da))]
                        if not any(xcol):
                            continue
                        for yj in range(dim):
                            ycol = [ym.entries[y][yj]
                                    for y in range(a.dim(db))]
                            if not any(ycol):
                                continue
                            col = xi * dim + yj
                            for x, vx in enumerate(xcol):
                                if vx == 0:
                                    continue
                                for y, vy in enumerate(ycol):
                                    if vy == 0:
                                        continue
                                    for rr in range(pm.rows):
                                        v = pm.entries[rr][x * a.dim(db) + y]
                                        if v != 0:
                                            mult[go + rr][col] += (
                                                sign * v * vx * vy)
        unit = [Fraction(0)] * dim
        s0 = surjections(n, 0)[0]
        off0 = meta.offsets[meta.index[s0]]
        for x, v in enumerate(a.unit):
            unit[off0 + x] = v
        augmentation = None
        if a.augmentation is not None:
            augmentation = [Fraction(0)] * dim
            for x, v in enumerate(a.augmentation):
                augmentation[off0 + x] = v
        cx = Complex([dim], [])
        return CDGA(cx, {(0, 0): Matrix(mult, dim, dim * dim)}, unit, augmentation)

    algebras = [level_algebra(n) for n in range(N + 1)]
    cofaces = []
    codegens = []
    for n in range(N):
        row = []
        for i in range(n + 2):
            m = theta_matrix(coface(n, i))
            row.append(ChainMap(algebras[n].complex, algebras[n + 1].complex,
                                {0: m}, check=False))
        cofaces.append(row)
        row = []
        for i in range(n + 1):
            m = theta_matrix(codegeneracy(n, i))
            row.append(ChainMap(algebras[n + 1].complex, algebras[n].complex,
                                {0: m}, check=False))
        codegens.append(row)
    return CosimplicialCDGA(algebras, cofaces, codegens)
