"""Polynomial differential forms on algebraic simplices and the limit
construction of a multiplicative model for Tot_N, with Whitney integration.

Forms on the n-simplex live in the affine chart t_0 = 1 - sum t_i, so the
variables are t_1..t_n and dt_1..dt_n and equality of forms is syntactic.
The weight of a term is polynomial degree plus form degree; d preserves
weight, multiplication adds weights, pullbacks preserve weight <=.
"""

from fractions import Fraction
from itertools import combinations
from math import factorial

from .linalg import Matrix, kernel, rref, solve, solve_matrix
from .complexes import Complex, ChainMap
from .cdga import CDGA
from .cosimplicial import SimplexMap, coface, codegeneracy, tot_n, TruncationTooSmall


class PolyForm:
    """Polynomial differential form on the n-simplex.

    terms maps (exponents, index set) -> coefficient, where exponents is a
    tuple of n nonnegative integers for t_1..t_n and the index set is a
    strictly increasing tuple of indices in 1..n for dt_I.
    """

    __slots__ = ("level", "terms")

    def __init__(self, level, terms=None):
        self.level = level
        clean = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[key] = clean.get(key, Fraction(0)) + c
                if clean[key] == 0:
                    del clean[key]
        self.terms = clean

    @staticmethod
    def constant(level, c=1):
        c = Fraction(c)
        if c == 0:
            return PolyForm(level)
        return PolyForm(level, {((0,) * level, ()): c})

    @staticmethod
    def variable(level, i):
        """The coordinate function t_i, 1 <= i <= level."""
        e = tuple(int(j == i) for j in range(1, level + 1))
        return PolyForm(level, {(e, ()): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.level == other.level and self.terms == other.terms

    def __add__(self, other):
        assert self.level == other.level
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return PolyForm(self.level, out)

    def scale(self, c):
        c = Fraction(c)
        return PolyForm(self.level, {k: c * v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)


def _merge_wedge(i_set, j_set):
    """Sign and merged index tuple of dt_I wedge dt_J, or None if repeated."""
    if set(i_set) & set(j_set):
        return None
    merged = tuple(sorted(i_set + j_set))
    seq = list(i_set + j_set)
    # count inversions of the concatenation
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq))
              if seq[a] > seq[b])
    return (-1 if inv % 2 else 1), merged


def poly_mul(f, g):
    assert f.level == g.level
    out = {}
    for (ea, ia), ca in f.terms.items():
        for (eb, ib), cb in g.terms.items():
            m = _merge_wedge(ia, ib)
            if m is None:
                continue
            sign, merged = m
            e = tuple(x + y for x, y in zip(ea, eb))
            key = (e, merged)
            out[key] = out.get(key, Fraction(0)) + sign * ca * cb
    return PolyForm(f.level, out)


def poly_d(f):
    out = {}
    for (e, iset), c in f.terms.items():
        for pos in range(f.level):
            a = e[pos]
            if a == 0:
                continue
            var = pos + 1
            if var in iset:
                continue
            m = _merge_wedge((var,), iset)
            sign, merged = m
            e2 = tuple(x - int(j == pos) for j, x in enumerate(e))
            key = (e2, merged)
            out[key] = out.get(key, Fraction(0)) + sign * a * c
    return PolyForm(f.level, out)


def weight(term_key):
    e, iset = term_key
    return sum(e) + len(iset)


def truncate_weight(f, w):
    return PolyForm(f.level, {k: c for k, c in f.terms.items() if weight(k) <= w})


def _affine_images(theta):
    """Pullbacks of the target chart coordinates along theta.

    For theta : [m] -> [n], coordinate u_j on the n-simplex pulls back to
    the sum of x_i over theta^{-1}(j), with x_0 = 1 - sum x_i expanded.
    Returns a list of m-level PolyForms indexed by j = 1..n.
    """
    m, n = theta.source_level, theta.target_level
    out = []
    for j in range(1, n + 1):
        f = PolyForm(m)
        for i in range(m + 1):
            if theta(i) != j:
                continue
            if i == 0:
                f = f + PolyForm.constant(m, 1)
                for l in range(1, m + 1):
                    f = f - PolyForm.variable(m, l)
            else:
                f = f + PolyForm.variable(m, i)
        out.append(f)
    return out


def pullback(theta, f):
    """Pullback of a form on the theta-target simplex along theta."""
    assert f.level == theta.target_level
    m = theta.source_level
    images = _affine_images(theta)
    # differentials of the coordinate images: constant-coefficient 1-forms
    dimages = [poly_d(g) for g in images]
    out = PolyForm(m)
    for (e, iset), c in f.terms.items():
        acc = PolyForm.constant(m, c)
        for j, a in enumerate(e):
            for _ in range(a):
                acc = poly_mul(acc, images[j])
        for j in iset:
            acc = poly_mul(acc, dimages[j - 1])
        out = out + acc
    return out


def _monomials(n, maxdeg):
    """All exponent tuples of length n with total degree <= maxdeg."""
    if n == 0:
        return [()] if maxdeg >= 0 else []
    out = []
    for head in range(maxdeg + 1):
        for tail in _monomials(n - 1, maxdeg - head):
            out.append((head,) + tail)
    out.sort(key=lambda e: (sum(e), e))
    return out


def omega_basis(n, k, w):
    """Basis of the weight-<= w part of degree-k forms on the n-simplex."""
    if k < 0 or k > n or w < k:
        return []
    out = []
    for iset in combinations(range(1, n + 1), k):
        for e in _monomials(n, w - k):
            out.append(PolyForm(n, {(e, iset): Fraction(1)}))
    return out


class _FormBasis:
    """Indexed basis of weight-truncated k-forms at one simplex level."""

    def __init__(self, n, k, w):
        self.keys = []
        for iset in combinations(range(1, n + 1), k):
            for e in _monomials(n, w - k):
                self.keys.append((e, iset))
        self.index = {key: i for i, key in enumerate(self.keys)}
        self.dim = len(self.keys)

    def vector(self, f):
        """Coordinates of a PolyForm; None if it leaves the truncation."""
        out = [Fraction(0)] * self.dim
        for key, c in f.terms.items():
            i = self.index.get(key)
            if i is None:
                return None
            out[i] = c
        return tuple(out)


class ThElement:
    """Compatible family: per level n, a dict (form key) -> vector in A^n."""

    def __init__(self, degree, weight_cap, family):
        self.degree = degree
        self.weight_cap = weight_cap
        self.family = family


class ThModel:
    """Limit model of a truncated cosimplicial CDGA over polynomial forms.

    algebra is the resulting CDGA (degrees 0..M+1, the top degree kept so
    that degree-M cohomology is honest). layout[m] lists the direct-sum
    blocks (n, k, offset, form basis) of the ambient space in degree m, and
    kernel_basis[m] is the matrix whose columns present the degree-m piece
    inside the ambient space.
    """

    def __init__(self, source, M, w, algebra, layout, kernel_basis):
        self.source = source
        self.M = M
        self.w = w
        self.algebra = algebra
        self.layout = layout
        self.kernel_basis = kernel_basis

    def element(self, m, coords):
        """ThElement for coordinates in the degree-m basis."""
        amb = self.kernel_basis[m].apply(coords)
        a = self.source
        family = {n: {} for n in range(a.truncation + 1)}
        for (n, k, off, fb) in self.layout[m]:
            adim = a.level(n).dim(m - k)
            for fi, key in enumerate(fb.keys):
                vec = tuple(amb[off + fi * adim + x] for x in range(adim))
                if any(v != 0 for v in vec):
                    family[n][key] = vec
        return ThElement(m, self.w, family)


def _block_layout(a, m, w):
    """Ambient blocks (n, k, offset, form basis) for total degree m."""
    layout = []
    off = 0
    for n in range(a.truncation + 1):
        for k in range(min(n, m) + 1):
            j = m - k
            adim = a.level(n).dim(j)
            if adim == 0:
                continue
            fb = _FormBasis(n, k, w)
            if fb.dim == 0:
                continue
            layout.append((n, k, off, fb))
            off += fb.dim * adim
    return layout, off


def _pullback_matrix(theta, k, w, fb_src_level, fb_tgt_level):
    """Matrix of theta^* on k-forms between truncated bases.

    fb_tgt_level is the basis at theta's target (the domain of theta^*),
    fb_src_level at theta's source (the codomain).
    """
    cols = []
    for key in fb_tgt_level.keys:
        f = PolyForm(theta.target_level, {key: Fraction(1)})
        g = truncate_weight(pullback(theta, f), w)
        v = fb_src_level.vector(g)
        assert v is not None
        cols.append(v)
    return Matrix.from_columns(cols, fb_src_level.dim)


def _constraint_rows(a, m, w, layout, ambient_dim):
    """Stacked compatibility constraints over the generating simplex maps."""
    blocks = {(n, k): (off, fb) for (n, k, off, fb) in layout}
    N = a.truncation
    rows = []

    def add_generator(theta, struct):
        # constraint lives in Omega(source simplex) tensor A^{target level}
        r, s = theta.source_level, theta.target_level
        for k in range(min(r, m) + 1):
            j = m - k
            tdim = a.level(s).dim(j)
            if tdim == 0:
                continue
            fb_r = _FormBasis(r, k, w)
            if fb_r.dim == 0:
                continue
            row_block = [[Fraction(0)] * ambient_dim
                         for _ in range(fb_r.dim * tdim)]
            # (theta^* tensor id) applied to the level-s component
            if (s, k) in blocks:
                off, fb_s = blocks[(s, k)]
                pm = _pullback_matrix(theta, k, w, fb_r, fb_s)
                for ri in range(fb_r.dim):
                    for ci in range(fb_s.dim):
                        v = pm.entries[ri][ci]
                        if v == 0:
                            continue
                        for x in range(tdim):
                            row_block[ri * tdim + x][off + ci * tdim + x] += v
            # minus (id tensor A(theta)) applied to the level-r component
            if (r, k) in blocks:
                off, fb_rr = blocks[(r, k)]
                sm = struct.component(j)
                rdim = a.level(r).dim(j)
                for fi, key in enumerate(fb_rr.keys):
                    ri = fb_r.index.get(key)
                    if ri is None:
                        continue
                    for x in range(tdim):
                        for y in range(rdim):
                            v = sm.entries[x][y]
                            if v != 0:
                                row_block[ri * tdim + x][off + fi * rdim + y] -= v
            rows.extend(r for r in row_block if any(v != 0 for v in r))

    for n in range(N):
        for i in range(n + 2):
            add_generator(coface(n, i), a.coface_map(n, i))
        for i in range(n + 1):
            add_generator(codegeneracy(n, i), a.codegeneracy_map(n, i))
    return rows


def _ambient_d(a, m, w, layout_m, layout_m1, dim_m, dim_m1):
    """Differential on the ambient sum, d = d_form + (-1)^k internal d."""
    tgt = {(n, k): (off, fb) for (n, k, off, fb) in layout_m1}
    cols = [[Fraction(0)] * dim_m1 for _ in range(1)] if False else None
    out = [[Fraction(0)] * dim_m for _ in range(dim_m1)]
    for (n, k, off, fb) in layout_m:
        j = m - k
        adim = a.level(n).dim(j)
        # form differential: (n, k) -> (n, k+1), same internal degree
        if (n, k + 1) in tgt:
            toff, tfb = tgt[(n, k + 1)]
            for fi, key in enumerate(fb.keys):
                df = poly_d(PolyForm(n, {key: Fraction(1)}))
                for key2, c in df.terms.items():
                    ti = tfb.index.get(key2)
                    if ti is None:
                        continue
                    for x in range(adim):
                        out[toff + ti * adim + x][off + fi * adim + x] += c
        # internal differential with the Koszul sign (-1)^k
        if (n, k) in tgt:
            toff, tfb = tgt[(n, k)]
            dm = a.level(n).diff(j)
            sign = -1 if k % 2 else 1
            tdim = a.level(n).dim(j + 1)
            for fi, key in enumerate(fb.keys):
                ti = tfb.index.get(key)
                if ti is None:
                    continue
                for x in range(tdim):
                    for y in range(adim):
                        v = dm.entries[x][y]
                        if v != 0:
                            out[toff + ti * tdim + x][off + fi * adim + y] += sign * v
    return Matrix(out, dim_m1, dim_m)


def th(a, M, w):
    """Limit model over the generating simplex maps at levels <= N.

    Returns a ThModel whose algebra has top degree M + 1 (so that H^M is
    computed honestly); degrees <= M are the certified range. The product
    is the weight-truncated wedge, expressed in the kernel bases.
    """
    N = a.truncation
    if N < M + 1:
        raise TruncationTooSmall("need truncation >= %d, have %d" % (M + 1, N))
    if w < M + 2:
        raise ValueError("weight cap must be at least degree cap + 2")
    top = M + 1
    layouts = []
    amb_dims = []
    kernels = []
    constraints = []
    for m in range(top + 1):
        layout, dim = _block_layout(a, m, w)
        layouts.append(layout)
        amb_dims.append(dim)
        rows = _constraint_rows(a, m, w, layout, dim)
        if rows:
            cm = Matrix(rows, len(rows), dim)
            kb = kernel(cm).basis_matrix()
        else:
            cm = None
            kb = Matrix.identity(dim)
        constraints.append(cm)
        kernels.append(kb)
    dims = [kb.cols for kb in kernels]
    ds = []
    for m in range(top):
        amb = _ambient_d(a, m, w, layouts[m], layouts[m + 1],
                         amb_dims[m], amb_dims[m + 1])
        restricted = solve_matrix(kernels[m + 1], amb * kernels[m])
        if restricted is None:
            raise AssertionError("differential leaves the compatibility kernel")
        ds.append(restricted)
    cx = Complex(dims, ds)

    block_index = [{(n, k): (off, fb) for (n, k, off, fb) in lay}
                   for lay in layouts]

    def wedge_ambient(mi, vi, mj, vj):
        """Weight-truncated product of ambient vectors; degrees mi, mj."""
        mm = mi + mj
        out = [Fraction(0)] * amb_dims[mm]
        for (n, ki, offi, fbi) in layouts[mi]:
            ji = mi - ki
            adi = a.level(n).dim(ji)
            for (n2, kj, offj, fbj) in layouts[mj]:
                if n2 != n:
                    continue
                jj = mj - kj
                adj = a.level(n).dim(jj)
                tb = block_index[mm].get((n, ki + kj))
                if tb is None:
                    continue
                toff, tfb = tb
                pm = a.algebra(n).mult.get((ji, jj))
                if pm is None:
                    continue
                # Koszul sign: form part of the second factor passes the
                # internal part of the first
                sign = -1 if (ji % 2 and kj % 2) else 1
                for fi, keyi in enumerate(fbi.keys):
                    for fj, keyj in enumerate(fbj.keys):
                        prod = poly_mul(PolyForm(n, {keyi: Fraction(1)}),
                                        PolyForm(n, {keyj: Fraction(1)}))
                        for key2, c in prod.terms.items():
                            ti = tfb.index.get(key2)
                            if ti is None:
                                continue  # weight above the cap: truncated
                            for x in range(adi):
                                vx = vi[offi + fi * adi + x]
                                if vx == 0:
                                    continue
                                for y in range(adj):
                                    vy = vj[offj + fj * adj + y]
                                    if vy == 0:
                                        continue
                                    tdim = a.level(n).dim(ji + jj)
                                    for r in range(tdim):
                                        pv = pm.entries[r][x * adj + y]
                                        if pv != 0:
                                            out[toff + ti * tdim + r] += (
                                                sign * c * pv * vx * vy)
        return tuple(out)

    # Pullbacks only bound the weight from above, so the weight-truncated
    # product of two compatible families can fail compatibility. The exact
    # product is compatible at a doubled cap; here the overflow is discarded
    # canonically, by correcting along the pivot coordinates of the
    # compatibility matrix. The correction vanishes whenever the truncated
    # product is already compatible.
    pivot_data = [None] * (top + 1)

    def truncate_to_kernel(m, vec):
        coords = solve(kernels[m], vec)
        if coords is not None:
            return coords
        cm = constraints[m]
        if pivot_data[m] is None:
            _, pivots, _ = rref(cm)
            pivot_data[m] = (pivots,
                             Matrix.from_columns([cm.column(p)
                                                  for p in pivots]))
        pivots, cpiv = pivot_data[m]
        fix = solve(cpiv, cm.apply(vec))
        out = list(vec)
        for t, p in enumerate(pivots):
            out[p] -= fix[t]
        return solve(kernels[m], tuple(out))

    mult = {}
    for i in range(top + 1):
        for j in range(top + 1 - i):
            cols = []
            for bi in range(dims[i]):
                vi = kernels[i].column(bi)
                for bj in range(dims[j]):
                    vj = kernels[j].column(bj)
                    prod = wedge_ambient(i, vi, j, vj)
                    coords = truncate_to_kernel(i + j, prod)
                    cols.append(coords)
            mult[(i, j)] = (Matrix.from_columns(cols, dims[i + j]) if cols
                            else Matrix.zero(dims[i + j], dims[i] * dims[j]))

    # unit: the constant family 1 tensor unit at every level
    unit_amb = [Fraction(0)] * amb_dims[0]
    for (n, k, off, fb) in layouts[0]:
        if k != 0:
            continue
        key = ((0,) * n, ())
        fi = fb.index[key]
        adim = a.level(n).dim(0)
        uv = a.algebra(n).unit
        for x in range(adim):
            unit_amb[off + fi * adim + x] = uv[x]
    unit = solve(kernels[0], tuple(unit_amb))
    if unit is None:
        raise AssertionError("unit family is not compatible")
    augmentation = None
    if a.algebra(0).is_augmented():
        # evaluate at level 0 (the vertex) and apply the level-0 augmentation
        aug = [Fraction(0)] * dims[0]
        lay0 = block_index[0].get((0, 0))
        if lay0 is not None:
            off, fb = lay0
            fi = fb.index[((), ())]
            adim = a.level(0).dim(0)
            for b in range(dims[0]):
                col = kernels[0].column(b)
                vec = tuple(col[off + fi * adim + x] for x in range(adim))
                aug[b] = a.algebra(0).aug(vec)
        augmentation = tuple(aug)
    algebra = CDGA(cx, mult, unit, augmentation)
    return ThModel(a, M, w, algebra, layouts, kernels)


def simplex_integral(exps):
    """Integral over the n-simplex of t^a dt_1...dt_n, a_i = exps[i]."""
    n = len(exps)
    num = 1
    for e in exps:
        num *= factorial(e)
    return Fraction(num, factorial(n + sum(exps)))


def integrate(model, m, coords, norm, offsets):
    """Whitney integration of a degree-m element into the Tot_N coordinates."""
    a = model.source
    amb = model.kernel_basis[m].apply(coords)
    total_dim = (sum(norm.grid.dim(i, j) for (i, j) in offsets[m])
                 if m < len(offsets) else 0)
    out = [Fraction(0)] * total_dim
    for (n, k, off, fb) in model.layout[m]:
        if k != n:
            continue  # only top-degree forms have full-dimensional integral
        j = m - n
        if (n, j) not in offsets[m]:
            continue
        adim = a.level(n).dim(j)
        acc = [Fraction(0)] * adim
        for fi, (e, iset) in enumerate(fb.keys):
            val = simplex_integral(e)
            for x in range(adim):
                v = amb[off + fi * adim + x]
                if v != 0:
                    acc[x] += val * v
        # express in the normalized coordinates at (n, j)
        inc = norm.inclusions[(n, j)]
        nc = solve(inc, tuple(acc))
        if nc is None:
            raise AssertionError("integral leaves the normalized part")
        start = offsets[m][(n, j)]
        for r, v in enumerate(nc):
            out[start + r] += v
    return tuple(out)


def integration_map(a, M, w, model=None):
    """Whitney integration as a chain map from the limit model to Tot_N.

    Returns (ChainMap, model, tot complex truncated at degree M+1,
    normalization, offsets). The chain-map identity is checked exactly.
    """
    if model is None:
        model = th(a, M, w)
    total, norm, offsets = tot_n(a)
    top = M + 1
    tdims = [total.dim(m) for m in range(top + 1)]
    tds = [total.diff(m) for m in range(top)]
    ttrunc = Complex(tdims, tds, check=False)
    comps = {}
    for m in range(top + 1):
        cols = []
        for b in range(model.algebra.complex.dim(m)):
            coords = tuple(Fraction(int(i == b))
                           for i in range(model.algebra.complex.dim(m)))
            cols.append(integrate(model, m, coords, norm, offsets))
        comps[m] = Matrix.from_columns(cols, ttrunc.dim(m))
    f = ChainMap(model.algebra.complex, ttrunc, comps)
    return f, model, ttrunc, norm, offsets
