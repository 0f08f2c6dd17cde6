"""Reduced bar construction of augmented algebras, the Hopf structure on
H^0, indecomposables, and homotopy-group extraction.

Words [a_1|...|a_l] are built from a basis of the augmentation ideal, each
letter suspended down by one; the differential is the sum of the internal
part (letter-wise d) and the external part (adjacent multiplication), with
the classical signs. d^2 = 0 is asserted on construction within the caps.
"""

from fractions import Fraction
from itertools import combinations

from .linalg import Matrix, Subspace, kernel, solve, quotient_basis, rank
from .complexes import Complex, cohomology


class NotAugmented(Exception):
    pass


class NotConnected(Exception):
    pass


class _AugIdeal:
    """Basis of the augmentation ideal, degree-wise, with coordinates.

    In degree 0 the ideal is ker(augmentation); in positive degrees it is
    everything. Letters are stored as ambient vectors of the source.
    """

    def __init__(self, a):
        if not a.is_augmented():
            raise NotAugmented("bar construction needs an augmentation")
        self.a = a
        self.basis = {}
        self.coords = {}
        k0 = kernel(Matrix([list(a.augmentation)], 1, a.dim(0)))
        self.basis[0] = list(k0.basis)
        self._k0 = k0
        for k in range(1, a.top + 1):
            self.basis[k] = [tuple(Fraction(int(i == j)) for i in range(a.dim(k)))
                             for j in range(a.dim(k))]

    def dim(self, k):
        return len(self.basis.get(k, []))

    def coordinates(self, k, vec):
        """Coordinates of an ideal element in the stored basis."""
        if k == 0:
            c = self._k0.coordinates(vec)
            if c is None:
                raise ValueError("vector is not in the augmentation ideal")
            return c
        return tuple(vec)


class BarComplex:
    """Reduced bar complex of an augmented algebra, words of length <= L.

    Basis words are tuples of letters (k, i): degree-k letter number i of
    the augmentation ideal. The word degree is sum of (k - 1).
    """

    def __init__(self, a, L):
        self.source = a
        self.L = L
        self.ideal = _AugIdeal(a)
        h0 = cohomology(a.complex)[0]
        if h0.dim != 1:
            raise NotConnected("dim H^0 = %d, need 1" % h0.dim)
        words = [()]
        frontier = [()]
        for _ in range(L):
            new = []
            for wd in frontier:
                for k in range(a.top + 1):
                    for i in range(self.ideal.dim(k)):
                        new.append(wd + ((k, i),))
            words.extend(new)
            frontier = new
        by_degree = {}
        for wd in words:
            deg = sum(k - 1 for (k, i) in wd)
            by_degree.setdefault(deg, []).append(wd)
        self.degrees = sorted(by_degree)
        self.words = {deg: sorted(by_degree[deg]) for deg in self.degrees}
        self.index = {deg: {wd: i for i, wd in enumerate(ws)}
                      for deg, ws in self.words.items()}
        lb = self.degrees[0]
        top = self.degrees[-1]
        dims = [len(self.words.get(deg, [])) for deg in range(lb, top + 1)]
        ds = []
        for deg in range(lb, top):
            ds.append(self._differential_matrix(deg))
        self.complex = Complex(dims, ds, lower_bound=lb)

    def word_degree(self, wd):
        return sum(k - 1 for (k, i) in wd)

    def _letter_vec(self, k, i):
        return self.ideal.basis[k][i]

    def _emit(self, out, deg1, wd, coeff):
        idx = self.index.get(deg1, {}).get(wd)
        if idx is None:
            return
        out[idx] = out.get(idx, Fraction(0)) + coeff

    def _differential_word(self, wd):
        """Image of a basis word as {target word: coefficient}."""
        a = self.source
        out = {}
        deg1 = self.word_degree(wd) + 1
        # internal part: differentiate one letter
        for pos in range(len(wd)):
            k, i = wd[pos]
            sign = (-1) ** sum(kk - 1 for (kk, _) in wd[:pos])
            dv = a.complex.diff(k).apply(self._letter_vec(k, i))
            if all(x == 0 for x in dv):
                continue
            coords = self.ideal.coordinates(k + 1, dv)
            for j, c in enumerate(coords):
                if c != 0:
                    nw = wd[:pos] + ((k + 1, j),) + wd[pos + 1:]
                    self._emit(out, deg1, nw, -sign * c)
        # external part: multiply adjacent letters
        for pos in range(len(wd) - 1):
            k1, i1 = wd[pos]
            k2, i2 = wd[pos + 1]
            if k1 + k2 > a.top:
                continue
            sign = (-1) ** sum(kk - 1 for (kk, _) in wd[:pos + 1])
            prod = a.product(k1, self._letter_vec(k1, i1),
                             k2, self._letter_vec(k2, i2))
            if prod is None or all(x == 0 for x in prod):
                continue
            coords = self.ideal.coordinates(k1 + k2, prod)
            for j, c in enumerate(coords):
                if c != 0:
                    nw = wd[:pos] + ((k1 + k2, j),) + wd[pos + 2:]
                    self._emit(out, deg1, nw, -sign * c)
        return out

    def _differential_matrix(self, deg):
        src = self.words.get(deg, [])
        tgt = self.words.get(deg + 1, [])
        cols = []
        for wd in src:
            img = self._differential_word(wd)
            vec = [Fraction(0)] * len(tgt)
            for idx, c in img.items():
                vec[idx] = c
            cols.append(tuple(vec))
        return Matrix.from_columns(cols, len(tgt))

    def vector_of_words(self, terms):
        """Vector in a bar degree from {word: coefficient}; single degree."""
        degs = {self.word_degree(wd) for wd in terms}
        assert len(degs) == 1
        deg = degs.pop()
        vec = [Fraction(0)] * len(self.words[deg])
        for wd, c in terms.items():
            vec[self.index[deg][wd]] += c
        return deg, tuple(vec)


def bar(a, L):
    return BarComplex(a, L)


def _suspended(wd):
    return [k - 1 for (k, i) in wd]


def shuffle_words(b, w1, w2):
    """Shuffle product of two basis words as {word: coefficient}.

    Koszul signs use the suspended letter degrees.
    """
    p, q = len(w1), len(w2)
    d1, d2 = _suspended(w1), _suspended(w2)
    out = {}
    for positions in combinations(range(p + q), p):
        posset = set(positions)
        word = []
        i1 = i2 = 0
        sign = 1
        placed2 = 0  # parity count of odd suspended w2 letters placed so far
        for slot in range(p + q):
            if slot in posset:
                # w1 letter jumps over all earlier-placed w2 letters
                if d1[i1] % 2 and placed2 % 2:
                    sign = -sign
                word.append(w1[i1])
                i1 += 1
            else:
                placed2 += d2[i2] % 2
                word.append(w2[i2])
                i2 += 1
        wd = tuple(word)
        out[wd] = out.get(wd, Fraction(0)) + sign
    return out


class HopfH0:
    """H^0 of a bar complex with shuffle product and deconcatenation.

    reps are cocycle representatives as word-coefficient dicts; product and
    coproduct are returned in H^0 coordinates.
    """

    def __init__(self, b):
        self.bar = b
        h = cohomology(b.complex)
        self.h0 = h.get(0)
        self.dim = self.h0.dim if self.h0 else 0
        self.words0 = b.words.get(0, [])

    def rep_words(self, idx):
        vec = self.h0.reps[idx]
        return {wd: c for wd, c in zip(self.words0, vec) if c != 0}

    def counit(self, coords):
        """Coefficient of the empty word."""
        val = Fraction(0)
        for i, c in enumerate(coords):
            rep = self.h0.reps[i]
            j = self.bar.index[0].get(())
            if j is not None:
                val += c * rep[j]
        return val

    def unit_coords(self):
        deg, vec = self.bar.vector_of_words({(): Fraction(1)})
        return self.h0.projection.apply(vec)

    def product(self, i, j):
        """Shuffle product of basis classes i, j in H^0 coordinates."""
        out = {}
        for w1, c1 in self.rep_words(i).items():
            for w2, c2 in self.rep_words(j).items():
                if len(w1) + len(w2) > self.bar.L:
                    continue  # beyond the word cap: truncated
                for wd, s in shuffle_words(self.bar, w1, w2).items():
                    out[wd] = out.get(wd, Fraction(0)) + c1 * c2 * s
        vec = [Fraction(0)] * len(self.words0)
        for wd, c in out.items():
            vec[self.bar.index[0][wd]] += c
        return self.h0.projection.apply(tuple(vec))

    def coproduct(self, i):
        """Deconcatenation in H^0 (x) H^0 coordinates (flattened matrix)."""
        out = {}
        for wd, c in self.rep_words(i).items():
            for cut in range(len(wd) + 1):
                left, right = wd[:cut], wd[cut:]
                if self.bar.word_degree(left) != 0 or \
                        self.bar.word_degree(right) != 0:
                    continue
                out[(left, right)] = out.get((left, right), Fraction(0)) + c
        result = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        lvec = {}
        for (left, right), c in out.items():
            vl = [Fraction(0)] * len(self.words0)
            vl[self.bar.index[0][left]] = Fraction(1)
            vr = [Fraction(0)] * len(self.words0)
            vr[self.bar.index[0][right]] = Fraction(1)
            cl = self.h0.projection.apply(tuple(vl))
            cr = self.h0.projection.apply(tuple(vr))
            for x, a in enumerate(cl):
                for y, bb in enumerate(cr):
                    result[x][y] += c * a * bb
        return Matrix(result, self.dim, self.dim)

    def rep_length(self, idx):
        """Longest word appearing in the stored representative."""
        words = self.rep_words(idx)
        return max((len(wd) for wd in words), default=0)

    def primitives(self, max_length=None):
        """Primitive functionals of the dual Hopf algebra, by elimination.

        A functional is primitive when it kills 1 and every product of two
        counit-zero elements; this is the dual of the indecomposables of
        the shuffle algebra. Only pairs whose representatives multiply
        within the word cap impose conditions; max_length restricts the
        support to classes represented in word length <= max_length.
        """
        if self.dim == 0:
            return Subspace.zero(0)
        eps = [self.counit(tuple(Fraction(int(t == i)) for t in range(self.dim)))
               for i in range(self.dim)]
        support = [i for i in range(self.dim)
                   if max_length is None or self.rep_length(i) <= max_length]
        rows = []
        # lambda(x) = 0 for x = unit
        unit = self.unit_coords()
        rows.append([unit[i] for i in support])
        # lambda(ab) = 0 for a, b counit-zero basis-class combinations:
        # impose lambda((e_i - eps_i 1)(e_j - eps_j 1)) = 0
        for i in range(self.dim):
            for j in range(self.dim):
                if self.rep_length(i) + self.rep_length(j) > self.bar.L:
                    continue
                p = list(self.product(i, j))
                for t in range(self.dim):
                    p[t] -= eps[j] * Fraction(int(t == i))
                    p[t] -= eps[i] * Fraction(int(t == j))
                    p[t] += eps[i] * eps[j] * unit[t]
                rows.append([p[t] for t in support])
        m = Matrix(rows, len(rows), len(support))
        sol = kernel(m)
        # re-embed into full dual coordinates
        emb = []
        for v in sol.basis:
            full = [Fraction(0)] * self.dim
            for pos, i in enumerate(support):
                full[i] = v[pos]
            emb.append(tuple(full))
        return Subspace(self.dim, emb)


def h0_hopf(b):
    return HopfH0(b)


def indecomposables(a):
    """Augmentation-ideal-mod-squares, degree-wise, with projections.

    Works for any augmented algebra presented as a CDGA (in particular the
    shuffle algebra on bar cohomology assembled by pi_n). Returns a dict
    degree -> (dim, reps, projection).
    """
    if not a.is_augmented():
        raise NotAugmented("indecomposables need an augmentation")
    ideal = _AugIdeal(a)
    out = {}
    for k in range(a.top + 1):
        amb = a.dim(k)
        ibasis = Subspace(amb, ideal.basis.get(k, []))
        prods = []
        for i in range(k + 1):
            j = k - i
            for x in ideal.basis.get(i, []):
                for y in ideal.basis.get(j, []):
                    p = a.product(i, x, j, y)
                    if p is not None and any(v != 0 for v in p):
                        prods.append(p)
        sq = Subspace(amb, prods)
        reps, proj = quotient_basis(ibasis, sq)
        out[k] = (len(reps), reps, proj)
    return out


def bar_h_algebra(b, degree_cap):
    """Cohomology of the bar complex as a shuffle CDGA in degrees 0..cap.

    Negative bar degrees are excluded; the shuffle product of nonnegative
    degrees never lands in them. Representative independence of the induced
    product is checked.
    """
    from .cdga import CDGA
    h = cohomology(b.complex)
    dims = [h[deg].dim if deg in h else 0 for deg in range(degree_cap + 1)]

    def shuffle_vec(i, vi, j, vj):
        out = {}
        wi = b.words.get(i, [])
        wj = b.words.get(j, [])
        for w1, c1 in zip(wi, vi):
            if c1 == 0:
                continue
            for w2, c2 in zip(wj, vj):
                if c2 == 0:
                    continue
                if len(w1) + len(w2) > b.L:
                    continue
                for wd, s in shuffle_words(b, w1, w2).items():
                    out[wd] = out.get(wd, Fraction(0)) + c1 * c2 * s
        vec = [Fraction(0)] * len(b.words.get(i + j, []))
        for wd, c in out.items():
            vec[b.index[i + j][wd]] += c
        return tuple(vec)

    mult = {}
    for i in range(degree_cap + 1):
        for j in range(degree_cap + 1 - i):
            m = [[Fraction(0)] * (dims[i] * dims[j]) for _ in range(dims[i + j])]
            for x in range(dims[i]):
                for y in range(dims[j]):
                    p = shuffle_vec(i, h[i].reps[x], j, h[j].reps[y])
                    coords = h[i + j].projection.apply(p)
                    for r, v in enumerate(coords):
                        m[r][x * dims[j] + y] = v
            mult[(i, j)] = Matrix(m, dims[i + j], dims[i] * dims[j])
    deg0, unit_vec = b.vector_of_words({(): Fraction(1)})
    unit = h[0].projection.apply(unit_vec)
    aug = []
    j = b.index[0].get(())
    for x in range(dims[0]):
        aug.append(h[0].reps[x][j] if j is not None else Fraction(0))
    cx = Complex(dims, [Matrix.zero(dims[k + 1], dims[k])
                        for k in range(degree_cap)])
    return CDGA(cx, mult, unit, tuple(aug)), h


def pi_n(a, n, L):
    """Dual of the degree-(n-1) indecomposables of bar cohomology.

    Returns (dimension, dual basis labels, data) where data records the
    word cap used.
    """
    assert n >= 2
    b = bar(a, L)
    halg, h = bar_h_algebra(b, n - 1)
    q = indecomposables(halg)
    dim, reps, proj = q.get(n - 1, (0, [], None))
    labels = ["xi_%d" % i for i in range(dim)]
    return dim, labels, {"word_cap": L, "bar_degree": n - 1, "reps": reps,
                         "projection": proj, "bar": b}
