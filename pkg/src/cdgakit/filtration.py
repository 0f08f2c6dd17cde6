"""Filtered complexes, convolution with the simplicial-degree filtration,
spectral sequences, Frobenius structures, purity and mixedness checks.

Increasing filtrations are the only supported convention: W_{p_min} <= ...
<= W_{p_max} = everything, d(W_p) <= W_p. For a decreasing filtration F^p
use W_p := F^{-p}. The spectral sequence of an increasing filtration has
d_r : E_r^{p,q} -> E_r^{p-r, q+r+1}.
"""

from fractions import Fraction

from .linalg import (Matrix, Subspace, kernel, image, preimage, quotient_basis,
                     rank, char_poly, solve)
from .complexes import Complex, cohomology
from .cosimplicial import tot_n


class IncompatibleFiltration(Exception):
    pass


class NotFiltered(Exception):
    pass


class FilteredComplex:
    """Complex with an increasing exhaustive filtration by subcomplexes.

    filtration[deg] is the list of Subspaces W_{p_min}..W_{p_max} of C^deg.
    Below p_min the filtration is zero, at p_max it is everything.
    """

    def __init__(self, complex_, filtration, p_min, p_max, check=True):
        if p_max < p_min:
            raise ValueError("empty filtration range")
        self.complex = complex_
        self.p_min = p_min
        self.p_max = p_max
        self.filtration = {}
        for deg in complex_.degrees():
            chain = filtration.get(deg)
            if chain is None:
                chain = [Subspace.full(complex_.dim(deg))] * (p_max - p_min + 1)
            if len(chain) != p_max - p_min + 1:
                raise ValueError("filtration chain at degree %d has wrong "
                                 "length" % deg)
            self.filtration[deg] = list(chain)
        if check:
            bad = self.violations()
            if bad:
                raise ValueError("not a filtered complex: " + bad[0])

    def w(self, p, deg):
        n = self.complex.dim(deg)
        if p < self.p_min or deg not in self.filtration:
            return Subspace.zero(n) if p < self.p_min else Subspace.full(n)
        if p >= self.p_max:
            return Subspace.full(n)
        return self.filtration[deg][p - self.p_min]

    def violations(self):
        bad = []
        c = self.complex
        for deg in c.degrees():
            chain = self.filtration[deg]
            if chain[-1].dim != c.dim(deg):
                bad.append("filtration at degree %d is not exhaustive" % deg)
            for i in range(len(chain) - 1):
                if not chain[i + 1].contains_subspace(chain[i]):
                    bad.append("filtration at degree %d is not increasing "
                               "at step %d" % (deg, self.p_min + i))
            d = c.diff(deg)
            for i, s in enumerate(chain):
                for v in s.basis:
                    if not self.w(self.p_min + i, deg + 1).contains(d.apply(v)) \
                            and deg < c.top:
                        bad.append("d does not preserve W_%d at degree %d"
                                   % (self.p_min + i, deg))
                        break
        return bad


class FilteredCDGA:
    """CDGA with a multiplicative filtration on its complex."""

    def __init__(self, algebra, filtered, check=True):
        assert filtered.complex is algebra.complex or \
            filtered.complex.dims == algebra.complex.dims
        self.algebra = algebra
        self.filtered = filtered
        if check:
            bad = self.violations()
            if bad:
                raise ValueError("not multiplicative: " + bad[0])

    def violations(self):
        bad = []
        a = self.algebra
        fc = self.filtered
        for i in range(a.top + 1):
            for j in range(a.top + 1 - i):
                for p in range(fc.p_min, fc.p_max + 1):
                    for q in range(fc.p_min, fc.p_max + 1):
                        tgt = fc.w(p + q, i + j)
                        for x in fc.w(p, i).basis:
                            for y in fc.w(q, j).basis:
                                prod = a.product(i, x, j, y)
                                if prod is not None and not tgt.contains(prod):
                                    bad.append("W_%d * W_%d escapes W_%d at "
                                               "degrees (%d,%d)"
                                               % (p, q, p + q, i, j))
        return bad


class FrobStructure:
    """Per-degree invertible operator commuting with d, with its q."""

    def __init__(self, q, operators, complex_=None, check=True):
        self.q = q
        self.operators = dict(operators)
        if check and complex_ is not None:
            for deg in complex_.degrees():
                m = self.operator(deg, complex_.dim(deg))
                if m.rows != complex_.dim(deg) or m.cols != m.rows:
                    raise ValueError("operator at degree %d has wrong shape" % deg)
                if rank(m) != m.rows:
                    raise ValueError("operator at degree %d is singular" % deg)
            for deg in complex_.degrees():
                lhs = self.operator(deg + 1, complex_.dim(deg + 1)) * complex_.diff(deg)
                rhs = complex_.diff(deg) * self.operator(deg, complex_.dim(deg))
                if not (lhs - rhs).is_zero():
                    raise ValueError("operator does not commute with d at "
                                     "degree %d" % deg)

    def operator(self, deg, dim=None):
        m = self.operators.get(deg)
        if m is None:
            assert dim is not None
            return Matrix.identity(dim)
        return m


def graded_pieces(fc):
    """Graded pieces Gr_p = W_p / W_{p-1} with induced differentials.

    Returns a dict p -> (Complex, reps, projs) where reps[deg] are ambient
    representatives and projs[deg] maps ambient vectors supported on W_p to
    Gr coordinates.
    """
    c = fc.complex
    out = {}
    for p in range(fc.p_min, fc.p_max + 1):
        dims = []
        reps = {}
        projs = {}
        for deg in c.degrees():
            r, pr = quotient_basis(fc.w(p, deg), fc.w(p - 1, deg))
            reps[deg] = r
            projs[deg] = pr
            dims.append(len(r))
        ds = []
        degs = list(c.degrees())
        for deg in degs[:-1]:
            cols = [projs[deg + 1].apply(c.diff(deg).apply(v))
                    for v in reps[deg]]
            ds.append(Matrix.from_columns(cols, len(reps[deg + 1])))
        out[p] = (Complex(dims, ds, c.lower_bound), reps, projs)
    return out


def convolution(c, inner):
    """Convolution of the simplicial-degree filtration with level filtrations.

    c is a cosimplicial module, inner a list of FilteredComplex per level.
    The simplicial-degree filtration is generated automatically; the level-i
    summand of (D*W)_p carries the inner filtration index p + i, the unique
    assignment making the result a filtration by subcomplexes (the
    coboundary raises the level while preserving the inner index).

    Returns (FilteredComplex on Tot_N, total, normalization, offsets).
    """
    N = c.truncation
    if len(inner) != N + 1:
        raise ValueError("need one inner filtration per level")
    # compatibility: generators preserve each inner W_p
    for n in range(N):
        for i in range(n + 2):
            _check_map_filtered(c.coface_map(n, i), inner[n], inner[n + 1],
                               "coface (%d,%d)" % (n, i))
        for i in range(n + 1):
            _check_map_filtered(c.codegeneracy_map(n, i), inner[n + 1], inner[n],
                               "codegeneracy (%d,%d)" % (n, i))
    total, norm, offsets = tot_n(c)
    p_min = min(inner[i].p_min - i for i in range(N + 1))
    p_max = max(inner[i].p_max - i for i in range(N + 1))
    filtration = {}
    for m in range(total.lower_bound, total.top + 1):
        chain = []
        for p in range(p_min, p_max + 1):
            cols = []
            for (i, j), start in offsets[m].items():
                inc = norm.inclusions[(i, j)]
                sub = image(inc).intersect(inner[i].w(p + i, j))
                for v in sub.basis:
                    coords = solve(inc, v)
                    vec = [Fraction(0)] * total.dim(m)
                    for r, x in enumerate(coords):
                        vec[start + r] = x
                    cols.append(tuple(vec))
            chain.append(Subspace(total.dim(m), cols))
        filtration[m] = chain
    fc = FilteredComplex(total, filtration, p_min, p_max)
    return fc, total, norm, offsets


def _check_map_filtered(f, src, tgt, label):
    for deg in src.complex.degrees():
        m = f.component(deg)
        for p in range(src.p_min, src.p_max + 1):
            t = tgt.w(p, deg)
            for v in src.w(p, deg).basis:
                if not t.contains(m.apply(v)):
                    raise IncompatibleFiltration(
                        "%s does not preserve W_%d at degree %d"
                        % (label, p, deg))


class SpectralPage:
    """One page of the spectral sequence of an increasing filtration.

    entries[(p, q)] is the dimension of E_r^{p,q}; presentations[(p, q)]
    holds (reps, projection, Z) with ambient representatives; the
    differential d_r maps (p, q) to (p - r, q + r + 1).
    """

    def __init__(self, r, entries, presentations, differentials):
        self.r = r
        self.entries = entries
        self.presentations = presentations
        self.differentials = differentials

    def dim(self, p, q):
        return self.entries.get((p, q), 0)

    def differential(self, p, q):
        return self.differentials.get((p, q))

    def is_degenerate(self):
        return all(m.is_zero() for m in self.differentials.values())

    def total_dims(self):
        """Dimension per total degree n = p + q."""
        out = {}
        for (p, q), d in self.entries.items():
            out[p + q] = out.get(p + q, 0) + d
        return out


def spectral_sequence(fc, r_max):
    """Pages E_0..E_{r_max}; E_{r+1} = H(E_r) is checked by recomputation."""
    c = fc.complex
    degs = list(c.degrees())
    prange = range(fc.p_min, fc.p_max + 1)

    def zspace(r, p, n):
        # Z_r^{p,n} = W_p C^n cap d^{-1}(W_{p-r} C^{n+1}); r = -1 means W_p
        if n < c.lower_bound or n > c.top:
            return Subspace.zero(c.dim(n) if 0 <= n else 0)
        wp = fc.w(p, n)
        if r < 0:
            return wp
        return wp.intersect(preimage(c.diff(n), fc.w(p - r, n + 1)))

    pages = []
    for r in range(r_max + 1):
        entries = {}
        presentations = {}
        differentials = {}
        for n in degs:
            for p in prange:
                z = zspace(r, p, n)
                b = zspace(r - 1, p - 1, n)
                dz_src = zspace(r - 1, p + r - 1, n - 1)
                bcols = list(b.basis)
                if n - 1 >= c.lower_bound:
                    for v in dz_src.basis:
                        bcols.append(c.diff(n - 1).apply(v))
                bsub = Subspace(c.dim(n), bcols).intersect(z)
                reps, proj = quotient_basis(z, bsub)
                q = n - p
                if reps:
                    entries[(p, q)] = len(reps)
                presentations[(p, q)] = (reps, proj, z)
        for (p, q), dim in entries.items():
            n = p + q
            reps, _, _ = presentations[(p, q)]
            tgt = presentations.get((p - r, q + r + 1))
            tdim = entries.get((p - r, q + r + 1), 0)
            cols = []
            for v in reps:
                w = c.diff(n).apply(v)
                if tdim and tgt is not None:
                    cols.append(tgt[1].apply(w))
                else:
                    cols.append(tuple())
            differentials[(p, q)] = Matrix.from_columns(cols, tdim)
        pages.append(SpectralPage(r, entries, presentations, differentials))
    _check_page_recomputation(pages)
    return pages


def _check_page_recomputation(pages):
    for r in range(len(pages) - 1):
        er, er1 = pages[r], pages[r + 1]
        spots = set(er.entries) | set(er1.entries)
        for (p, q) in spots:
            d_out = er.differentials.get((p, q))
            out_rank = rank(d_out) if d_out is not None and d_out.cols else 0
            d_in = er.differentials.get((p + er.r, q - er.r - 1))
            in_rank = rank(d_in) if d_in is not None and d_in.cols else 0
            expected = er.dim(p, q) - out_rank - in_rank
            if er1.dim(p, q) != expected:
                raise AssertionError(
                    "page recomputation mismatch at r=%d (p,q)=(%d,%d)"
                    % (r, p, q))


def is_er_quasi_iso(f, src_fc, tgt_fc, r, r_max_extra=0):
    """True iff f induces isomorphisms on every spot of page r + 1."""
    for deg in f.source.degrees():
        m = f.component(deg)
        for p in range(src_fc.p_min, src_fc.p_max + 1):
            t = tgt_fc.w(p, deg)
            for v in src_fc.w(p, deg).basis:
                if not t.contains(m.apply(v)):
                    raise NotFiltered("map does not preserve W_%d at degree %d"
                                      % (p, deg))
    sp = spectral_sequence(src_fc, r + 1)[r + 1]
    tp = spectral_sequence(tgt_fc, r + 1)[r + 1]
    spots = set(sp.entries) | set(tp.entries)
    for (p, q) in spots:
        sdim, tdim = sp.dim(p, q), tp.dim(p, q)
        if sdim != tdim:
            return False
        if sdim == 0:
            continue
        reps, _, _ = sp.presentations[(p, q)]
        proj = tp.presentations[(p, q)][1]
        cols = [proj.apply(f.component(p + q).apply(v)) for v in reps]
        if rank(Matrix.from_columns(cols, tdim)) != tdim:
            return False
    return True


class PurityVerdict:
    def __init__(self, verdict, detail):
        self.verdict = verdict  # "pure" | "impure" | "undecided"
        self.detail = detail

    def __repr__(self):
        return "PurityVerdict(%r, %r)" % (self.verdict, self.detail)


def purity_check(phi, q, w, precision=30):
    """Purity of an invertible operator at weight w.

    pure: all eigenvalues are +-q^{w/2} exactly (Tate type; for odd w this
    means the characteristic polynomial is a power of x^2 - q^w).
    impure: the Weil functional equation x^d P(q^w/x) = +-q^{wd/2} P(x)
    fails (a necessary condition for weight-w purity).
    undecided: otherwise, with float estimates of the root moduli.
    """
    d = phi.rows
    if d == 0:
        return PurityVerdict("pure", "zero space")
    coeffs = char_poly(phi)
    qw = Fraction(q) ** w
    # Tate-type decision
    if w % 2 == 0:
        s = _exact_sqrt(qw)
    else:
        s = None
    if s is not None:
        rem = list(coeffs)
        mult_plus = _root_multiplicity(rem, s)
        mult_minus = _root_multiplicity(rem, -s)
        if mult_plus + mult_minus == d:
            return PurityVerdict("pure", "eigenvalues %s^%d, -%s^... "
                                 "multiplicities (%d, %d)"
                                 % (q, w // 2, q, mult_plus, mult_minus))
    else:
        # odd weight: check P = (x^2 - q^w)^{d/2}
        if d % 2 == 0 and _is_power_of_quadratic(coeffs, qw):
            return PurityVerdict("pure", "char poly = (x^2 - q^%d)^%d"
                                 % (w, d // 2))
    # Weil functional equation, cross-multiplied to stay rational
    for a in range(d + 1):
        for b in range(d + 1):
            lhs = coeffs[d - a] * (qw ** (d - a)) * coeffs[b]
            rhs = coeffs[d - b] * (qw ** (d - b)) * coeffs[a]
            if lhs != rhs:
                return PurityVerdict(
                    "impure", "functional equation fails at coefficients "
                    "(%d, %d)" % (a, b))
    # squared-magnitude consistency: c_{d-a}^2 q^{w(d-a)*...} vs q^{wd} c_a^2
    for a in range(d + 1):
        lhs = coeffs[d - a] ** 2 * qw ** (d - a)
        rhs = coeffs[a] ** 2 * qw ** a
        if lhs != rhs:
            return PurityVerdict(
                "impure", "functional equation fails at coefficient %d" % a)
    moduli = _root_moduli(coeffs, precision)
    target = float(qw) ** 0.5
    return PurityVerdict("undecided",
                         "root moduli %s vs target %.6g"
                         % (["%.6g" % m for m in moduli], target))


def _exact_sqrt(x):
    x = Fraction(x)
    if x < 0:
        return None
    from math import isqrt
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _root_multiplicity(coeffs, root):
    """Multiplicity of a rational root of the polynomial, low-to-high coeffs."""
    mult = 0
    cur = list(coeffs)
    while len(cur) > 1:
        if sum(c * root ** i for i, c in enumerate(cur)) != 0:
            break
        # synthetic division by (x - root)
        out = [Fraction(0)] * (len(cur) - 1)
        acc = cur[-1]
        for i in range(len(cur) - 2, -1, -1):
            out[i] = acc
            acc = cur[i] + acc * root
        cur = out
        mult += 1
    return mult


def _is_power_of_quadratic(coeffs, qw):
    """Whether the polynomial equals (x^2 - qw)^{d/2}."""
    d = len(coeffs) - 1
    half = d // 2
    from math import comb
    target = [Fraction(0)] * (d + 1)
    for k in range(half + 1):
        target[2 * k] = Fraction(comb(half, k)) * ((-qw) ** (half - k))
    return list(coeffs) == target


def _root_moduli(coeffs, precision):
    import numpy
    arr = [float(c) for c in reversed(coeffs)]
    roots = numpy.roots(arr)
    return sorted(abs(complex(z)) for z in roots)


class MixednessReport:
    def __init__(self, verdict, spots):
        self.verdict = verdict  # "mixed" | "not_mixed" | "undecided"
        self.spots = spots      # dict (p, q) -> PurityVerdict

    def is_mixed(self):
        return self.verdict == "mixed"


def mixedness_check(fc, frob):
    """Purity of H^{p-q}(Gr_p) at weight q = p - (cohomological degree).

    fc is a FilteredComplex (or FilteredCDGA, whose complex is used); frob
    must preserve the filtration. Verdict is mixed when every nonvanishing
    spot is pure, not_mixed when some spot is impure, undecided otherwise.
    """
    if isinstance(fc, FilteredCDGA):
        fc = fc.filtered
    c = fc.complex
    for deg in c.degrees():
        m = frob.operator(deg, c.dim(deg))
        for p in range(fc.p_min, fc.p_max + 1):
            w = fc.w(p, deg)
            for v in w.basis:
                if not w.contains(m.apply(v)):
                    raise NotFiltered("Frobenius does not preserve W_%d at "
                                      "degree %d" % (p, deg))
    spots = {}
    overall = "mixed"
    pieces = graded_pieces(fc)
    for p, (gr, reps, projs) in pieces.items():
        h = cohomology(gr)
        for deg, hd in h.items():
            if hd.dim == 0:
                continue
            # induced Frobenius on H^deg(Gr_p)
            phi_amb = frob.operator(deg, c.dim(deg))
            cols = []
            for hv in hd.reps:
                # lift the Gr class to the ambient space, apply phi, project
                avec = tuple(sum(x * reps[deg][i][row] for i, x in enumerate(hv))
                             for row in range(c.dim(deg)))
                grc = projs[deg].apply(phi_amb.apply(avec))
                cols.append(hd.projection.apply(grc))
            phi_h = Matrix.from_columns(cols, hd.dim)
            qweight = p - deg
            verdict = purity_check(phi_h, frob.q, qweight)
            spots[(p, qweight)] = verdict
            if verdict.verdict == "impure":
                overall = "not_mixed"
            elif verdict.verdict == "undecided" and overall == "mixed":
                overall = "undecided"
    return MixednessReport(overall, spots)
