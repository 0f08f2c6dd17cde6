"""Finite-rank algebras over the Laurent-polynomial ring K[t, t^-1] with a
connection nabla = d + Gamma dt, and the multiplicative-section checker.

Scalars are Laurent polynomials stored as exponent -> Fraction maps. A
section is a unital algebra morphism to the base ring, with images
supported in a window [-W, W], compatible with the connection. The search
runs a linear stage (unit + connection compatibility, exponent-wise) and
then resolves the remaining multiplicativity constraints by parameter
substitution; every candidate is re-verified exactly before being
returned.
"""

from fractions import Fraction

import sympy

from .linalg import Matrix, kernel, solve, char_poly


class EnumerationBoundExceeded(Exception):
    """Quadratic stage would need more parameters than allowed."""

    def __init__(self, dim, bound):
        self.dim = dim
        self.bound = bound
        super().__init__("linear solution space has dimension %d > bound %d"
                         % (dim, bound))


def laurent(d=None):
    """Canonical Laurent scalar: drop zero coefficients."""
    out = {}
    for e, c in (d or {}).items():
        c = Fraction(c)
        if c != 0:
            out[int(e)] = c
    return out


def l_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, Fraction(0)) + c
    return laurent(out)


def l_scale(a, c):
    return laurent({e: v * c for e, v in a.items()})


def l_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
    return laurent(out)


def l_ddt(a):
    """Derivative d/dt: t^n -> n t^(n-1)."""
    return laurent({e - 1: e * c for e, c in a.items()})


L_ZERO = {}
L_ONE = {0: Fraction(1)}


class ConnectionAlgebra:
    """Free module of finite rank with multiplication and connection.

    mult[(i, j)] is the vector of Laurent structure scalars of e_i e_j;
    unit is a Laurent vector; gamma is the connection matrix, with
    nabla(e_i) = (column i of gamma) dt.
    """

    def __init__(self, rank, mult, unit, gamma, labels=None):
        self.rank = rank
        self.labels = list(labels) if labels else ["e%d" % i for i in range(rank)]
        self.mult = {}
        for i in range(rank):
            for j in range(rank):
                vec = mult.get((i, j), [L_ZERO] * rank)
                self.mult[(i, j)] = tuple(laurent(x) for x in vec)
        self.unit = tuple(laurent(x) for x in unit)
        self.gamma = [[laurent(gamma[r][c]) for c in range(rank)]
                      for r in range(rank)]

    def vec_product(self, v, w):
        """Product of two Laurent vectors via the structure scalars."""
        out = [L_ZERO] * self.rank
        for i in range(self.rank):
            if not v[i]:
                continue
            for j in range(self.rank):
                if not w[j]:
                    continue
                c = l_mul(v[i], w[j])
                for k in range(self.rank):
                    out[k] = l_add(out[k], l_mul(c, self.mult[(i, j)][k]))
        return tuple(out)

    def nabla(self, v):
        """dt-component of nabla applied to a Laurent vector."""
        out = []
        for r in range(self.rank):
            acc = l_ddt(v[r])
            for c in range(self.rank):
                acc = l_add(acc, l_mul(self.gamma[r][c], v[c]))
            out.append(acc)
        return tuple(out)

    def basis_vec(self, i):
        return tuple(L_ONE if j == i else L_ZERO for j in range(self.rank))


def validate(ca):
    """Algebra and connection identities as Laurent identities."""
    violations = []
    r = ca.rank
    basis = [ca.basis_vec(i) for i in range(r)]
    for i in range(r):
        for j in range(r):
            ij = ca.vec_product(basis[i], basis[j])
            ji = ca.vec_product(basis[j], basis[i])
            if ij != ji:
                violations.append("commutativity fails at (%d, %d)" % (i, j))
            for k in range(r):
                left = ca.vec_product(ij, basis[k])
                right = ca.vec_product(basis[i], ca.vec_product(basis[j], basis[k]))
                if left != right:
                    violations.append("associativity fails at (%d, %d, %d)"
                                      % (i, j, k))
    for i in range(r):
        if ca.vec_product(ca.unit, basis[i]) != basis[i]:
            violations.append("unit law fails at %d" % i)
    # Leibniz: nabla(e_i e_j) = nabla(e_i) e_j + e_i nabla(e_j)
    for i in range(r):
        for j in range(r):
            left = ca.nabla(ca.mult[(i, j)])
            ni = tuple(ca.gamma[rr][i] for rr in range(r))
            nj = tuple(ca.gamma[rr][j] for rr in range(r))
            right = tuple(l_add(a, b) for a, b in
                          zip(ca.vec_product(ni, basis[j]),
                              ca.vec_product(basis[i], nj)))
            if left != right:
                violations.append("Leibniz fails at (%d, %d)" % (i, j))
    return violations


def _linear_system(ca, W):
    """Rows and right-hand side of the linear stage.

    Unknowns: coefficient of t^n in the image of e_i, n in [-W, W], laid
    out as i * (2W + 1) + (n + W). Constraints: images satisfy
    d(phi e_i)/dt = sum_k gamma_{k i} phi(e_k), and phi(unit) = 1,
    exponent-wise over the full reachable exponent range.
    """
    r = ca.rank
    width = 2 * W + 1

    def var(i, n):
        return i * width + (n + W)

    gexps = [e for row in ca.gamma for x in row for e in x]
    uexps = [e for x in ca.unit for e in x]
    lo = -W - 1 + min(gexps + uexps + [0])
    hi = W + max(gexps + uexps + [0])
    rows = []
    rhs = []
    for i in range(r):
        for m in range(lo, hi + 1):
            row = [Fraction(0)] * (r * width)
            # d/dt of phi(e_i): n c_{i,n} at exponent n-1
            if -W <= m + 1 <= W:
                row[var(i, m + 1)] += Fraction(m + 1)
            for k in range(r):
                for e, c in ca.gamma[k][i].items():
                    n = m - e
                    if -W <= n <= W:
                        row[var(k, n)] -= c
            if any(x != 0 for x in row):
                rows.append(row)
                rhs.append(Fraction(0))
    for m in range(lo, hi + 1):
        row = [Fraction(0)] * (r * width)
        for k in range(r):
            for e, c in ca.unit[k].items():
                n = m - e
                if -W <= n <= W:
                    row[var(k, n)] += c
        if any(x != 0 for x in row) or m == 0:
            rows.append(row)
            rhs.append(Fraction(int(m == 0)))
    return Matrix(rows, len(rows), r * width), tuple(rhs), var


def _coeffs_to_section(ca, W, coeffs):
    width = 2 * W + 1
    out = []
    for i in range(ca.rank):
        out.append(laurent({n: coeffs[i * width + (n + W)]
                            for n in range(-W, W + 1)}))
    return tuple(out)


def _verify_section(ca, phi):
    """Exact check of all section identities; phi is a Laurent vector of images."""
    def apply(v):
        acc = L_ZERO
        for i in range(ca.rank):
            acc = l_add(acc, l_mul(v[i], phi[i]))
        return acc

    if apply(ca.unit) != L_ONE:
        return False
    basis = [ca.basis_vec(i) for i in range(ca.rank)]
    for i in range(ca.rank):
        if l_ddt(phi[i]) != apply(tuple(ca.gamma[k][i] for k in range(ca.rank))):
            return False
        for j in range(ca.rank):
            if l_mul(phi[i], phi[j]) != apply(ca.mult[(i, j)]):
                return False
    return True


def _exponent_diagonal(ca):
    """Every connection entry supported on exponent -1 only."""
    return all(set(x) <= {-1} for row in ca.gamma for x in row)


def _window_independent(ca, W):
    """For exponent-diagonal connections the linear stage decouples per
    exponent: (n I - G) c_n = 0 with G the exponent -1 matrix of gamma.
    The verdict is window-independent when no integer eigenvalue of G
    lies outside [-W, W]."""
    if not _exponent_diagonal(ca):
        return False
    if any(set(x) != {0} and x for x in ca.unit):
        return False
    g = Matrix([[ca.gamma[r][c].get(-1, Fraction(0)) for c in range(ca.rank)]
                for r in range(ca.rank)], ca.rank, ca.rank)
    cp = char_poly(g)
    x = sympy.symbols("x")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * x ** k
               for k, c in enumerate(cp))
    for root in sympy.roots(sympy.Poly(poly, x)):
        if root.is_integer and abs(int(root)) > W:
            return False
    return True


def section_check(ca, W, enum_bound=4):
    """Search for unital connection-compatible algebra sections.

    Returns {"sections": [...], "certificate": ...}; certificate is None
    when sections exist, "none_linear" when the failure is window
    independent, else "none_in_window(W)". Raises EnumerationBoundExceeded
    when the surviving parameter count exceeds enum_bound.
    """
    m, rhs, var = _linear_system(ca, W)
    part = solve(m, rhs)
    win_free = _window_independent(ca, W)
    none_cert = "none_linear" if win_free else "none_in_window(%d)" % W
    if part is None:
        return {"sections": [], "certificate": none_cert}
    hom = kernel(m)
    if hom.dim > enum_bound:
        raise EnumerationBoundExceeded(hom.dim, enum_bound)
    syms = sympy.symbols("l0:%d" % hom.dim) if hom.dim else ()
    width = 2 * W + 1

    def sym_coeff(idx):
        v = sympy.Rational(part[idx].numerator, part[idx].denominator)
        for a, bvec in enumerate(hom.basis):
            c = bvec[idx]
            if c != 0:
                v += syms[a] * sympy.Rational(c.numerator, c.denominator)
        return v

    # phi(e_i) as exponent -> sympy expression
    images = []
    for i in range(ca.rank):
        images.append({n: sym_coeff(i * width + (n + W))
                       for n in range(-W, W + 1)})
    equations = []
    for i in range(ca.rank):
        for j in range(i, ca.rank):
            lhs = {}
            for n1, c1 in images[i].items():
                for n2, c2 in images[j].items():
                    lhs[n1 + n2] = lhs.get(n1 + n2, 0) + c1 * c2
            rhs_l = {}
            for k in range(ca.rank):
                for e, c in ca.mult[(i, j)][k].items():
                    for n, cc in images[k].items():
                        rhs_l[e + n] = rhs_l.get(e + n, 0) + \
                            sympy.Rational(c.numerator, c.denominator) * cc
            for e in set(lhs) | set(rhs_l):
                eq = sympy.expand(lhs.get(e, 0) - rhs_l.get(e, 0))
                if eq != 0:
                    equations.append(eq)
    if not equations:
        candidates = [dict.fromkeys(syms, sympy.Integer(0))] if syms else [{}]
    elif not syms:
        candidates = [] if any(sympy.simplify(e) != 0 for e in equations) else [{}]
    else:
        sols = sympy.solve(equations, list(syms), dict=True)
        candidates = []
        for sol in sols:
            full = {s: sol.get(s, sympy.Integer(0)) for s in syms}
            if any(v.free_symbols for v in full.values()):
                # positive-dimensional family: take the zero representative
                full = {s: v.subs(dict.fromkeys(v.free_symbols, 0))
                        for s, v in full.items()}
            if all(v.is_rational for v in full.values()):
                candidates.append(full)
    sections = []
    seen = set()
    for cand in candidates:
        coeffs = []
        for idx in range(ca.rank * width):
            val = sym_coeff(idx)
            if cand:
                val = val.subs(cand)
            val = sympy.nsimplify(val, rational=True)
            coeffs.append(Fraction(int(sympy.numer(val)), int(sympy.denom(val))))
        phi = _coeffs_to_section(ca, W, coeffs)
        if not _verify_section(ca, phi):
            continue
        key = tuple(tuple(sorted(x.items())) for x in phi)
        if key not in seen:
            seen.add(key)
            sections.append(phi)
    if sections:
        return {"sections": sections, "certificate": None}
    return {"sections": [], "certificate": none_cert}


def cohomology_section_check(ca, W=2):
    """Linear-stage-only check: a horizontal splitting of the unit.

    Solves unit + connection compatibility without multiplicativity;
    existence of any solution returns True.
    """
    m, rhs, var = _linear_system(ca, W)
    return solve(m, rhs) is not None


def obstruction_instance():
    """Rank-2 algebra of 1 and an inverse square root of t.

    e1^2 = e0 / t and Gamma = diag(0, -1/(2t)); the section obstruction is
    decided at the linear stage (n c_n = -c_n / 2 kills every coefficient
    of the e1 image) and is window-independent.
    """
    F = Fraction
    mult = {
        (0, 0): [laurent({0: F(1)}), L_ZERO],
        (0, 1): [L_ZERO, laurent({0: F(1)})],
        (1, 0): [L_ZERO, laurent({0: F(1)})],
        (1, 1): [laurent({-1: F(1)}), L_ZERO],
    }
    unit = [laurent({0: F(1)}), L_ZERO]
    gamma = [[L_ZERO, L_ZERO], [L_ZERO, laurent({-1: F(-1, 2)})]]
    return ConnectionAlgebra(2, mult, unit, gamma)
