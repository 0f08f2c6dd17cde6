from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cdgakit.linalg import (Matrix, Subspace, rref, rank, kernel, image,
                            solve, quotient_basis, inverse, char_poly,
                            scalar_to_str, scalar_from_str, NotSubspace)

F = Fraction

scalars = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def mat(rows):
    return Matrix([[F(x) for x in r] for r in rows], len(rows),
                  len(rows[0]) if rows else 0)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(scalars, min_size=c, max_size=c),
                               min_size=r, max_size=r).map(
                lambda e: Matrix(e, r, c))))


def test_rref_small():
    m = mat([[1, 2], [2, 4]])
    r, pivots, rk = rref(m)
    assert rk == 1 and list(pivots) == [0]
    assert tuple(r.entries[0]) == (F(1), F(2))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    assert rank(m) + kernel(m).dim == m.cols


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_annihilate(m):
    k = kernel(m)
    for v in k.basis:
        assert all(x == 0 for x in m.apply(v))


@given(matrices())
@settings(max_examples=40, deadline=None)
def test_solve_consistency(m):
    # any vector in the image must be solvable, and the solution must check
    v = tuple(F(1) if i == 0 else F(0) for i in range(m.cols))
    b = m.apply(v)
    x = solve(m, b)
    assert x is not None
    assert m.apply(x) == tuple(b)


def test_subspace_canonical_form():
    s1 = Subspace(3, [(F(1), F(1), F(0)), (F(0), F(2), F(0))])
    s2 = Subspace(3, [(F(1), F(0), F(0)), (F(3), F(5), F(0))])
    assert s1.basis == s2.basis


def test_sum_intersect_dimension_formula():
    a = Subspace(3, [(F(1), F(0), F(0)), (F(0), F(1), F(0))])
    b = Subspace(3, [(F(0), F(1), F(0)), (F(0), F(0), F(1))])
    assert a.sum(b).dim + a.intersect(b).dim == a.dim + b.dim


def test_quotient_basis_and_projection():
    whole = Subspace(2, [(F(1), F(0)), (F(0), F(1))])
    line = Subspace(2, [(F(1), F(0))])
    reps, proj = quotient_basis(whole, line)
    assert len(reps) == 1
    assert proj.apply((F(5), F(7))) == proj.apply((F(0), F(7)))


def test_quotient_requires_containment():
    small = Subspace(2, [(F(1), F(0))])
    other = Subspace(2, [(F(0), F(1))])
    with pytest.raises(NotSubspace):
        quotient_basis(small, other)


def test_inverse_round_trip():
    m = mat([[2, 1], [1, 1]])
    inv = inverse(m)
    assert (inv * m).entries == Matrix.identity(2).entries


def test_char_poly_companion():
    # companion matrix of x^2 - x - 1
    m = mat([[0, 1], [1, 1]])
    assert char_poly(m) == [F(-1), F(-1), F(1)]


@given(scalars)
def test_scalar_string_round_trip(x):
    assert scalar_from_str(scalar_to_str(x)) == x


def test_scalar_strings_exact():
    assert scalar_to_str(F(-3, 4)) == "-3/4"
    assert scalar_to_str(F(2)) == "2"
    assert scalar_from_str("6/4") == F(3, 2)
