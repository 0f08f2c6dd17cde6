from fractions import Fraction
from itertools import product as iproduct
from math import factorial

import pytest

from cdgakit.linalg import Matrix
from cdgakit.complexes import betti, is_quasi_iso
from cdgakit.cdga import ground_field, validate
from cdgakit.cosimplicial import (coface, codegeneracy, constant_cosimplicial,
                                  dold_kan_D, tot_n, TruncationTooSmall)
from cdgakit.thomsullivan import (PolyForm, poly_mul, poly_d, pullback,
                                  simplex_integral, th, integration_map)

from conftest import sphere_even, acyclic_zero, random_cdga

F = Fraction


def t(level, i):
    return PolyForm.variable(level, i)


def test_poly_d_squared_zero():
    f = poly_mul(t(2, 1), poly_mul(t(2, 1), t(2, 2)))  # t1^2 t2
    assert poly_d(poly_d(f)).is_zero()


def test_wedge_anticommutes():
    dt1 = poly_d(t(2, 1))
    dt2 = poly_d(t(2, 2))
    assert poly_mul(dt1, dt2) == poly_mul(dt2, dt1).scale(-1)
    assert poly_mul(dt1, dt1).is_zero()


def test_leibniz_for_forms():
    f = poly_mul(t(2, 1), t(2, 2))
    g = t(2, 1)
    lhs = poly_d(poly_mul(f, g))
    rhs = poly_mul(poly_d(f), g) + poly_mul(f, poly_d(g))
    assert lhs == rhs


def test_pullback_functorial():
    # two composable monotone maps, compared on a polynomial 1-form
    d0 = coface(1, 0)           # [1] -> [2]
    s0 = codegeneracy(1, 0)     # [2] -> [1]
    f = poly_mul(t(1, 1), poly_d(t(1, 1)))
    comp = s0.compose(d0)
    via_comp = pullback(comp, f) if comp.target_level == f.level else None
    assert pullback(d0, pullback(s0, f)) == pullback(comp, f)


def test_pullback_of_vertex_inclusion_kills_positive_weight():
    # delta_0 : [0] -> [1] pulls t_1 back to the value at vertex 1
    f = t(1, 1)
    res = pullback(coface(0, 0), f)
    assert res == PolyForm.constant(0, 1)
    assert pullback(coface(0, 1), f).is_zero()


def test_simplex_integral_values():
    # integral over the n-simplex of t^a equals prod a_i! / (n + sum a)!
    assert simplex_integral((0,)) == F(1)
    assert simplex_integral((1,)) == F(1, 2)
    assert simplex_integral((1, 0)) == F(1, 6)
    assert simplex_integral((1, 1)) == F(1, 24)


def test_simplex_integral_formula_random():
    for exps in [(2,), (3, 1), (0, 2), (1, 1, 1)]:
        n = len(exps)
        expected = F(1)
        for a in exps:
            expected *= factorial(a)
        expected = F(expected, factorial(n + sum(exps)))
        assert simplex_integral(exps) == expected


def test_stokes_dimension_one():
    # int_[0,1] df = f(1) - f(0) for f = t1^2
    f = poly_mul(t(1, 1), t(1, 1))
    df = poly_d(f)
    total = F(0)
    for (e, iset), c in df.terms.items():
        assert iset == (1,)
        total += c * simplex_integral(e)
    boundary = F(0)
    for i, sign in ((0, 1), (1, -1)):
        g = pullback(coface(0, i), f)
        val = sum(c for (e, iset), c in g.terms.items())
        boundary += sign * val
    # orientation: sum_i (-1)^i delta_i^*
    assert total == sum(((-1) ** i) *
                        sum(c for c in pullback(coface(0, i), f).terms.values())
                        for i in range(2))


def test_th_constant_ground_field():
    K = ground_field(augmented=True)
    c = constant_cosimplicial(K, 3)
    model = th(c, 2, 4)
    a = model.algebra
    assert validate(a) == []
    assert betti(a.complex).get(0, 0) == 1
    assert all(betti(a.complex).get(d, 0) == 0 for d in (1, 2))


def test_th_requires_enough_levels():
    K = ground_field(augmented=True)
    with pytest.raises(TruncationTooSmall):
        th(constant_cosimplicial(K, 1), 2, 4)


def test_th_weight_cap_guard():
    K = ground_field(augmented=True)
    with pytest.raises(ValueError):
        th(constant_cosimplicial(K, 3), 2, 2)


def test_integration_constant_sphere_quasi_iso():
    a = sphere_even(2)
    c = constant_cosimplicial(a, 3)
    f, model, total, norm, offsets = integration_map(c, 2, 4)
    ok, induced = is_quasi_iso(f, up_to=2)
    assert ok


def test_integration_dold_kan_quasi_iso(rng):
    a = acyclic_zero()
    c = dold_kan_D(a, 2)
    f, model, total, norm, offsets = integration_map(c, 1, 3)
    ok, induced = is_quasi_iso(f, up_to=1)
    assert ok
