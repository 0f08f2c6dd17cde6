from fractions import Fraction

import pytest

from cdgakit.linalg import Matrix
from cdgakit.complexes import Complex, cohomology
from cdgakit.cdga import (CDGA, validate, CDGAMorphism, ground_field, tensor,
                          h_star)
from cdgakit.complexes import ChainMap

from conftest import exterior, sphere_even, acyclic_zero, acyclic_one, random_cdga

F = Fraction


def test_blocks_are_valid():
    for a in (ground_field(augmented=True), exterior(1), exterior(3),
              sphere_even(2), acyclic_zero(), acyclic_one()):
        assert validate(a) == []


def test_random_tensors_are_valid(rng):
    for _ in range(15):
        assert validate(random_cdga(rng)) == []


def test_validate_catches_leibniz_failure():
    # d(x) = y but x * x = y is not graded-commutative compatible:
    # give degree-0 square a wrong unit row instead
    cx = Complex([2, 1], [Matrix([[F(0), F(1)]], 1, 2)])
    bad_mult = {(0, 0): Matrix([[F(1), F(0), F(0), F(1)],
                                [F(0), F(1), F(1), F(0)]], 2, 4),
                (0, 1): Matrix([[F(1), F(0)]], 1, 2),
                (1, 0): Matrix([[F(1), F(0)]], 1, 2)}
    a = CDGA(cx, bad_mult, (F(1), F(0)), (F(1), F(0)))
    assert validate(a) != []


def test_product_above_top_is_none():
    a = exterior(1)
    assert a.product(1, (F(1),), 1, (F(1),)) is None


def test_tensor_dims_are_convolutions():
    a, b = exterior(1), exterior(1)
    t = tensor(a, b)
    assert t.complex.dims == [1, 2, 1]
    assert validate(t) == []


def test_tensor_kunneth(rng):
    # H(a (x) b) dims = convolution of H(a), H(b) dims, degree-wise
    for _ in range(5):
        a, b = random_cdga(rng, 2), random_cdga(rng, 1)
        if a.top + b.top > 3:
            continue
        t = tensor(a, b)
        ha, hb = cohomology(a.complex), cohomology(b.complex)
        ht = cohomology(t.complex)
        for deg in t.complex.degrees():
            expected = sum((ha[i].dim if i in ha else 0) *
                           (hb[deg - i].dim if deg - i in hb else 0)
                           for i in range(deg + 1))
            got = ht[deg].dim if deg in ht else 0
            assert got == expected


def test_h_star_of_sphere():
    hs, reps, projs = h_star(sphere_even(2))
    assert list(hs.complex.dims) == [1, 0, 1]
    assert validate(hs) == []


def test_h_star_of_acyclic_is_ground_field():
    hs, reps, projs = h_star(acyclic_zero())
    assert list(hs.complex.dims) == [1, 0]


def test_morphism_violations_detect_non_multiplicative():
    a = sphere_even(2)
    # scaling the degree-2 generator by 2 is a chain map, but in a morphism
    # to itself it must preserve products with the unit only; scale unit too
    f = ChainMap(a.complex, a.complex, {0: Matrix([[F(2)]], 1, 1),
                                        2: Matrix.identity(1)})
    m = CDGAMorphism(a, a, f, check=False)
    assert m.violations() != []


def test_morphism_identity_clean():
    from cdgakit.complexes import identity_map
    a = sphere_even(2)
    m = CDGAMorphism(a, a, identity_map(a.complex), check=False)
    assert m.violations() == []
