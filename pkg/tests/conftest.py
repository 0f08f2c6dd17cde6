"""Shared builders for the test suite: small valid cochain algebras,
random tensor combinations, and filtrations."""

import random
from fractions import Fraction

import pytest

from cdgakit.linalg import Matrix, Subspace
from cdgakit.complexes import Complex
from cdgakit.cdga import CDGA, ground_field, tensor
from cdgakit.filtration import FilteredComplex

F = Fraction


def one_by_one(x):
    return Matrix([[F(x)]], 1, 1)


def exterior(d):
    """Free graded-commutative on one odd generator: 1 and x, x^2 = 0."""
    assert d % 2 == 1
    dims = [1] + [0] * (d - 1) + [1]
    ds = [Matrix.zero(dims[k + 1], dims[k]) for k in range(d)]
    cx = Complex(dims, ds)
    mult = {(0, 0): one_by_one(1), (0, d): Matrix.identity(1),
            (d, 0): Matrix.identity(1)}
    return CDGA(cx, mult, (F(1),), (F(1),))


def sphere_even(d):
    """One even generator with square zero by truncation at its degree."""
    assert d % 2 == 0 and d > 0
    dims = [1] + [0] * (d - 1) + [1]
    ds = [Matrix.zero(dims[k + 1], dims[k]) for k in range(d)]
    cx = Complex(dims, ds)
    mult = {(0, 0): one_by_one(1), (0, d): Matrix.identity(1),
            (d, 0): Matrix.identity(1)}
    return CDGA(cx, mult, (F(1),), (F(1),))


def acyclic_zero():
    """Degree-0 element e1 with d(e1) = y in degree 1; H^* = K."""
    cx = Complex([2, 1], [Matrix([[F(0), F(1)]], 1, 2)])
    mult = {(0, 0): Matrix([[F(1), F(0), F(0), F(0)],
                            [F(0), F(1), F(1), F(0)]], 2, 4),
            (0, 1): Matrix([[F(1), F(0)]], 1, 2),
            (1, 0): Matrix([[F(1), F(0)]], 1, 2)}
    return CDGA(cx, mult, (F(1), F(0)), (F(1), F(0)))


def acyclic_one():
    """x in degree 1 with dx = y in degree 2; squares truncated away."""
    cx = Complex([1, 1, 1], [Matrix.zero(1, 1), Matrix.identity(1)])
    mult = {(0, 0): one_by_one(1), (0, 1): Matrix.identity(1),
            (1, 0): Matrix.identity(1), (0, 2): Matrix.identity(1),
            (2, 0): Matrix.identity(1)}
    return CDGA(cx, mult, (F(1),), (F(1),))


BLOCKS = [
    lambda: ground_field(augmented=True),
    lambda: exterior(1),
    lambda: exterior(3),
    lambda: sphere_even(2),
    acyclic_zero,
    acyclic_one,
]


def random_cdga(rng, max_top=3):
    """Tensor of one or two small blocks with combined top <= max_top."""
    while True:
        a = rng.choice(BLOCKS)()
        if rng.random() < 0.5:
            b = rng.choice(BLOCKS)()
            if a.top + b.top <= max_top:
                return tensor(a, b)
            continue
        if a.top <= max_top:
            return a


def random_connected_cdga(rng, max_top=3):
    from cdgakit.complexes import cohomology
    while True:
        a = random_cdga(rng, max_top)
        if cohomology(a.complex)[0].dim == 1:
            return a


def random_filtration(rng, cx, steps=2):
    """Random increasing exhaustive filtration by subcomplexes.

    Each step adds a few random vectors together with their d-images; the
    top step is everything.
    """
    degs = list(cx.degrees())
    current = {deg: Subspace.zero(cx.dim(deg)) for deg in degs}
    chains = {deg: [] for deg in degs}
    for _ in range(steps - 1):
        for deg in degs:
            if cx.dim(deg) == 0 or rng.random() < 0.3:
                continue
            v = tuple(F(rng.randint(-2, 2)) for _ in range(cx.dim(deg)))
            current[deg] = current[deg].sum(Subspace(cx.dim(deg), [v]))
            if deg + 1 in current:
                dv = cx.diff(deg).apply(v)
                current[deg + 1] = current[deg + 1].sum(
                    Subspace(cx.dim(deg + 1), [dv]))
        for deg in degs:
            chains[deg].append(current[deg])
    for deg in degs:
        full = Subspace(cx.dim(deg),
                        [tuple(F(int(i == j)) for i in range(cx.dim(deg)))
                         for j in range(cx.dim(deg))])
        chains[deg].append(full)
    return FilteredComplex(cx, chains, 0, steps - 1)


@pytest.fixture
def rng():
    return random.Random(20260824)
