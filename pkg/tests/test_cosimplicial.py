from fractions import Fraction
from itertools import permutations

import pytest

from cdgakit.linalg import Matrix, rank
from cdgakit.complexes import Complex, cohomology, betti
from cdgakit.cdga import ground_field, validate
from cdgakit.cosimplicial import (SimplexMap, identity, coface, codegeneracy,
                                  surjections, shuffle_of_surjection_pair,
                                  normalize, tot_n, constant_cosimplicial,
                                  dold_kan_D, TruncationTooSmall)

from conftest import random_cdga, sphere_even, acyclic_zero

F = Fraction


def test_simplex_map_composition_and_factorization():
    d0 = coface(1, 0)
    s0 = codegeneracy(1, 0)
    # simplicial identity: sigma_0 delta_0 = id on [1]
    assert s0.compose(d0).values == identity(1).values
    epi, mono = coface(1, 2).compose(codegeneracy(1, 1)).epi_mono_factorization()
    assert epi.target_level == mono.source_level
    assert mono.compose(epi).values == coface(1, 2).compose(codegeneracy(1, 1)).values


def test_surjection_count_is_binomial():
    from math import comb
    # monotone surjections [n] ->> [k] are choices of k rises among n slots
    for n in range(5):
        for k in range(n + 1):
            assert len(surjections(n, k)) == comb(n, k)


def test_shuffle_pairs_cover_all_shuffles_with_unit_signs():
    # s : [p+q] ->> [p], t : [p+q] ->> [q] jointly injective pairs
    # correspond to (p, q)-shuffles; signs are permutation signs
    p, q = 2, 1
    count = 0
    for s in surjections(p + q, p):
        for t in surjections(p + q, q):
            res = shuffle_of_surjection_pair(s, t)
            if res is not None:
                u, sign = res
                assert sign in (1, -1)
                assert u.target_level == p + q
                count += 1
    from math import comb
    assert count == comb(p + q, p)


def test_constant_cosimplicial_identities():
    a = sphere_even(2)
    c = constant_cosimplicial(a, 3)
    assert c.identity_violations() == []


def test_constant_tot_recovers_algebra_cohomology():
    a = sphere_even(2)
    total, norm, offsets = tot_n(constant_cosimplicial(a, 3))
    hb, ha = betti(total), betti(a.complex)
    for deg in set(hb) | set(ha):
        assert hb.get(deg, 0) == ha.get(deg, 0)


def test_normalization_kills_degenerate_summands():
    a = ground_field(augmented=True)
    norm = normalize(constant_cosimplicial(a, 2))
    assert norm.grid.dim(0, 0) == 1
    assert norm.grid.dim(1, 0) == 0 and norm.grid.dim(2, 0) == 0


def test_dold_kan_truncation_guard():
    with pytest.raises(TruncationTooSmall):
        dold_kan_D(sphere_even(2), 1)


def test_dold_kan_levels_are_valid_algebras(rng):
    a = random_cdga(rng)
    dk = dold_kan_D(a, a.top + 1)
    for alg in dk.algebras:
        assert validate(alg) == []
    assert dk.identity_violations() == []


def test_dold_kan_normalized_columns_recover_input(rng):
    for _ in range(5):
        a = random_cdga(rng)
        dk = dold_kan_D(a, a.top + 1)
        norm = normalize(dk)
        for n in range(a.top + 2):
            assert norm.grid.dim(n, 0) == a.dim(n)


def test_dold_kan_round_trip_cohomology(rng):
    for _ in range(5):
        a = random_cdga(rng)
        total, norm, offsets = tot_n(dold_kan_D(a, a.top + 1))
        hb = betti(total)
        ha = betti(a.complex)
        for deg in set(hb) | set(ha):
            assert hb.get(deg, 0) == ha.get(deg, 0)


def test_dold_kan_round_trip_differential_ranks(rng):
    # complexes over a field are isomorphic iff dims and ranks of d agree
    a = acyclic_zero()
    total, norm, offsets = tot_n(dold_kan_D(a, a.top + 1))
    for deg in a.complex.degrees():
        assert total.dim(deg) == a.complex.dim(deg)
        assert rank(total.diff(deg)) == rank(a.complex.diff(deg))
