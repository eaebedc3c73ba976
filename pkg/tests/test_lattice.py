"""Tests for coordinate lattices, moduli, ideals, and convergence witnesses."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centrelat.lattice import (
    ComplexElement,
    ConvergenceWitness,
    CoordinateLattice,
    DimensionMismatchError,
    DomainError,
    MaxNorm,
    PrincipalIdeal,
    UserNorm,
    WeightedPNorm,
    check_witness,
    ideal_norm,
    lattice_ops,
    modulus,
    modulus_phase_oracle,
)

TOL_EXACT = 1e-12
TOL_ORACLE = 1e-9


def elem(re, im=None, norm=None):
    re = np.asarray(re, dtype=float)
    lat = CoordinateLattice(len(re), norm or MaxNorm())
    return ComplexElement.from_parts(lat, re, im)


# ---------------------------------------------------------------------------
# modulus
# ---------------------------------------------------------------------------

def test_modulus_closed_form():
    z = elem([3.0, -1.0], [4.0, 0.0])
    assert np.array_equal(modulus(z), [5.0, 1.0])


def test_modulus_zero():
    z = elem([0.0, 0.0])
    assert np.array_equal(modulus(z), [0.0, 0.0])


def test_modulus_matches_phase_oracle_frozen():
    z = elem([1.0, 2.0], [1.0, -2.0])
    m = modulus(z)
    assert m == pytest.approx([math.sqrt(2.0), 2.0 * math.sqrt(2.0)], abs=TOL_EXACT)
    oracle = modulus_phase_oracle(z)
    assert np.max(np.abs(m - oracle)) < TOL_ORACLE


def test_modulus_matches_phase_oracle_random():
    rng = np.random.default_rng(42)
    for _ in range(25):
        n = int(rng.integers(1, 9))
        z = elem(rng.standard_normal(n) * 10, rng.standard_normal(n) * 10)
        assert np.max(np.abs(modulus(z) - modulus_phase_oracle(z))) < TOL_ORACLE


def test_modulus_of_conjugate_is_modulus():
    rng = np.random.default_rng(0)
    z = elem(rng.standard_normal(5), rng.standard_normal(5))
    assert np.array_equal(modulus(z), modulus(z.conj()))


def test_conjugation_is_involution():
    z = elem([1.5, -2.0], [0.25, 3.0])
    assert np.array_equal(z.conj().conj().values, z.values)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
@settings(max_examples=50, deadline=None)
def test_modulus_positive_homogeneity(c):
    z = elem([1.0, -2.0, 0.5], [3.0, 0.0, -0.25])
    scaled = z * c
    expected = abs(c) * modulus(z)
    assert np.max(np.abs(modulus(scaled) - expected)) <= TOL_EXACT * max(1.0, abs(c))


def test_modulus_triangle_inequality():
    rng = np.random.default_rng(7)
    for _ in range(50):
        z = elem(rng.standard_normal(4), rng.standard_normal(4))
        w = elem(rng.standard_normal(4), rng.standard_normal(4))
        assert np.all(modulus(z + w) <= modulus(z) + modulus(w) + TOL_EXACT)


def test_dimension_mismatch_rejected():
    lat = CoordinateLattice(2)
    with pytest.raises(DimensionMismatchError):
        ComplexElement.from_parts(lat, [1.0, 2.0, 3.0])
    with pytest.raises(DimensionMismatchError):
        ComplexElement.from_parts(lat, [1.0, 2.0], [1.0])


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def test_weighted_p_norm_values():
    n = WeightedPNorm((1.0, 2.0), 1.0)
    assert n(np.array([3.0, 4.0])) == pytest.approx(11.0)
    n_inf = WeightedPNorm((1.0, 2.0), math.inf)
    assert n_inf(np.array([3.0, 4.0])) == pytest.approx(8.0)


def test_weighted_norm_rejects_bad_parameters():
    with pytest.raises(ValueError):
        WeightedPNorm((1.0, -1.0), 2.0)
    with pytest.raises(ValueError):
        WeightedPNorm((1.0,), 0.5)


def test_norm_is_lattice_norm():
    # |x| <= |y| coordinatewise implies norm(x) <= norm(y)
    rng = np.random.default_rng(11)
    for spec in (MaxNorm(), WeightedPNorm((0.5, 2.0, 1.0), 1.0),
                 WeightedPNorm((1.0, 1.0, 3.0), 2.0),
                 UserNorm(lambda a: float(np.sum(a) + np.max(a)))):
        lat = CoordinateLattice(3, spec)
        for _ in range(50):
            big = np.abs(rng.standard_normal(3))
            small = big * rng.uniform(0.0, 1.0, size=3)
            assert lat.norm(small) <= lat.norm(big) + TOL_EXACT


# ---------------------------------------------------------------------------
# lattice operations
# ---------------------------------------------------------------------------

def test_lattice_ops_basic():
    join, meet = lattice_ops([1.0, -2.0], [0.0, 5.0])
    assert np.array_equal(join, [1.0, 5.0])
    assert np.array_equal(meet, [0.0, -2.0])


def test_lattice_ops_idempotent():
    x = np.array([1.0, 2.0, -3.0])
    join, meet = lattice_ops(x, x)
    assert np.array_equal(join, x) and np.array_equal(meet, x)


def test_lattice_ops_modularity_and_order():
    rng = np.random.default_rng(3)
    for _ in range(50):
        x = rng.standard_normal(6)
        y = rng.standard_normal(6)
        join, meet = lattice_ops(x, y)
        assert np.array_equal(join + meet, x + y)
        assert np.all(join - x >= 0) and np.all(join - y >= 0)
        assert np.all(x - meet >= 0) and np.all(y - meet >= 0)


def test_lattice_ops_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        lattice_ops([1.0], [1.0, 2.0])


# ---------------------------------------------------------------------------
# principal ideals
# ---------------------------------------------------------------------------

def test_ideal_norm_of_generator_is_one():
    u = np.array([1.0, 2.0, 0.5])
    ideal = PrincipalIdeal(u)
    z = elem(u)
    assert ideal_norm(z, ideal) == pytest.approx(1.0, abs=TOL_EXACT)


def test_ideal_norm_frozen_values():
    ideal = PrincipalIdeal(np.array([1.0, 2.0, 0.0]))
    assert ideal_norm(elem([2.0, 2.0, 0.0]), ideal) == pytest.approx(2.0)
    # |3 + 4i| / 2 = 2.5
    assert ideal_norm(elem([0.0, 3.0, 0.0], [0.0, 4.0, 0.0]), ideal) == pytest.approx(2.5)


def test_ideal_norm_outside_ideal_names_coordinate():
    ideal = PrincipalIdeal(np.array([1.0, 0.0, 2.0]))
    with pytest.raises(DomainError, match="coordinate 1"):
        ideal_norm(elem([0.0, 1.0, 0.0]), ideal)


def test_ideal_norm_is_a_lattice_norm():
    rng = np.random.default_rng(19)
    u = np.array([1.0, 0.5, 2.0, 3.0])
    ideal = PrincipalIdeal(u)
    for _ in range(50):
        z = elem(rng.standard_normal(4), rng.standard_normal(4))
        w = elem(rng.standard_normal(4), rng.standard_normal(4))
        c = complex(rng.standard_normal(), rng.standard_normal())
        nz, nw = ideal_norm(z, ideal), ideal_norm(w, ideal)
        # homogeneity and triangle
        assert ideal_norm(z * c, ideal) == pytest.approx(abs(c) * nz, abs=TOL_EXACT * 10)
        assert ideal_norm(z + w, ideal) <= nz + nw + TOL_EXACT
        # monotone in the modulus: shrinking every coordinate shrinks the norm
        shrunk = ComplexElement(z.lattice, z.values * rng.uniform(0, 1, size=4))
        assert ideal_norm(shrunk, ideal) <= nz + TOL_EXACT


def test_ideal_rejects_bad_generators():
    with pytest.raises(ValueError):
        PrincipalIdeal(np.array([0.0, 0.0]))
    with pytest.raises(ValueError):
        PrincipalIdeal(np.array([1.0, -1.0]))


# ---------------------------------------------------------------------------
# convergence witnesses
# ---------------------------------------------------------------------------

def test_witness_constant_sequence():
    limit = elem([1.0, 2.0])
    values = [limit for _ in range(5)]
    w = ConvergenceWitness(tuple(np.zeros(2) for _ in range(5)))
    assert check_witness(values, limit, w)


def test_witness_exact_domination():
    limit = elem([0.0, 0.0])
    values = [elem([1.0 / n, 0.0]) for n in range(1, 21)]
    doms = tuple(np.array([1.0 / n, 0.0]) for n in range(1, 21))
    w = ConvergenceWitness(doms, tail=lambda n: 1.0 / (n + 1))
    assert check_witness(values, limit, w)


def test_witness_too_small_fails_at_first_index():
    limit = elem([0.0])
    values = [elem([1.0 / n]) for n in range(1, 6)]
    doms = tuple(np.array([1.0 / (2 * n)]) for n in range(1, 6))
    w = ConvergenceWitness(doms, tail=lambda n: 1.0 / (n + 1))
    verdict = check_witness(values, limit, w)
    assert not verdict
    assert verdict.first_violation == 0


def test_witness_rejects_increasing_domination():
    limit = elem([0.0])
    values = [limit, limit]
    w = ConvergenceWitness((np.array([1.0]), np.array([2.0])))
    verdict = check_witness(values, limit, w)
    assert not verdict and "increases" in verdict.reason


def test_witness_without_tail_needs_small_last_term():
    limit = elem([0.0])
    values = [elem([2.0 ** -n]) for n in range(1, 11)]
    doms = tuple(np.array([2.0 ** -n]) for n in range(1, 11))
    assert not check_witness(values, limit, ConvergenceWitness(doms))
    long_doms = tuple(np.array([2.0 ** -n]) for n in range(1, 41))
    assert check_witness(values, limit, ConvergenceWitness(long_doms))


def test_witness_tail_rule_must_decay():
    limit = elem([0.0])
    values = [elem([0.5])]
    w = ConvergenceWitness((np.array([0.5]),), tail=lambda n: 0.5)
    verdict = check_witness(values, limit, w)
    assert not verdict and "decay" in verdict.reason
