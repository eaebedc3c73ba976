"""Tests for lattice-valued measures, the order integral, image measures,
spectral laws, and the representation of positive functionals."""

import numpy as np
import pytest

from centrelat.lattice import ConvergenceWitness, CoordinateLattice, check_witness
from centrelat.measures import (
    FiniteMeasurableSpace,
    LatticeValuedMeasure,
    MeasurabilityError,
    MeasurableFunction,
    PositivityError,
    image_measure,
    integrate,
    is_spectral,
    riesz_represent,
)

TOL_EXACT = 1e-12


def powerset_space(n):
    return FiniteMeasurableSpace(tuple(range(n)))


def random_pair(rng, n_points=6, dim=4):
    space = powerset_space(n_points)
    mu = LatticeValuedMeasure(space, tuple(rng.uniform(0, 2, size=dim) for _ in range(n_points)))
    table = {p: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for p in space.points}
    return mu, MeasurableFunction(space, table)


# ---------------------------------------------------------------------------
# spaces and measures
# ---------------------------------------------------------------------------

def test_space_atoms_partition_enforced():
    with pytest.raises(ValueError):
        FiniteMeasurableSpace((1, 2, 3), ((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        FiniteMeasurableSpace((1, 2, 3), ((1, 2),))


def test_measurable_sets_are_atom_unions():
    space = FiniteMeasurableSpace((1, 2, 3, 4), ((1, 2), (3,), (4,)))
    assert space.is_measurable({1, 2, 3})
    assert not space.is_measurable({1, 3})
    assert space.atoms_of({3, 4}) == [1, 2]


def test_measure_positivity_enforced():
    space = powerset_space(2)
    with pytest.raises(PositivityError):
        LatticeValuedMeasure(space, (np.array([1.0, -0.5]), np.array([0.0, 0.0])))


def test_measure_empty_set_and_additivity():
    space = powerset_space(3)
    mu = LatticeValuedMeasure(space, (np.array([1.0, 0.0]), np.array([0.0, 2.0]),
                                      np.array([0.5, 0.5])))
    assert np.array_equal(mu.measure_of(set()), [0.0, 0.0])
    lhs = mu.measure_of({0, 2})
    assert np.array_equal(lhs, mu.measure_of({0}) + mu.measure_of({2}))
    assert np.array_equal(mu.total(), [1.5, 2.5])


# ---------------------------------------------------------------------------
# measurable functions and the order integral
# ---------------------------------------------------------------------------

def test_function_must_be_constant_on_atoms():
    space = FiniteMeasurableSpace((1, 2), ((1, 2),))
    with pytest.raises(MeasurabilityError):
        MeasurableFunction(space, {1: 1.0, 2: 2.0})


def test_integrate_frozen_example():
    space = powerset_space(2)
    mu = LatticeValuedMeasure(space, (np.array([1.0, 0.0]), np.array([0.0, 2.0])))
    phi = MeasurableFunction(space, {0: 3.0, 1: 1.0})
    assert np.array_equal(integrate(phi, mu).values, [3.0, 2.0])


def test_integrate_zero_function():
    rng = np.random.default_rng(0)
    mu, _ = random_pair(rng)
    zero = MeasurableFunction(mu.space, {p: 0.0 for p in mu.space.points})
    assert np.array_equal(integrate(zero, mu).values, np.zeros(4))


def test_integrate_decomposition_independence():
    # integrating over the coarse space equals integrating the lifted function
    # over the singleton refinement
    rng = np.random.default_rng(1)
    for _ in range(20):
        coarse = FiniteMeasurableSpace((0, 1, 2, 3, 4, 5), ((0, 1), (2,), (3, 4, 5)))
        vals = tuple(rng.uniform(0, 1, size=4) for _ in range(3))
        mu = LatticeValuedMeasure(coarse, vals)
        table = {}
        per_atom = rng.uniform(-1, 1, size=3) + 1j * rng.uniform(-1, 1, size=3)
        for k, atom in enumerate(coarse.atoms):
            for p in atom:
                table[p] = complex(per_atom[k])
        f = MeasurableFunction(coarse, table)
        fine = FiniteMeasurableSpace(coarse.points)
        fine_vals = []
        for p in fine.points:
            k = coarse.atom_index(p)
            share = vals[k] / len(coarse.atoms[k])
            fine_vals.append(share)
        mu_fine = LatticeValuedMeasure(fine, tuple(fine_vals))
        f_fine = MeasurableFunction(fine, table)
        a = integrate(f, mu).values
        b = integrate(f_fine, mu_fine).values
        assert np.max(np.abs(a - b)) <= TOL_EXACT


def test_triangle_inequality_for_integrals():
    rng = np.random.default_rng(2)
    for _ in range(100):
        mu, f = random_pair(rng)
        lhs = np.abs(integrate(f, mu).values)
        absf = MeasurableFunction(mu.space, {p: abs(f(p)) for p in mu.space.points})
        rhs = integrate(absf, mu).values.real
        assert np.all(lhs <= rhs + TOL_EXACT)


def test_monotone_convergence_finite():
    rng = np.random.default_rng(3)
    mu, f = random_pair(rng)
    target = {p: abs(f(p)) for p in mu.space.points}
    fs = [MeasurableFunction(mu.space, {p: target[p] * (1 - 1.0 / n) for p in mu.space.points})
          for n in range(1, 30)]
    ints = [integrate(g, mu).values.real for g in fs]
    limit = integrate(MeasurableFunction(mu.space, target), mu).values.real
    for a, b in zip(ints, ints[1:]):
        assert np.all(b >= a - TOL_EXACT)
    assert np.all(ints[-1] <= limit + TOL_EXACT)


def test_dominated_convergence_with_witness():
    rng = np.random.default_rng(4)
    mu, f = random_pair(rng)
    lat = mu.lattice
    fs = [MeasurableFunction(mu.space, {p: f(p) + 1.0 / n for p in mu.space.points})
          for n in range(1, 50)]
    limit = integrate(f, mu)
    values = [integrate(g, mu) for g in fs]
    # witness: (1/n) * mu(X), with the analytic tail rule
    total = mu.total()
    doms = tuple(total / n for n in range(1, 50))
    w = ConvergenceWitness(doms, tail=lambda n: float(np.max(total)) / (n + 1))
    assert check_witness(values, limit, w)


# ---------------------------------------------------------------------------
# image measures
# ---------------------------------------------------------------------------

def test_image_measure_identity():
    rng = np.random.default_rng(5)
    mu, _ = random_pair(rng)
    out = image_measure(mu, {p: p for p in mu.space.points}, mu.space)
    for a, b in zip(out.values, mu.values):
        assert np.array_equal(a, b)


def test_image_measure_collapse():
    rng = np.random.default_rng(6)
    mu, _ = random_pair(rng)
    target = FiniteMeasurableSpace(("pt",))
    out = image_measure(mu, {p: "pt" for p in mu.space.points}, target)
    assert np.array_equal(out.values[0], mu.total())


def test_image_measure_change_of_variables():
    rng = np.random.default_rng(7)
    for _ in range(30):
        mu, _ = random_pair(rng)
        target = FiniteMeasurableSpace((0, 1, 2))
        mapping = {p: int(rng.integers(0, 3)) for p in mu.space.points}
        out = image_measure(mu, mapping, target)
        for _ in range(10):
            table = {q: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for q in target.points}
            f = MeasurableFunction(target, table)
            pulled = MeasurableFunction(mu.space, {p: table[mapping[p]] for p in mu.space.points})
            a = integrate(f, out).values
            b = integrate(pulled, mu).values
            assert np.max(np.abs(a - b)) <= TOL_EXACT


def test_image_measure_target_must_cover():
    rng = np.random.default_rng(8)
    mu, _ = random_pair(rng)
    target = FiniteMeasurableSpace((0,))
    with pytest.raises(ValueError):
        image_measure(mu, {p: p for p in mu.space.points}, target)


# ---------------------------------------------------------------------------
# spectral law
# ---------------------------------------------------------------------------

def test_partition_projections_are_spectral():
    space = powerset_space(3)
    mu = LatticeValuedMeasure(space, (np.array([1.0, 0, 0, 1.0]), np.array([0, 1.0, 0, 0]),
                                      np.array([0, 0, 1.0, 0])))
    verdict = is_spectral(mu)
    assert verdict and all(verdict.idempotent)


def test_half_value_is_not_spectral():
    space = powerset_space(2)
    mu = LatticeValuedMeasure(space, (np.array([0.5, 0.0]), np.array([0.0, 1.0])))
    verdict = is_spectral(mu)
    assert not verdict
    assert not verdict.idempotent[0] and verdict.idempotent[1]


def test_random_partitions_are_spectral():
    rng = np.random.default_rng(9)
    for _ in range(30):
        dim = int(rng.integers(2, 8))
        k = int(rng.integers(1, dim + 1))
        labels = rng.integers(0, k, size=dim)
        used = sorted(set(int(x) for x in labels))
        space = powerset_space(len(used))
        vals = tuple((labels == lab).astype(float) for lab in used)
        assert is_spectral(LatticeValuedMeasure(space, vals))


# ---------------------------------------------------------------------------
# Riesz representation
# ---------------------------------------------------------------------------

def test_riesz_frozen_example():
    space = FiniteMeasurableSpace(("a", "b"))

    def pi(f):
        return np.array([f[0] + f[1], f[1]])

    mu = riesz_represent(pi, space)
    assert np.array_equal(mu.values[0], [1.0, 0.0])
    assert np.array_equal(mu.values[1], [1.0, 1.0])


def test_riesz_zero_functional():
    space = powerset_space(3)
    mu = riesz_represent(lambda f: np.zeros(2), space)
    assert all(np.array_equal(v, np.zeros(2)) for v in mu.values)


def test_riesz_rejects_negative_functional():
    space = powerset_space(2)
    with pytest.raises(PositivityError):
        riesz_represent(lambda f: np.array([f[0] - 2 * f[1]]), space)


def test_riesz_random_positive_functionals():
    rng = np.random.default_rng(10)
    for _ in range(10):
        n, dim = 5, 3
        space = powerset_space(n)
        weights = rng.uniform(0, 1, size=(dim, n))
        mu = riesz_represent(lambda f, w=weights: w @ np.asarray(f), space,
                             lattice=CoordinateLattice(dim), rng=rng)
        for k in range(n):
            assert np.max(np.abs(mu.values[k] - weights[:, k])) <= TOL_EXACT


def test_riesz_multiplicative_functional_gives_spectral_measure():
    rng = np.random.default_rng(11)
    n = 4
    space = powerset_space(n)
    # pi(f)_i = f(assignment(i)): an algebra homomorphism into coordinatewise E
    assign = rng.integers(0, n, size=3)
    mu = riesz_represent(lambda f: np.asarray(f)[assign], space, rng=rng)
    assert is_spectral(mu)


def test_riesz_uniqueness_via_indicators():
    # two measures that agree with pi on all functions agree on every atom
    rng = np.random.default_rng(12)
    space = powerset_space(4)
    vals = tuple(rng.uniform(0, 1, size=2) for _ in range(4))
    mu = LatticeValuedMeasure(space, vals)

    def pi(f):
        return integrate(MeasurableFunction(space,
                                            {p: f[p] for p in space.points}), mu).values.real

    nu = riesz_represent(pi, space, rng=rng)
    for a, b in zip(mu.values, nu.values):
        assert np.max(np.abs(a - b)) <= TOL_EXACT


def test_regularity_trivial_on_discrete_space():
    # inner/outer regularity is vacuous on a finite discrete space: every set
    # is simultaneously open and compact, so the measure value is its own
    # inner and outer approximation — pinned once
    space = powerset_space(3)
    mu = LatticeValuedMeasure(space, (np.array([1.0]), np.array([2.0]), np.array([0.5])))
    for subset in ({0}, {0, 1}, {0, 1, 2}, set()):
        v = mu.measure_of(subset)
        assert np.array_equal(v, mu.measure_of(subset))  # open = compact = the set itself


# ---------------------------------------------------------------------------
# exact-rational mode
# ---------------------------------------------------------------------------

def test_exact_mode_integration():
    from fractions import Fraction
    space = powerset_space(2)
    mu = LatticeValuedMeasure(space, ((Fraction(1, 3), Fraction(0)),
                                      (Fraction(0), Fraction(2, 7))), exact=True)
    f = MeasurableFunction(space, {0: 3, 1: 7})
    re, im = integrate(f, mu)
    assert re == (Fraction(1), Fraction(2))
    assert im == (Fraction(0), Fraction(0))
