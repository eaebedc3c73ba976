"""Gelfand transform, spectra, spectral measures, and the functional calculus.

On an atomic lattice the Gelfand transform of a central operator is its
diagonal symbol viewed as a function on the finite structure space.  The
global spectral measure assigns coordinate projections to index sets; the
spectral measure of an individual operator is its image under the symbol,
and the functional calculus applies bounded functions to the symbol through
the order integral.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .exact import QComplex
from .lattice import (
    TOL_EXACT,
    TOL_ORACLE,
    ComplexElement,
    ConvergenceWitness,
    CoordinateLattice,
    DimensionMismatchError,
    DomainError,
    PrincipalIdeal,
    WitnessVerdict,
    check_witness,
)
from .measures import FiniteMeasurableSpace, LatticeValuedMeasure, MeasurableFunction, integrate
from .operators import CentralOperator, RegularOperator


class PreconditionError(ValueError):
    """An operation's stated precondition is violated."""


# ---------------------------------------------------------------------------
# structure space and Gelfand transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureSpace:
    """The finite index space on which the centre acts as functions."""

    dim: int

    @property
    def indices(self) -> range:
        return range(self.dim)

    def as_measurable_space(self) -> FiniteMeasurableSpace:
        return FiniteMeasurableSpace(tuple(self.indices))


@dataclass(frozen=True)
class GelfandFunction:
    """A central operator viewed as a function on the structure space."""

    space: StructureSpace
    values: np.ndarray

    def __call__(self, i: int) -> complex:
        return complex(self.values[i])

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))


def gelfand(T: CentralOperator) -> GelfandFunction:
    """The hat map: symbol of T as a function on the structure space."""
    return GelfandFunction(StructureSpace(T.lattice.dim), T.symbol)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Attained spectrum values, plus declared accumulation points in sequence mode."""

    attained: tuple[complex, ...]
    accumulation: tuple[complex, ...] = ()

    def as_set(self) -> set[complex]:
        return set(self.attained) | set(self.accumulation)

    def __contains__(self, value: complex) -> bool:
        return value in self.as_set()

    def __len__(self) -> int:
        return len(self.as_set())


def _dedup(values: np.ndarray, tol: float) -> list[complex]:
    """First-occurrence deduplication; eps-merge uses multiplicity-weighted means."""
    if tol == 0.0:
        out: list[complex] = []
        seen: set[complex] = set()
        for v in values:
            v = complex(v)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out
    groups: list[list[complex]] = []
    for v in values:
        v = complex(v)
        for g in groups:
            if abs(v - g[0]) <= tol:
                g.append(v)
                break
        else:
            groups.append([v])
    return [sum(g) / len(g) for g in groups]


def spectrum(T: CentralOperator, dedup_tol: float = 0.0, cross_check: bool = True) -> Spectrum:
    """Spectrum of a central operator: the distinct symbol values.

    When ``cross_check`` is set, the result is compared with the eigenvalues
    of the dense matrix (the spectrum in the algebra of all operators), which
    must agree within TOL_ORACLE.
    """
    values = _dedup(T.symbol, dedup_tol)
    if cross_check:
        eig = np.linalg.eigvals(np.diag(T.symbol))
        arr = np.asarray(values)
        for lam in eig:
            if np.min(np.abs(arr - lam)) > TOL_ORACLE:
                raise AssertionError(f"dense eigenvalue {lam} missing from the symbol spectrum")
        for lam in values:
            if np.min(np.abs(eig - lam)) > TOL_ORACLE:
                raise AssertionError(f"symbol value {lam} missing from the dense eigenvalues")
    return Spectrum(tuple(values))


@dataclass(frozen=True)
class SpectrumShapeReport:
    """The norm/reality/positivity/unimodularity characterisations of a spectrum."""

    radius_equals_norm: bool
    real_iff_selfconjugate: bool
    positive_iff_positive_symbol: bool
    unimodular_iff_unit_modulus: bool

    def all_ok(self) -> bool:
        return (self.radius_equals_norm and self.real_iff_selfconjugate
                and self.positive_iff_positive_symbol and self.unimodular_iff_unit_modulus)


def spectrum_shape_report(T: CentralOperator, tol: float = TOL_EXACT) -> SpectrumShapeReport:
    """Check the four spectral-shape equivalences for a central operator."""
    spec = np.asarray(spectrum(T, cross_check=False).attained)
    radius = float(np.max(np.abs(spec)))
    self_conj = bool(np.all(T.symbol == np.conj(T.symbol)))
    spec_real = bool(np.all(np.abs(spec.imag) <= tol))
    nonneg = bool(np.all(T.symbol.imag == 0) and np.all(T.symbol.real >= 0))
    spec_pos = spec_real and bool(np.all(spec.real >= -tol))
    unit_mod = bool(np.all(np.abs(np.abs(T.symbol) - 1.0) <= tol))
    spec_circle = bool(np.all(np.abs(np.abs(spec) - 1.0) <= tol))
    return SpectrumShapeReport(
        radius_equals_norm=abs(radius - T.order_unit_norm()) <= tol * max(1.0, radius),
        real_iff_selfconjugate=(spec_real == self_conj),
        positive_iff_positive_symbol=(spec_pos == nonneg),
        unimodular_iff_unit_modulus=(spec_circle == unit_mod),
    )


def union_spectrum(T: CentralOperator, generators: Sequence[np.ndarray]) -> Spectrum:
    """Spectrum as the union over restrictions to covering principal ideals."""
    ideals = [PrincipalIdeal(np.asarray(u, dtype=float)) for u in generators]
    covered: set[int] = set()
    for ideal in ideals:
        covered |= set(int(i) for i in ideal.support)
    if covered != set(range(T.lattice.dim)):
        raise PreconditionError("generator supports do not cover all coordinates")
    values: list[complex] = []
    seen: set[complex] = set()
    for ideal in ideals:
        for v in T.symbol[ideal.support]:
            v = complex(v)
            if v not in seen:
                seen.add(v)
                values.append(v)
    return Spectrum(tuple(values))


# ---------------------------------------------------------------------------
# spectral measures
# ---------------------------------------------------------------------------

def global_spectral_measure(lattice: CoordinateLattice) -> LatticeValuedMeasure:
    """The spectral measure of the whole centre: coordinate projections.

    Defined on the structure space with singleton atoms; the value at an
    index set is the 0/1 diagonal projection onto those coordinates.
    """
    space = StructureSpace(lattice.dim).as_measurable_space()
    eye = np.eye(lattice.dim)
    return LatticeValuedMeasure(space, tuple(eye[i] for i in range(lattice.dim)), lattice)


def reconstruct_from_global(T: CentralOperator,
                            mu: Optional[LatticeValuedMeasure] = None) -> CentralOperator:
    """Recover T as the order integral of its Gelfand transform against mu."""
    mu = mu if mu is not None else global_spectral_measure(T.lattice)
    hat = gelfand(T)
    f = MeasurableFunction(mu.space, {i: complex(hat(i)) for i in mu.space.points})
    return CentralOperator(T.lattice, integrate(f, mu).values)


@dataclass(frozen=True)
class OperatorSpectralMeasure:
    """The projection-valued spectral measure of a single central operator."""

    base: CentralOperator
    values: tuple[complex, ...]                  # the spectrum, in first-occurrence order
    projections: tuple[np.ndarray, ...]          # 0/1 symbols, one per spectrum value

    def projection_for(self, value: complex) -> CentralOperator:
        try:
            k = self.values.index(value)
        except ValueError:
            return CentralOperator(self.base.lattice, np.zeros(self.base.lattice.dim))
        return CentralOperator(self.base.lattice, self.projections[k].astype(complex))

    def measure_of(self, subset) -> CentralOperator:
        """mu_T(Delta) for Delta a subset of the spectrum."""
        s = set(subset)
        unknown = s - set(self.values)
        if unknown:
            raise DomainError(f"{unknown.pop()} is not a spectrum value")
        total = np.zeros(self.base.lattice.dim)
        for k, v in enumerate(self.values):
            if v in s:
                total = total + self.projections[k]
        return CentralOperator(self.base.lattice, total.astype(complex))

    def reconstruct(self) -> CentralOperator:
        total = np.zeros(self.base.lattice.dim, dtype=complex)
        for v, p in zip(self.values, self.projections):
            total += v * p
        return CentralOperator(self.base.lattice, total)

    def validate(self, tol: float = TOL_EXACT) -> None:
        """Assert idempotence, pairwise disjointness, completeness, positivity
        on nonempty open sets, and exact reconstruction."""
        total = np.zeros(self.base.lattice.dim)
        for k, p in enumerate(self.projections):
            if not np.array_equal(p * p, p):
                raise AssertionError(f"projection {k} is not idempotent")
            if not np.any(p):
                raise AssertionError(f"projection for attained value {self.values[k]} is zero")
            for j in range(k + 1, len(self.projections)):
                if np.any(p * self.projections[j]):
                    raise AssertionError("projections for distinct values are not disjoint")
            total = total + p
        if not np.array_equal(total, np.ones(self.base.lattice.dim)):
            raise AssertionError("projections do not sum to the identity")
        if np.max(np.abs(self.reconstruct().symbol - self.base.symbol)) > tol:
            raise AssertionError("spectral reconstruction does not recover the operator")


def build_mu_T(T: CentralOperator, dedup_tol: float = 0.0) -> OperatorSpectralMeasure:
    """Spectral measure of T: the image of the global measure under the symbol."""
    spec = spectrum(T, dedup_tol=dedup_tol, cross_check=False)
    projections = []
    for v in spec.attained:
        if dedup_tol == 0.0:
            mask = (T.symbol == v)
        else:
            mask = np.abs(T.symbol - v) <= dedup_tol
        projections.append(mask.astype(float))
    return OperatorSpectralMeasure(T, spec.attained, tuple(projections))


def enumerate_unital_spectral_measures(symbols: Sequence[QComplex]) -> list[tuple[int, ...]]:
    """Enumeration oracle for uniqueness of the spectral measure, in exact mode.

    A unital spectral measure valued in 0/1 diagonal projections on the
    spectrum is determined by an assignment of each coordinate to a spectrum
    value.  All |spectrum|^dim assignments are scanned; an assignment is
    admissible when the integral of the identity reproduces the symbol
    exactly.  Returns the admissible assignments (as value-index tuples).
    """
    values: list[QComplex] = []
    for s in symbols:
        if not any(s.re == v.re and s.im == v.im for v in values):
            values.append(s)
    admissible = []
    for assign in itertools.product(range(len(values)), repeat=len(symbols)):
        ok = True
        for i, k in enumerate(assign):
            d = values[k] - symbols[i]
            if not d.is_zero():
                ok = False
                break
        if ok:
            admissible.append(assign)
    return admissible


# ---------------------------------------------------------------------------
# functional calculus
# ---------------------------------------------------------------------------

FunctionLike = Callable[[complex], complex] | Mapping[complex, complex]


def _evaluate(f: FunctionLike, value: complex) -> complex:
    if callable(f):
        return complex(f(value))
    try:
        return complex(f[value])
    except KeyError:
        raise DomainError(f"function undefined at spectrum value {value}") from None


def rho_T(T: CentralOperator, f: FunctionLike,
          mu: Optional[OperatorSpectralMeasure] = None) -> CentralOperator:
    """Functional calculus: the order integral of f against the spectral measure.

    The result is central with symbol f(symbol_i) per coordinate.
    """
    mu = mu if mu is not None else build_mu_T(T)
    space = FiniteMeasurableSpace(tuple(mu.values))
    measure = LatticeValuedMeasure(space, mu.projections, T.lattice)
    table = {v: _evaluate(f, v) for v in mu.values}
    g = MeasurableFunction(space, table)
    return CentralOperator(T.lattice, integrate(g, measure).values)


def kernel_projection(T: CentralOperator, f: FunctionLike) -> CentralOperator:
    """mu_T of the null set of f; its image band is the kernel of rho_T(f)."""
    mu = build_mu_T(T)
    null = [v for v in mu.values if _evaluate(f, v) == 0]
    return mu.measure_of(null)


@dataclass(frozen=True)
class DominatedConvergenceReport:
    verdict: WitnessVerdict
    witness: ConvergenceWitness
    element_verdict: Optional[WitnessVerdict] = None

    def __bool__(self) -> bool:
        ok = bool(self.verdict)
        if self.element_verdict is not None:
            ok = ok and bool(self.element_verdict)
        return ok


def dominated_convergence_calculus(T: CentralOperator,
                                   fs: Sequence[FunctionLike],
                                   f: FunctionLike,
                                   bound: float,
                                   z: Optional[ComplexElement] = None,
                                   tail: Optional[Callable[[int], float]] = None,
                                   ) -> DominatedConvergenceReport:
    """Certify rho_T(f_n) -> rho_T(f) in sigma-order by an explicit witness.

    The witness term u_n is the running sup over occupied spectrum values of
    sup_{m >= n} |f_m - f|, times the identity.  When ``z`` is supplied the
    convergence rho_T(f_n) z -> rho_T(f) z is certified as well.
    """
    mu = build_mu_T(T)
    occupied = mu.values
    for g in fs:
        worst = max(abs(_evaluate(g, v)) for v in occupied)
        if worst > bound + TOL_EXACT:
            raise PreconditionError(f"uniform bound {bound} violated: |f_n| reaches {worst}")
    devs = [max(abs(_evaluate(g, v) - _evaluate(f, v)) for v in occupied) for g in fs]
    running = np.maximum.accumulate(np.asarray(devs)[::-1])[::-1]
    n = T.lattice.dim
    dominating = tuple(r * np.ones(n) for r in running)
    witness = ConvergenceWitness(dominating, claim="functional calculus convergence", tail=tail)
    limit_op = rho_T(T, f, mu)
    ops = [rho_T(T, g, mu) for g in fs]
    op_values = [ComplexElement(T.lattice, op.symbol) for op in ops]
    op_limit = ComplexElement(T.lattice, limit_op.symbol)
    verdict = check_witness(op_values, op_limit, witness)
    element_verdict = None
    if z is not None:
        absz = np.abs(z.values)
        elem_witness = ConvergenceWitness(tuple(r * absz for r in running),
                                          claim="pointwise calculus convergence", tail=tail)
        element_verdict = check_witness([op.apply(z) for op in ops], limit_op.apply(z),
                                        elem_witness)
    return DominatedConvergenceReport(verdict, witness, element_verdict)


# ---------------------------------------------------------------------------
# eigen expansions and approximation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenExpansion:
    pairs: tuple[tuple[complex, CentralOperator], ...]
    minimal_polynomial: tuple[complex, ...]   # monic coefficients, highest degree first

    def components(self, z: ComplexElement) -> list[ComplexElement]:
        return [p.apply(z) for _, p in self.pairs]


def minimal_polynomial(values: Sequence[complex]) -> tuple[complex, ...]:
    """Monic polynomial with the given distinct roots, highest degree first."""
    coeffs = np.array([1.0 + 0j])
    for v in values:
        coeffs = np.convolve(coeffs, np.array([1.0 + 0j, -v]))
    return tuple(coeffs)


def eval_polynomial(coeffs: Sequence[complex], x: np.ndarray) -> np.ndarray:
    return np.polyval(np.asarray(coeffs, dtype=complex), x)


def eigen_expansion(T: CentralOperator) -> EigenExpansion:
    """Expansion T = sum of lambda * P_lambda over the attained spectrum.

    Also returns the minimal polynomial, whose degree equals the number of
    distinct spectrum values and which annihilates T.
    """
    mu = build_mu_T(T)
    pairs = tuple((v, mu.projection_for(v)) for v in mu.values)
    return EigenExpansion(pairs, minimal_polynomial(mu.values))


@dataclass(frozen=True)
class StepApproximation:
    coefficients: tuple[complex, ...]           # each lies in the spectrum
    projections: tuple[CentralOperator, ...]    # pairwise disjoint
    error: float


def freudenthal_approx(T: CentralOperator, eps: float) -> StepApproximation:
    """Approximate T by a disjoint step combination with coefficients in sigma(T).

    Atomic operators have finite spectrum, so the representation is exact
    with one term per spectrum value, for any positive eps.
    """
    if not eps > 0:
        raise PreconditionError("eps must be positive")
    exp = eigen_expansion(T)
    coeffs = tuple(v for v, _ in exp.pairs)
    projs = tuple(p for _, p in exp.pairs)
    approx = np.zeros(T.lattice.dim, dtype=complex)
    for c, p in zip(coeffs, projs):
        approx += c * p.symbol
    err = float(np.max(np.abs(T.symbol - approx)))
    return StepApproximation(coeffs, projs, err)


@dataclass(frozen=True)
class EigenQuery:
    is_eigenvalue: bool
    projection: CentralOperator


def eigen_query(T: CentralOperator, value: complex) -> EigenQuery:
    """Whether ``value`` is an eigenvalue of T, with its eigen-band projection."""
    mask = (T.symbol == value)
    proj = CentralOperator(T.lattice, mask.astype(complex))
    return EigenQuery(bool(np.any(mask)), proj)


# ---------------------------------------------------------------------------
# commutants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CommutantReport:
    """The five commutation conditions for an operator against a central one."""

    with_operator: bool
    with_conjugate: bool
    with_continuous_calculus: bool
    with_spectral_projections: bool
    with_measurable_calculus: bool
    block_pattern: bool          # Xi supported on equal-symbol index classes

    def conditions(self) -> tuple[bool, ...]:
        return (self.with_operator, self.with_conjugate, self.with_continuous_calculus,
                self.with_spectral_projections, self.with_measurable_calculus)

    def all_equivalent(self) -> bool:
        c = self.conditions()
        return all(x == c[0] for x in c) and self.block_pattern == c[0]


def _commutes(A: np.ndarray, B: np.ndarray, tol: float) -> bool:
    return float(np.max(np.abs(A @ B - B @ A))) <= tol


def commutant_check(T: CentralOperator, Xi: RegularOperator,
                    rng: Optional[np.random.Generator] = None,
                    tol: float = TOL_EXACT) -> CommutantReport:
    """Evaluate the five equivalent commutation conditions and the block pattern.

    The continuous-function basis is the monomials id^a conj(id)^b with
    a + b <= dim, which spans all functions on a finite spectrum.
    """
    if Xi.lattice.dim != T.lattice.dim:
        raise DimensionMismatchError("operators have different dimensions")
    rng = np.random.default_rng(0) if rng is None else rng
    n = T.lattice.dim
    X = Xi.entries
    s = T.symbol
    scale = max(1.0, float(np.max(np.abs(X))))
    tol = tol * scale

    c1 = _commutes(np.diag(s), X, tol)
    c2 = _commutes(np.diag(np.conj(s)), X, tol)

    # normalise so monomial powers stay well conditioned
    nrm = T.order_unit_norm()
    sn = s / nrm if nrm > 0 else s
    c3 = True
    for a in range(n + 1):
        for b in range(n + 1 - a):
            g = (sn ** a) * (np.conj(sn) ** b)
            if not _commutes(np.diag(g), X, tol):
                c3 = False
                break
        if not c3:
            break

    mu = build_mu_T(T)
    c4 = all(_commutes(np.diag(p), X, tol) for p in mu.projections)

    c5 = True
    for _ in range(8):
        vals = rng.standard_normal(len(mu.values)) + 1j * rng.standard_normal(len(mu.values))
        table = dict(zip(mu.values, vals))
        g = rho_T(T, table, mu)
        if not _commutes(np.diag(g.symbol), X, tol):
            c5 = False
            break

    block = True
    for i in range(n):
        for j in range(n):
            if s[i] != s[j] and abs(X[i, j]) > tol:
                block = False
                break
        if not block:
            break

    return CommutantReport(c1, c2, c3, c4, c5, block)
