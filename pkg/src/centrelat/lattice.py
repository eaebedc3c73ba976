"""Finite-dimensional coordinate lattices, complex elements, and convergence witnesses.

A coordinate lattice is R^n with the coordinatewise order and a lattice norm.
Complex elements live in the complexification and carry a coordinatewise
modulus.  Claimed sigma-order convergences are certified by an explicit
decreasing dominating sequence (a ConvergenceWitness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

#: Tolerance for checks that are algebraically exact on the data.
TOL_EXACT = 1e-12
#: Tolerance for checks backed by a sampling/grid oracle.
TOL_ORACLE = 1e-9
#: A dominating sequence whose last term is below this is accepted as decaying
#: to zero when no analytic tail rule is supplied.
WITNESS_TOL = 1e-10


class DimensionMismatchError(ValueError):
    """Vectors or operators with incompatible dimensions were combined."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


# ---------------------------------------------------------------------------
# norm specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedPNorm:
    """Weighted ell-p norm; ``p`` may be ``math.inf``."""

    weights: tuple[float, ...]
    p: float = 2.0

    def __post_init__(self):
        if any(w <= 0 for w in self.weights):
            raise ValueError("all weights must be strictly positive")
        if not (self.p >= 1):
            raise ValueError("p must lie in [1, inf]")

    def __call__(self, absx: np.ndarray) -> float:
        w = np.asarray(self.weights, dtype=float)
        if math.isinf(self.p):
            return float(np.max(w * absx)) if absx.size else 0.0
        return float(np.sum(w * absx ** self.p) ** (1.0 / self.p))


@dataclass(frozen=True)
class MaxNorm:
    """Plain sup norm."""

    def __call__(self, absx: np.ndarray) -> float:
        return float(np.max(absx)) if absx.size else 0.0


@dataclass(frozen=True)
class UserNorm:
    """Norm evaluated by a user-supplied rule on the coordinatewise modulus.

    The rule receives |x| so that monotonicity in the modulus (the lattice
    norm property) only depends on the rule being monotone on the positive
    cone.  Spot checks live in the test suite.
    """

    rule: Callable[[np.ndarray], float]

    def __call__(self, absx: np.ndarray) -> float:
        return float(self.rule(absx))


NormSpec = WeightedPNorm | MaxNorm | UserNorm


@dataclass(frozen=True)
class CoordinateLattice:
    """An atomic Banach lattice R^dim with coordinatewise order."""

    dim: int
    norm_spec: NormSpec = field(default_factory=MaxNorm)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if isinstance(self.norm_spec, WeightedPNorm) and len(self.norm_spec.weights) != self.dim:
            raise DimensionMismatchError(
                f"norm has {len(self.norm_spec.weights)} weights for dim {self.dim}"
            )

    def norm(self, x: np.ndarray) -> float:
        """Lattice norm of a real or complex coordinate vector."""
        x = np.asarray(x)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(f"vector of shape {x.shape} on lattice of dim {self.dim}")
        return self.norm_spec(np.abs(x).astype(float))


# ---------------------------------------------------------------------------
# complex elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexElement:
    """An element of the complexification of a coordinate lattice."""

    lattice: CoordinateLattice
    values: np.ndarray  # complex, shape (dim,)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.lattice.dim,):
            raise DimensionMismatchError(
                f"element of shape {values.shape} on lattice of dim {self.lattice.dim}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_parts(cls, lattice: CoordinateLattice, re, im=None) -> "ComplexElement":
        re = np.asarray(re, dtype=float)
        im = np.zeros_like(re) if im is None else np.asarray(im, dtype=float)
        if re.shape != im.shape:
            raise DimensionMismatchError(f"re has shape {re.shape}, im has shape {im.shape}")
        return cls(lattice, re + 1j * im)

    @property
    def re(self) -> np.ndarray:
        return self.values.real

    @property
    def im(self) -> np.ndarray:
        return self.values.imag

    def conj(self) -> "ComplexElement":
        return ComplexElement(self.lattice, np.conj(self.values))

    def modulus(self) -> np.ndarray:
        return modulus(self)

    def norm(self) -> float:
        return self.lattice.norm(self.modulus())

    def __add__(self, other: "ComplexElement") -> "ComplexElement":
        if other.lattice.dim != self.lattice.dim:
            raise DimensionMismatchError("elements on lattices of different dimension")
        return ComplexElement(self.lattice, self.values + other.values)

    def __sub__(self, other: "ComplexElement") -> "ComplexElement":
        if other.lattice.dim != self.lattice.dim:
            raise DimensionMismatchError("elements on lattices of different dimension")
        return ComplexElement(self.lattice, self.values - other.values)

    def __mul__(self, scalar: complex) -> "ComplexElement":
        return ComplexElement(self.lattice, self.values * scalar)

    __rmul__ = __mul__


def modulus(z: ComplexElement) -> np.ndarray:
    """Coordinatewise modulus sqrt(re^2 + im^2) of a complex element."""
    return np.abs(z.values)


def modulus_phase_oracle(z: ComplexElement, grid: int = 1 << 16, refine: bool = True) -> np.ndarray:
    """Modulus via the sup-over-phases definition sup_theta (x cos t + y sin t).

    Evaluates a uniform theta grid and optionally runs one golden-section
    refinement around the grid maximum of each coordinate.  Independent of
    the closed form; used as an oracle against it.
    """
    theta = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    c, s = np.cos(theta), np.sin(theta)
    x, y = z.re, z.im
    # (dim, grid) objective, coordinatewise
    obj = x[:, None] * c[None, :] + y[:, None] * s[None, :]
    best = obj.max(axis=1)
    if not refine:
        return np.maximum(best, 0.0)
    k = obj.argmax(axis=1)
    step = 2.0 * math.pi / grid
    out = np.empty_like(best)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    for i in range(z.lattice.dim):
        f = lambda t: x[i] * math.cos(t) + y[i] * math.sin(t)
        a, b = theta[k[i]] - step, theta[k[i]] + step
        c1, c2 = b - invphi * (b - a), a + invphi * (b - a)
        f1, f2 = f(c1), f(c2)
        for _ in range(60):
            if f1 < f2:
                a, c1, f1 = c1, c2, f2
                c2 = a + invphi * (b - a)
                f2 = f(c2)
            else:
                b, c2, f2 = c2, c1, f1
                c1 = b - invphi * (b - a)
                f1 = f(c1)
        out[i] = max(best[i], f1, f2, 0.0)
    return out


def lattice_ops(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Coordinatewise (join, meet) of two real vectors."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"shapes {x.shape} and {y.shape} differ")
    return np.maximum(x, y), np.minimum(x, y)


# ---------------------------------------------------------------------------
# principal ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrincipalIdeal:
    """The order ideal generated by a nonnegative, nonzero vector."""

    generator: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.generator, dtype=float)
        if u.ndim != 1:
            raise ValueError("generator must be a vector")
        if np.any(u < 0):
            raise ValueError("generator must be nonnegative")
        if not np.any(u > 0):
            raise ValueError("generator must be nonzero")
        u.setflags(write=False)
        object.__setattr__(self, "generator", u)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.generator > 0)

    def contains(self, z: ComplexElement) -> bool:
        off = np.flatnonzero(self.generator == 0)
        return not np.any(z.values[off] != 0)


def ideal_norm(z: ComplexElement, ideal: PrincipalIdeal) -> float:
    """Order unit norm of z in the ideal: inf{lam >= 0 : |z| <= lam * u}."""
    u = ideal.generator
    if u.shape != (z.lattice.dim,):
        raise DimensionMismatchError("ideal generator and element have different dimensions")
    absz = modulus(z)
    off = np.flatnonzero(u == 0)
    bad = off[absz[off] != 0] if off.size else off
    if bad.size:
        raise DomainError(f"element does not lie in the ideal: coordinate {int(bad[0])} "
                          "is nonzero outside the support")
    sup = ideal.support
    return float(np.max(absz[sup] / u[sup]))


# ---------------------------------------------------------------------------
# sigma-order convergence certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceWitness:
    """A decreasing dominating sequence certifying sigma-order convergence.

    ``dominating`` lists u_1 >= u_2 >= ... coordinatewise.  Decay to zero is
    certified either by an analytic ``tail`` rule (an upper bound on the sup
    of u_n for each n, decreasing to 0) or, failing that, by the last term
    dropping below ``WITNESS_TOL``.
    """

    dominating: tuple[np.ndarray, ...]
    claim: str = ""
    tail: Optional[Callable[[int], float]] = None

    def __post_init__(self):
        doms = tuple(np.asarray(u, dtype=float) for u in self.dominating)
        for u in doms:
            u.setflags(write=False)
        object.__setattr__(self, "dominating", doms)


@dataclass(frozen=True)
class WitnessVerdict:
    ok: bool
    first_violation: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_witness(values: Sequence[ComplexElement], limit: ComplexElement,
                  witness: ConvergenceWitness, tol: float = WITNESS_TOL) -> WitnessVerdict:
    """Verify that a witness certifies values_n -> limit in sigma-order.

    Checks that the dominating sequence is coordinatewise nonincreasing, that
    |values_n - limit| <= u_n for every term, and that the tail decays to
    zero (analytic rule, or last term below ``tol``).
    """
    doms = witness.dominating
    if len(values) > len(doms):
        return WitnessVerdict(False, None, "witness shorter than the value sequence")
    for n, u in enumerate(doms):
        if np.any(u < 0):
            return WitnessVerdict(False, n, "dominating term has a negative coordinate")
        if n > 0 and np.any(u > doms[n - 1] + 0.0):
            return WitnessVerdict(False, n, "dominating sequence increases")
    for n, z in enumerate(values):
        diff = modulus(z - limit)
        if np.any(diff > doms[n] + TOL_EXACT):
            return WitnessVerdict(False, n, "domination fails")
    if witness.tail is not None:
        probes = [max(1, len(doms)), 4 * len(doms) + 16, 64 * len(doms) + 256, 10 ** 9, 10 ** 12]
        bounds = [witness.tail(n) for n in probes]
        if any(b2 > b1 + TOL_EXACT for b1, b2 in zip(bounds, bounds[1:])):
            return WitnessVerdict(False, None, "tail rule is not nonincreasing")
        if bounds[-1] > 1e-6:
            return WitnessVerdict(False, None, "tail rule does not certify decay to zero")
        return WitnessVerdict(True)
    if doms and float(np.max(doms[-1])) < tol:
        return WitnessVerdict(True)
    if not doms:
        return WitnessVerdict(True, None, "empty witness for empty sequence")
    return WitnessVerdict(False, len(doms) - 1,
                          "no tail rule and last dominating term is not below tolerance")
