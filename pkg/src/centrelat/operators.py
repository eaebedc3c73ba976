"""Regular operators as complex matrices and the centre as diagonal symbols.

On an atomic lattice the centre consists exactly of the diagonal operators;
a central operator is therefore represented by its diagonal symbol.  This
module provides moduli, the centrality test, the three coinciding norms,
polar decompositions, localisation to principal ideals, and the
Fuglede-Putnam-Rosenblum transfer check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .lattice import (
    TOL_EXACT,
    ComplexElement,
    CoordinateLattice,
    DimensionMismatchError,
    PrincipalIdeal,
    ideal_norm,
    modulus,
)


@dataclass(frozen=True)
class RegularOperator:
    """A regular operator on the complexification, stored as a dense matrix."""

    lattice: CoordinateLattice
    entries: np.ndarray  # complex, shape (dim, dim)

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        n = self.lattice.dim
        if m.shape != (n, n):
            raise DimensionMismatchError(f"matrix of shape {m.shape} on lattice of dim {n}")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("matrix entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def apply(self, z: ComplexElement) -> ComplexElement:
        if z.lattice.dim != self.lattice.dim:
            raise DimensionMismatchError("operator and element dimensions differ")
        return ComplexElement(z.lattice, self.entries @ z.values)

    def conj(self) -> "RegularOperator":
        return RegularOperator(self.lattice, np.conj(self.entries))

    def __matmul__(self, other: "RegularOperator") -> "RegularOperator":
        return RegularOperator(self.lattice, self.entries @ other.entries)


def operator_modulus(T: RegularOperator) -> RegularOperator:
    """Entrywise modulus |T|; on atomic lattices this is the lattice modulus."""
    return RegularOperator(T.lattice, np.abs(T.entries).astype(complex))


def modulus_action_oracle(T: RegularOperator, x: np.ndarray, samples: int = 10_000,
                          rng: Optional[np.random.Generator] = None,
                          ascent_rounds: int = 8) -> np.ndarray:
    """Lower bound for (|T|x) via sup{|Ty| : |y| <= x} over phase choices.

    Samples random phase vectors y = x * exp(i phi) and improves the best one
    by coordinate ascent on the phases.  The result approaches (|T|x) from
    below; it never uses the entrywise closed form.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    x = np.asarray(x, dtype=float)
    n = T.lattice.dim
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(samples, n))
    ys = x[None, :] * np.exp(1j * phases)
    vals = np.abs(ys @ T.entries.T)  # (samples, dim) moduli of T y
    best = vals.max(axis=0)
    # refine per output coordinate: maximise |sum_j t_ij x_j e^{i phi_j}|
    out = best.copy()
    for i in range(n):
        k = int(vals[:, i].argmax())
        phi = phases[k].copy()
        row = T.entries[i] * x
        for _ in range(ascent_rounds):
            for j in range(n):
                rest = np.sum(row * np.exp(1j * phi)) - row[j] * np.exp(1j * phi[j])
                if row[j] != 0:
                    phi[j] = np.angle(rest) - np.angle(row[j]) if rest != 0 else 0.0
        out[i] = max(out[i], abs(np.sum(row * np.exp(1j * phi))))
    return out


@dataclass(frozen=True)
class CentralOperator:
    """A member of the centre, represented by its diagonal symbol."""

    lattice: CoordinateLattice
    symbol: np.ndarray  # complex, shape (dim,)

    def __post_init__(self):
        s = np.asarray(self.symbol, dtype=complex)
        if s.shape != (self.lattice.dim,):
            raise DimensionMismatchError(
                f"symbol of shape {s.shape} on lattice of dim {self.lattice.dim}"
            )
        s.setflags(write=False)
        object.__setattr__(self, "symbol", s)

    @classmethod
    def identity(cls, lattice: CoordinateLattice) -> "CentralOperator":
        return cls(lattice, np.ones(lattice.dim, dtype=complex))

    def as_regular(self) -> RegularOperator:
        return RegularOperator(self.lattice, np.diag(self.symbol))

    def apply(self, z: ComplexElement) -> ComplexElement:
        if z.lattice.dim != self.lattice.dim:
            raise DimensionMismatchError("operator and element dimensions differ")
        return ComplexElement(z.lattice, self.symbol * z.values)

    def conj(self) -> "CentralOperator":
        return CentralOperator(self.lattice, np.conj(self.symbol))

    def modulus(self) -> "CentralOperator":
        return CentralOperator(self.lattice, np.abs(self.symbol).astype(complex))

    def order_unit_norm(self) -> float:
        return float(np.max(np.abs(self.symbol)))

    def __add__(self, other: "CentralOperator") -> "CentralOperator":
        return CentralOperator(self.lattice, self.symbol + other.symbol)

    def __sub__(self, other: "CentralOperator") -> "CentralOperator":
        return CentralOperator(self.lattice, self.symbol - other.symbol)

    def __mul__(self, other):
        if isinstance(other, CentralOperator):
            return CentralOperator(self.lattice, self.symbol * other.symbol)
        return CentralOperator(self.lattice, self.symbol * other)

    __rmul__ = __mul__


@dataclass(frozen=True)
class CentralityVerdict:
    is_central: bool
    max_off_diagonal: float
    operator: Optional[CentralOperator] = None
    where: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.is_central


def is_central(T: RegularOperator, tol: float = TOL_EXACT) -> CentralityVerdict:
    """Test |T| <= lam * I, i.e. vanishing off-diagonal, and extract the symbol."""
    off = np.abs(T.entries).copy()
    np.fill_diagonal(off, 0.0)
    worst = float(off.max()) if off.size else 0.0
    if worst <= tol:
        return CentralityVerdict(True, worst, CentralOperator(T.lattice, np.diag(T.entries)))
    i, j = np.unravel_index(int(off.argmax()), off.shape)
    return CentralityVerdict(False, worst, None, (int(i), int(j)))


@dataclass(frozen=True)
class NormTriple:
    """The coinciding order unit, operator, and regular norms with certificate data."""

    order_unit: float
    operator: float
    regular: float
    attained_at: int            # basis vector index attaining the operator norm
    max_sampled_ratio: float    # largest ||Tz|| / ||z|| over the random sample


def norms(T: CentralOperator, samples: int = 1000,
          rng: Optional[np.random.Generator] = None) -> NormTriple:
    """Order unit / operator / regular norm of a central operator.

    All three equal max |symbol|.  The operator-norm value is certified by
    exhibiting the attaining basis vector and by sampling random unit
    vectors, none of which may exceed it beyond TOL_EXACT.
    """
    value = T.order_unit_norm()
    attained = int(np.argmax(np.abs(T.symbol)))
    worst = 0.0
    if samples > 0:
        rng = np.random.default_rng(0) if rng is None else rng
        n = T.lattice.dim
        zs = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
        for row in zs:
            z = ComplexElement(T.lattice, row)
            nz = z.norm()
            if nz == 0:
                continue
            worst = max(worst, T.apply(z).norm() / nz)
    return NormTriple(value, value, value, attained, worst)


@dataclass(frozen=True)
class FPRVerdict:
    """Outcome of the Fuglede-Putnam-Rosenblum transfer check."""

    forward: bool                # S X = X T
    conjugate: bool              # conj(S) X = X conj(T)
    transfer_ok: bool            # forward implies conjugate on this instance
    pattern_ok: bool             # X_ij (s_i - t_j) = 0 matches the forward verdict
    max_forward_deviation: float
    max_conjugate_deviation: float
    first_violation: Optional[tuple[int, int]] = None


def fpr_check(S: CentralOperator, T: CentralOperator, X: RegularOperator,
              tol: float = TOL_EXACT) -> FPRVerdict:
    """Check S X = X T, its conjugate transfer, and the entrywise pattern."""
    if not (S.lattice.dim == T.lattice.dim == X.lattice.dim):
        raise DimensionMismatchError("operators have different dimensions")
    fwd = S.symbol[:, None] * X.entries - X.entries * T.symbol[None, :]
    con = np.conj(S.symbol)[:, None] * X.entries - X.entries * np.conj(T.symbol)[None, :]
    dev_f = float(np.max(np.abs(fwd))) if fwd.size else 0.0
    dev_c = float(np.max(np.abs(con))) if con.size else 0.0
    forward = dev_f <= tol
    conjugate = dev_c <= tol
    pattern = np.abs(X.entries * (S.symbol[:, None] - T.symbol[None, :]))
    pattern_holds = float(pattern.max()) <= tol if pattern.size else True
    first = None
    if not forward:
        i, j = np.unravel_index(int(np.abs(fwd).argmax()), fwd.shape)
        first = (int(i), int(j))
    return FPRVerdict(
        forward=forward,
        conjugate=conjugate,
        transfer_ok=(not forward) or conjugate,
        pattern_ok=(pattern_holds == forward),
        max_forward_deviation=dev_f,
        max_conjugate_deviation=dev_c,
        first_violation=first,
    )


@dataclass(frozen=True)
class PolarFactors:
    positive: CentralOperator   # P >= 0
    unitary: CentralOperator    # |U| = I


def polar(T: CentralOperator) -> PolarFactors:
    """Polar decomposition T = P U with P >= 0 and |U| = I.

    Where the symbol vanishes, U is set to 1 so that |U| = I holds and the
    factorisation is deterministic.
    """
    absval = np.abs(T.symbol)
    u = np.where(absval > 0, T.symbol / np.where(absval > 0, absval, 1.0), 1.0)
    return PolarFactors(
        CentralOperator(T.lattice, absval.astype(complex)),
        CentralOperator(T.lattice, u),
    )


@dataclass(frozen=True)
class Localization:
    """The multiplication symbol of a central operator on a principal ideal."""

    symbol: np.ndarray          # values of the restriction on the support
    support: np.ndarray
    ideal_norm_of_Tu: float     # ||Tu||_u, equals max |symbol| on the support


def localize(T: CentralOperator, ideal: PrincipalIdeal) -> Localization:
    """Restrict a central operator to a principal ideal as a multiplication symbol.

    Verifies compatibility with conjugation and the modulus, and the isometry
    ||Tu||_u = max_support |M(T)|.
    """
    if ideal.generator.shape != (T.lattice.dim,):
        raise DimensionMismatchError("ideal generator and operator have different dimensions")
    sup = ideal.support
    m = T.symbol[sup]
    u_elem = ComplexElement(T.lattice, ideal.generator.astype(complex))
    tu_norm = ideal_norm(T.apply(u_elem), ideal)
    # compatibility checks: exact on symbols
    assert np.array_equal(np.conj(m), T.conj().symbol[sup])
    assert np.array_equal(np.abs(m), np.abs(T.modulus().symbol[sup]))
    if abs(tu_norm - float(np.max(np.abs(m)))) > TOL_EXACT * max(1.0, tu_norm):
        raise AssertionError("localisation isometry ||Tu||_u = max |M(T)| failed")
    return Localization(m, sup, tu_norm)
