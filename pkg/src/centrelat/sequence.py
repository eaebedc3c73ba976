"""Certified sequence-mode central operators with countable spectra.

An infinite diagonal operator is described by a symbol rule i -> lambda_i
together with certificates: a sup bound, the declared accumulation set, a
tail rule t(N) bounding the distance of lambda_i (i > N) to the accumulation
set, and a multiplicity rule for attained values.  The library validates
certificates on sampled prefixes and treats them as trusted beyond the
sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .lattice import TOL_EXACT
from .spectral import Spectrum

#: Default number of leading indices validated against the certificates.
DEFAULT_SAMPLE = 10_000

#: Epsilon schedule on which spectrum certificates are exercised.
EPS_SCHEDULE = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)


class CertificateError(ValueError):
    """A sequence-mode certificate fails on the sampled prefix."""


@dataclass(frozen=True)
class SequenceCentralOperator:
    """A certified diagonal operator on a countable atomic lattice.

    ``rule`` maps a 1-based index to the symbol value.  ``tail`` is a
    nonincreasing bound with sup_{i>N} dist(lambda_i, accumulation) <= t(N)
    and t(N) -> 0.  ``multiplicity`` gives the number of indices attaining a
    value (math.inf for infinitely many).
    """

    rule: Callable[[int], complex]
    sup_bound: float
    accumulation: tuple[complex, ...] = ()
    tail: Optional[Callable[[int], float]] = None
    multiplicity: Optional[Callable[[complex], float]] = None
    name: str = "custom"
    params: Mapping[str, float] = field(default_factory=dict)

    def prefix(self, n: int) -> np.ndarray:
        return np.array([self.rule(i) for i in range(1, n + 1)], dtype=complex)


def _reciprocal_multiplicity(v: complex, shift: float = 0.0) -> float:
    w = complex(v) - shift
    if w.imag != 0.0 or w.real <= 0.0:
        return 0.0
    k = round(1.0 / w.real)
    return 1.0 if k >= 1 and 1.0 / k == w.real else 0.0


def reciprocal() -> SequenceCentralOperator:
    """lambda_i = 1/i, accumulating at 0 with tail bound 1/(N+1)."""
    return SequenceCentralOperator(
        rule=lambda i: 1.0 / i,
        sup_bound=1.0,
        accumulation=(0.0,),
        tail=lambda n: 1.0 / (n + 1),
        multiplicity=_reciprocal_multiplicity,
        name="reciprocal",
    )


def constant(c: complex = 1.0) -> SequenceCentralOperator:
    """lambda_i = c for all i."""
    return SequenceCentralOperator(
        rule=lambda i: c,
        sup_bound=abs(c),
        accumulation=(c,),
        tail=lambda n: 0.0,
        multiplicity=lambda v: math.inf if v == c else 0.0,
        name="constant",
        params={"value_re": complex(c).real, "value_im": complex(c).imag},
    )


def shifted_reciprocal(shift: float = 1.0) -> SequenceCentralOperator:
    """lambda_i = shift + 1/i, accumulating at the shift."""
    return SequenceCentralOperator(
        rule=lambda i: shift + 1.0 / i,
        sup_bound=abs(shift) + 1.0,
        accumulation=(complex(shift),),
        tail=lambda n: 1.0 / (n + 1),
        multiplicity=lambda v: _reciprocal_multiplicity(v, shift),
        name="shifted_reciprocal",
        params={"shift": shift},
    )


def geometric(ratio: float = 0.5) -> SequenceCentralOperator:
    """lambda_i = ratio^i, accumulating at 0."""
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")
    return SequenceCentralOperator(
        rule=lambda i: ratio ** i,
        sup_bound=ratio,
        accumulation=(0.0,),
        tail=lambda n: ratio ** (n + 1),
        multiplicity=lambda v, r=ratio: (
            1.0 if complex(v).imag == 0.0 and complex(v).real > 0.0
            and r ** max(1, round(math.log(complex(v).real, r))) == complex(v).real
            else 0.0),
        name="geometric",
        params={"ratio": ratio},
    )


BUILTIN_RULES: dict[str, Callable[..., SequenceCentralOperator]] = {
    "reciprocal": reciprocal,
    "constant": constant,
    "shifted_reciprocal": shifted_reciprocal,
    "geometric": geometric,
}


def _dist_to_accumulation(values: np.ndarray, accumulation: Sequence[complex]) -> np.ndarray:
    if not accumulation:
        return np.full(len(values), math.inf)
    acc = np.asarray(accumulation, dtype=complex)
    return np.min(np.abs(values[:, None] - acc[None, :]), axis=1)


def validate_certificate(op: SequenceCentralOperator, sample: int = DEFAULT_SAMPLE,
                         schedule: Sequence[float] = EPS_SCHEDULE) -> None:
    """Validate the sup bound and the tail certificate on a sampled prefix.

    For each epsilon in the schedule with N(eps) inside the sample, all
    lambda_i with i > N(eps) must lie within eps of the accumulation set.
    Raises CertificateError with a witness index on failure.
    """
    values = op.prefix(sample)
    mods = np.abs(values)
    if np.any(mods > op.sup_bound + TOL_EXACT):
        i = int(np.argmax(mods > op.sup_bound + TOL_EXACT))
        raise CertificateError(f"sup bound violated at index {i + 1}")
    if op.tail is None:
        return
    dist = _dist_to_accumulation(values, op.accumulation)
    for eps in schedule:
        n = next((n for n in range(1, sample) if op.tail(n) <= eps), None)
        if n is None:
            continue
        bad = np.flatnonzero(dist[n:] > eps + TOL_EXACT)
        if bad.size:
            raise CertificateError(
                f"tail certificate violated at index {n + 1 + int(bad[0])} for eps={eps}")


def sequence_spectrum(op: SequenceCentralOperator, prefix: int = DEFAULT_SAMPLE,
                      validate: bool = True) -> Spectrum:
    """Attained prefix values union the declared accumulation set."""
    if validate:
        validate_certificate(op, sample=prefix)
    values = op.prefix(prefix)
    seen: set[complex] = set()
    attained: list[complex] = []
    for v in values:
        v = complex(v)
        if v not in seen:
            seen.add(v)
            attained.append(v)
    return Spectrum(tuple(attained), tuple(complex(a) for a in op.accumulation))


@dataclass(frozen=True)
class CompactnessVerdict:
    compact: bool
    reason: str

    def __bool__(self) -> bool:
        return self.compact


def compactness_check(op: SequenceCentralOperator, sample: int = DEFAULT_SAMPLE,
                      tol: float = TOL_EXACT) -> CompactnessVerdict:
    """Compact iff the only limit point is zero and nonzero values have
    finite multiplicity."""
    for a in op.accumulation:
        if abs(complex(a)) > tol:
            return CompactnessVerdict(False, f"limit point {a} is nonzero")
    values = op.prefix(sample)
    distinct = {complex(v) for v in values}
    if op.multiplicity is None:
        counts: dict[complex, int] = {}
        for v in values:
            counts[complex(v)] = counts.get(complex(v), 0) + 1
        repeated = [v for v, c in counts.items() if c > 1 and abs(v) > tol]
        if repeated:
            raise CertificateError(
                f"multiplicity rule required for repeated value {repeated[0]}")
    else:
        for v in distinct:
            if abs(v) <= tol:
                continue
            if not math.isfinite(op.multiplicity(v)):
                return CompactnessVerdict(
                    False, f"eigenspace for {v} is infinite dimensional")
    return CompactnessVerdict(True, "limit points in {0} and finite nonzero multiplicities")


@dataclass(frozen=True)
class TailDominationRecord:
    n_terms: int
    certified_bound: float       # t(N)
    sampled_tail_sup: float      # sup over sampled indices > N of |lambda_i|-distance

    @property
    def dominated(self) -> bool:
        return self.sampled_tail_sup <= self.certified_bound + TOL_EXACT


def expansion_tail_report(op: SequenceCentralOperator, checkpoints: Sequence[int],
                          sample: int = DEFAULT_SAMPLE) -> list[TailDominationRecord]:
    """Partial-sum remainders of the eigen expansion against the tail witness.

    After N terms the remainder of T - sum lambda_i P_i is supported on
    indices > N, where the symbol is within t(N) of the accumulation set;
    for accumulation {0} the remainder sup is therefore bounded by t(N).
    """
    if op.tail is None:
        raise CertificateError("tail rule required for expansion domination")
    values = op.prefix(sample)
    dist = _dist_to_accumulation(values, op.accumulation)
    records = []
    for n in checkpoints:
        if n >= sample:
            raise ValueError("checkpoint beyond the sampled prefix")
        records.append(TailDominationRecord(
            n_terms=n,
            certified_bound=float(op.tail(n)),
            sampled_tail_sup=float(np.max(dist[n:])),
        ))
    return records


@dataclass(frozen=True)
class SequenceStepApproximation:
    coefficients: tuple[complex, ...]
    breakpoint: int              # indices <= breakpoint keep their own value
    certified_error: float


def freudenthal_net(op: SequenceCentralOperator, eps: float,
                    sample: int = DEFAULT_SAMPLE) -> SequenceStepApproximation:
    """Eps-net step approximation with coefficients in the certified spectrum.

    Leading indices up to N(eps) keep their attained value; the tail is sent
    to the nearest certified spectrum member (an attained value or an
    accumulation point), giving error at most eps.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if op.tail is None:
        raise CertificateError("tail rule required for the eps-net construction")
    n = next((n for n in range(1, sample) if op.tail(n) <= eps), None)
    if n is None:
        raise CertificateError("tail rule does not reach eps within the sampled prefix")
    head = [complex(v) for v in op.prefix(n)]
    # tail representatives: the accumulation points, which belong to the
    # certified spectrum; each tail index is within t(n) <= eps of one of them
    reps = [complex(a) for a in op.accumulation]
    if not reps:
        raise CertificateError("an accumulation set is required for the eps-net")
    coeffs = tuple(dict.fromkeys(head + reps))
    return SequenceStepApproximation(coeffs, n, float(op.tail(n)))


@dataclass(frozen=True)
class SequenceEigenQuery:
    in_spectrum: bool
    is_eigenvalue: bool


def sequence_eigen_query(op: SequenceCentralOperator, value: complex,
                         sample: int = DEFAULT_SAMPLE) -> SequenceEigenQuery:
    """Whether a value lies in the certified spectrum and is an eigenvalue.

    An unattained accumulation point belongs to the spectrum but carries a
    zero spectral projection, hence is not an eigenvalue.
    """
    value = complex(value)
    if op.multiplicity is not None:
        # the certificate is authoritative (sampling can underflow)
        attained = op.multiplicity(value) > 0
    else:
        attained = any(complex(v) == value for v in op.prefix(sample))
    in_spec = attained or any(complex(a) == value for a in op.accumulation)
    return SequenceEigenQuery(in_spec, attained)


def annihilation_residuals(op: SequenceCentralOperator,
                           coeffs: Sequence[complex],
                           sample: int = DEFAULT_SAMPLE) -> float:
    """Sampled sup of |p(lambda_i)| for a monic polynomial given by coeffs."""
    values = op.prefix(sample)
    return float(np.max(np.abs(np.polyval(np.asarray(coeffs, dtype=complex), values))))


def monic_candidates(op: SequenceCentralOperator, max_degree: int = 8,
                     sample: int = DEFAULT_SAMPLE,
                     rng: Optional[np.random.Generator] = None) -> list[tuple[complex, ...]]:
    """Candidate monic annihilators of degree <= max_degree.

    Sliding products over windows of distinct sampled spectrum values, which
    are the best possible annihilators on those windows, plus random monic
    polynomials.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    distinct: list[complex] = []
    seen: set[complex] = set()
    for v in op.prefix(sample):
        v = complex(v)
        if v not in seen:
            seen.add(v)
            distinct.append(v)
    candidates: list[tuple[complex, ...]] = []
    for d in range(1, max_degree + 1):
        for start in range(0, min(len(distinct) - d, 12)):
            c = np.array([1.0 + 0j])
            for v in distinct[start:start + d]:
                c = np.convolve(c, np.array([1.0 + 0j, -v]))
            candidates.append(tuple(c))
        for _ in range(4):
            c = np.concatenate(([1.0 + 0j],
                                rng.standard_normal(d) + 1j * rng.standard_normal(d)))
            candidates.append(tuple(c))
    return candidates
