"""Exact complex rational scalars for enumeration oracles.

Floating point is fine for the library proper, but enumeration proofs
(uniqueness of the spectral measure) should not hinge on floating-point
ties, so they run on Fraction-valued complex numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class QComplex:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def make(cls, re, im=0) -> "QComplex":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, QComplex):
            return QComplex(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)
        return QComplex(self.re * other, self.im * other)

    __rmul__ = __mul__

    def conj(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return float(self.re) + 1j * float(self.im)


QC_ZERO = QComplex(Fraction(0))
QC_ONE = QComplex(Fraction(1))
