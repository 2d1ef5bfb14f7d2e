from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class MonodromyMatrix:
    """Values and x-derivatives of the fundamental solutions at x = omega.

    a = phi1(E, omega), b = phi2(E, omega), c = phi1_x(E, omega), d = phi2_x(E, omega)

    det_defect = |ad - bc - 1| is bounded by 1e-8 * scale**2, not absolutely: the
    products ad and bc reach scale**2 and cancel in float64.
    """
    a: complex
    b: complex
    c: complex
    d: complex
    energy: complex
    det_defect: float

    @classmethod
    def from_array(cls, matrix: np.ndarray, energy: complex) -> 'MonodromyMatrix':
        a, b = complex(matrix[0, 0]), complex(matrix[0, 1])
        c, d = complex(matrix[1, 0]), complex(matrix[1, 1])
        return cls(a=a, b=b, c=c, d=d, energy=complex(energy), det_defect=abs(a * d - b * c - 1))

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def half_trace(self) -> complex:
        return (self.a + self.d) / 2

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.a), abs(self.b), abs(self.c), abs(self.d))


@dataclass(frozen=True)
class DiscriminantValue:
    """Delta(E) = (a + d) / 2 with its E-derivatives"""
    delta: complex
    delta_prime: complex
    energy: complex
    est_error: float
    delta_second: Optional[complex] = None


@dataclass(frozen=True)
class FloquetMultipliers:
    rho1: complex
    rho2: complex


@dataclass(frozen=True)
class TaylorJet:
    """Delta and its derivatives at a point from the Cauchy rule on a circle.

    derivatives[0:2] hold the variational Delta and Delta'; cauchy_prime keeps the
    contour estimate of Delta' they were checked against.
    """
    energy: complex
    derivatives: Tuple[complex, ...]
    radius: float
    circle_max: float
    cauchy_prime: Optional[complex] = None
