"""
Closed-form monodromy matrices for exactly solvable potentials.
Ground truth for the integrator tests.
"""
from typing import Optional

import numpy as np

from src.business.floquet.models import MonodromyMatrix
from src.business.potential import DeltaComb, FourierSeries, PeriodicPotential, PiecewiseConstant
from .models import Constant, Free, Impulses, OracleKind, Segments

SMALL_K_THRESHOLD = 1e-12


def _constant_matrix(c: complex, length: float, E: complex, branch: int = 1) -> np.ndarray:
    """[[cos(kL), sin(kL)/k], [-k sin(kL), cos(kL)]] with k = sqrt(E - c)."""
    k = branch * np.sqrt(complex(E - c))
    if abs(k) ** 2 * length ** 2 < SMALL_K_THRESHOLD:
        return np.array([[1.0, length], [0.0, 1.0]], dtype=complex)
    kl = k * length
    return np.array([
        [np.cos(kl), np.sin(kl) / k],
        [-k * np.sin(kl), np.cos(kl)],
    ], dtype=complex)


def _jump_matrix(strength: complex) -> np.ndarray:
    return np.array([[1.0, 0.0], [strength, 1.0]], dtype=complex)


def _oracle_array(kind: OracleKind, omega: float, E: complex, branch: int = 1) -> np.ndarray:
    if isinstance(kind, Free):
        return _constant_matrix(0j, omega, E, branch)
    if isinstance(kind, Constant):
        return _constant_matrix(kind.c, omega, E, branch)
    if isinstance(kind, Segments):
        matrix = np.eye(2, dtype=complex)
        for length, value in kind.segments:
            matrix = _constant_matrix(value, length, E, branch) @ matrix
        return matrix
    if isinstance(kind, Impulses):
        matrix = np.eye(2, dtype=complex)
        position = 0.0
        for impulse_at, strength in kind.impulses:
            if impulse_at > position:
                matrix = _constant_matrix(kind.background, impulse_at - position, E, branch) @ matrix
            matrix = _jump_matrix(strength) @ matrix
            position = impulse_at
        if omega > position:
            matrix = _constant_matrix(kind.background, omega - position, E, branch) @ matrix
        return matrix
    raise TypeError(f"Unknown oracle kind: {kind!r}")


def oracle_monodromy(kind: OracleKind, omega: float, E: complex) -> MonodromyMatrix:
    return MonodromyMatrix.from_array(_oracle_array(kind, omega, complex(E)), complex(E))


def oracle_discriminant(kind: OracleKind, omega: float, E: complex, branch: int = 1) -> complex:
    """Half-trace of the closed-form monodromy; branch=-1 uses the other square root."""
    return complex(np.trace(_oracle_array(kind, omega, complex(E), branch)) / 2)


def kind_from_potential(V: PeriodicPotential) -> Optional[OracleKind]:
    """OracleKind for exactly solvable potentials, None otherwise."""
    body = V.body
    if isinstance(body, FourierSeries) and body.is_constant:
        c = body.mean
        return Free() if c == 0 else Constant(c)
    if isinstance(body, PiecewiseConstant):
        return Segments(tuple((length, complex(v)) for length, v in body.segments))
    if isinstance(body, DeltaComb):
        return Impulses(complex(body.background), tuple((p, complex(s)) for p, s in body.impulses))
    return None


def free_discriminant(omega: float, E: complex) -> complex:
    """cos(omega sqrt(E)), the free-particle discriminant."""
    return complex(np.cos(omega * np.sqrt(complex(E))))


def free_discriminant_prime(omega: float, E: complex) -> complex:
    """-omega sin(omega sqrt(E)) / (2 sqrt(E)), with limit -omega^2/2 at E = 0."""
    k = np.sqrt(complex(E))
    if abs(k) * omega < 1e-8:
        return complex(-omega ** 2 / 2)
    return complex(-omega * np.sin(omega * k) / (2 * k))


