"""
Exact transfer matrices for constant-coefficient segments.

On a segment of length L where V = c, with z = E - c, the state [psi, psi_x]
propagates by T(z) = [[C, S], [-z S, C]] where C = cos(sqrt(z) L) and
S = sin(sqrt(z) L) / sqrt(z). Both are entire in z, so no branch choice enters.
"""
import cmath
import math
from typing import List

import numpy as np

SERIES_THRESHOLD = 1.0
SERIES_TERMS = 24


def _series(z: complex, length: float):
    """C, S and their first two z-derivatives from the power series."""
    values = [0j] * 6
    l2 = -length * length
    for n in range(SERIES_TERMS):
        a_n = l2 ** n / math.factorial(2 * n)
        b_n = length * l2 ** n / math.factorial(2 * n + 1)
        z_n = z ** n
        values[0] += a_n * z_n
        values[1] += b_n * z_n
        if n >= 1:
            z_n1 = z ** (n - 1)
            values[2] += n * a_n * z_n1
            values[3] += n * b_n * z_n1
        if n >= 2:
            z_n2 = z ** (n - 2)
            values[4] += n * (n - 1) * a_n * z_n2
            values[5] += n * (n - 1) * b_n * z_n2
    return values


def _closed_form(z: complex, length: float):
    k = cmath.sqrt(z)
    c0 = cmath.cos(k * length)
    s0 = cmath.sin(k * length) / k
    c1 = -length * s0 / 2
    s1 = (length * c0 - s0) / (2 * z)
    c2 = -length * s1 / 2
    s2 = (length * c1 - 3 * s1) / (2 * z)
    return [c0, s0, c1, s1, c2, s2]


def segment_jet(z: complex, length: float, order: int) -> List[np.ndarray]:
    """T(z) and its z-derivatives up to order (at most 2)."""
    if abs(z) * length * length < SERIES_THRESHOLD:
        c0, s0, c1, s1, c2, s2 = _series(z, length)
    else:
        c0, s0, c1, s1, c2, s2 = _closed_form(z, length)
    jet = [np.array([[c0, s0], [-z * s0, c0]], dtype=complex)]
    if order >= 1:
        jet.append(np.array([[c1, s1], [-s0 - z * s1, c1]], dtype=complex))
    if order >= 2:
        jet.append(np.array([[c2, s2], [-2 * s1 - z * s2, c2]], dtype=complex))
    return jet


def propagate_segment(jet: List[np.ndarray], z: complex, length: float) -> List[np.ndarray]:
    """Leibniz rule for (T M)^(l) across one segment."""
    order = len(jet) - 1
    t = segment_jet(z, length, order)
    result = [t[0] @ jet[0]]
    if order >= 1:
        result.append(t[1] @ jet[0] + t[0] @ jet[1])
    if order >= 2:
        result.append(t[2] @ jet[0] + 2 * (t[1] @ jet[1]) + t[0] @ jet[2])
    return result


def propagate_jump(jet: List[np.ndarray], strength: complex) -> List[np.ndarray]:
    """psi_x <- psi_x + s psi at a delta impulse; the jump does not depend on E."""
    jump = np.array([[1.0, 0.0], [strength, 1.0]], dtype=complex)
    return [jump @ m for m in jet]
