"""
Local shape of the spectrum at a critical point.
Near E0 with Delta^(j)(E0) = 0 for 1 <= j < k, Delta(E) - Delta(E0) behaves like
Delta^(k)(E0) / k! * (E - E0)^k, so Im Delta vanishes along 2k rays at angles
(j pi - arg Delta^(k)) / k.
"""
import cmath
import logging
import math
from typing import List, Optional

import numpy as np
from scipy.optimize import brentq

from src.business.floquet import monodromy
from src.business.potential import PeriodicPotential
from .exceptions import ArcCountMismatch
from .models import CriticalPoint, LocalShapeReport, Regime

TWO_PI = 2 * math.pi
DEFAULT_PROBE_NODES = 1024
PROBE_RADIUS_FACTOR = 1e-3
ANGLE_XTOL = 1e-12

logger = logging.getLogger(__name__)


def _wrap(angle: float) -> float:
    angle %= TWO_PI
    return angle - TWO_PI if angle >= TWO_PI else angle


def emanating_directions(leading_derivative: complex, order_k: int, regime: Regime,
                         edge_sign: int = 1) -> List[float]:
    """Sorted angles in [0, 2 pi) of the spectral arcs leaving a critical point.

    Interior points get all 2k rays. At an edge only the rays where Delta moves
    back into [-1, 1] survive: odd j for Delta = +1, even j for Delta = -1.
    """
    if order_k < 1:
        raise ValueError(f"Vanishing order must be at least 1, got {order_k}")
    if leading_derivative == 0:
        raise ValueError("Leading derivative must be nonzero")
    if regime == Regime.OFF_SPECTRUM:
        return []

    phase = cmath.phase(leading_derivative)
    angles = []
    for j in range(1, 2 * order_k + 1):
        if regime == Regime.EDGE and (j % 2 == 1) != (edge_sign > 0):
            continue
        angles.append(_wrap((j * math.pi - phase) / order_k))
    return sorted(angles)


def _circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def verify_local_shape(V: PeriodicPotential, point: CriticalPoint,
                       probe_radius: Optional[float] = None,
                       nodes: int = DEFAULT_PROBE_NODES,
                       tol: float = 1e-8, ode_tol: float = 1e-10) -> LocalShapeReport:
    """Count the spectral arcs crossing a small circle around point.e0.

    Sign changes of Im Delta between consecutive probe nodes are bisected in the
    angle; a crossing counts when Re Delta lies in [-1 - tol, 1 + tol] there.

    Raises:
        ArcCountMismatch: If the number of crossings differs from the prediction
    """
    if nodes < 8:
        raise ValueError(f"Probe circle needs at least 8 nodes, got {nodes}")
    e0 = complex(point.e0)
    radius = probe_radius if probe_radius is not None else PROBE_RADIUS_FACTOR * (1 + abs(e0))

    def delta(theta: float) -> complex:
        return monodromy(V, e0 + radius * cmath.exp(1j * theta), ode_tol).half_trace

    # nodes sit half a step off the axes so that real-axis crossings fall between them
    thetas = TWO_PI * (np.arange(nodes) + 0.5) / nodes
    imag = np.array([delta(float(t)).imag for t in thetas])

    measured = []
    for l in range(nodes):
        a, b = float(thetas[l]), float(thetas[(l + 1) % nodes])
        if l == nodes - 1:
            b += TWO_PI
        if (imag[l] < 0) == (imag[(l + 1) % nodes] < 0):
            continue
        theta = brentq(lambda t: delta(t).imag, a, b, xtol=ANGLE_XTOL)
        value = delta(theta)
        if -1 - tol <= value.real <= 1 + tol:
            measured.append(_wrap(theta))
    measured.sort()

    predicted = list(point.directions)
    if len(measured) != len(predicted):
        logger.warning(f"Arc count mismatch at E0={e0}: predicted {predicted}, measured {measured}")
        raise ArcCountMismatch(len(predicted), len(measured), e0)

    error = max((min(_circular_distance(p, m) for m in measured) for p in predicted), default=0.0)
    logger.debug(f"Local shape at E0={e0}: {len(measured)} arcs, max angle error {error:.3g}")
    return LocalShapeReport(
        measured_angles=tuple(measured),
        predicted_angles=tuple(predicted),
        max_angle_error=error,
        arcs_found=len(measured),
        probe_radius=radius,
    )
