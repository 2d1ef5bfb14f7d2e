"""
Higher E-derivatives of the discriminant.
Delta is entire, so Delta^(j)(E0) = j! / (2 pi i) * contour integral of
Delta(z) / (z - E0)^(j+1) over a circle; the trapezoid rule on m equispaced nodes
is spectrally accurate and reduces to a discrete Fourier transform of the samples.
"""
import cmath
import logging
import math
from typing import List, Optional

import numpy as np

from src.business.potential import PeriodicPotential
from .exceptions import InconsistentDerivative
from .integrator import discriminant, monodromy_jet
from .models import TaylorJet

MAX_ORDER = 12
MIN_NODES = 64
RADIUS_RETRIES = 3
CONSISTENCY_FACTOR = 1e3

logger = logging.getLogger(__name__)


def default_radius(E0: complex) -> float:
    return 0.1 * (1 + abs(E0))


def _cauchy_samples(V: PeriodicPotential, E0: complex, radius: float, nodes: int,
                    tol: float) -> np.ndarray:
    values = np.empty(nodes, dtype=complex)
    for l in range(nodes):
        z = E0 + radius * cmath.exp(2j * math.pi * l / nodes)
        jet, _ = monodromy_jet(V, z, tol, order=0)
        values[l] = np.trace(jet[0]) / 2
    return values


def _jet_on_circle(V: PeriodicPotential, E0: complex, max_order: int, radius: float,
                   tol: float) -> TaylorJet:
    nodes = max(MIN_NODES, 8 * max_order)
    values = _cauchy_samples(V, E0, radius, nodes, tol)
    coefficients = np.fft.fft(values) / nodes
    cauchy = [math.factorial(j) * complex(coefficients[j]) / radius ** j
              for j in range(max_order + 1)]
    circle_max = float(np.abs(values).max())

    direct = discriminant(V, E0, tol)
    mismatch = abs(cauchy[1] - direct.delta_prime)
    allowed = CONSISTENCY_FACTOR * tol * max(1.0, circle_max)
    if mismatch > allowed:
        raise InconsistentDerivative(
            message=(f"Cauchy Delta' {cauchy[1]} and variational Delta' {direct.delta_prime} "
                     f"differ by {mismatch:.3g} at E0={E0}, radius={radius:.3g}"),
            error_type="derivative",
        )
    cauchy_prime = cauchy[1]
    cauchy[0], cauchy[1] = direct.delta, direct.delta_prime
    return TaylorJet(energy=complex(E0), derivatives=tuple(cauchy), radius=radius,
                     circle_max=circle_max, cauchy_prime=cauchy_prime)


def cauchy_jet(V: PeriodicPotential, E0: complex, max_order: int,
               radius: Optional[float] = None, tol: float = 1e-10) -> TaylorJet:
    """Taylor data of Delta at E0 with the circle used to compute it.

    With radius omitted the default 0.1 (1 + |E0|) is used and halved up to three
    times on InconsistentDerivative.
    """
    if not 1 <= max_order <= MAX_ORDER:
        raise ValueError(f"max_order must lie in [1, {MAX_ORDER}], got {max_order}")
    if radius is not None:
        if not radius > 0:
            raise ValueError(f"radius must be positive, got {radius}")
        return _jet_on_circle(V, complex(E0), max_order, radius, tol)

    radius = default_radius(E0)
    for attempt in range(RADIUS_RETRIES + 1):
        try:
            return _jet_on_circle(V, complex(E0), max_order, radius, tol)
        except InconsistentDerivative as e:
            if attempt == RADIUS_RETRIES:
                raise
            logger.debug(f"{e.message}; retrying with radius {radius / 2:.3g}")
            radius /= 2


def derivatives_at(V: PeriodicPotential, E0: complex, max_order: int,
                   radius: Optional[float] = None, tol: float = 1e-10) -> List[complex]:
    """[Delta(E0), Delta'(E0), ..., Delta^(max_order)(E0)]

    Raises:
        InconsistentDerivative: If the Cauchy and variational Delta' disagree by
            more than 1e3 * tol (scaled by max |Delta| on the circle)
    """
    return list(cauchy_jet(V, E0, max_order, radius, tol).derivatives)
