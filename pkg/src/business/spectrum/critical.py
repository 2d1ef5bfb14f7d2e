"""
Critical points of the discriminant.
Order of vanishing, regime classification and the arc directions at a point.
"""
import logging
import math
from typing import Optional

from src.business.floquet import FloquetError, TaylorJet, cauchy_jet
from src.business.potential import PeriodicPotential
from .exceptions import OrderUndetermined
from .local_shape import emanating_directions
from .models import CriticalPoint, Regime

ORDER_NOISE = 1e-6
REALITY_TOL = 1e-8
EDGE_BAND = 1e-6
CRITICAL_FACTOR = 1e-7
FIRST_PASS_ORDER = 8
MAX_ORDER = 12

logger = logging.getLogger(__name__)


def critical_threshold(delta_second: complex) -> float:
    """|Delta'| below this counts as a critical point"""
    return CRITICAL_FACTOR * (1 + abs(delta_second))


def vanishing_order(jet: TaylorJet) -> int:
    """First j >= 1 whose derivative clears the Cauchy-rule noise floor.

    The floor j! r^-j max|Delta| 1e-6 is the size of the j-th coefficient a
    relative perturbation of 1e-6 on the circle would produce.
    """
    for j in range(1, len(jet.derivatives)):
        floor = math.factorial(j) * jet.radius ** (-j) * max(jet.circle_max, 1e-300) * ORDER_NOISE
        if abs(jet.derivatives[j]) > floor:
            return j
    raise OrderUndetermined(
        message=(f"All derivatives through order {len(jet.derivatives) - 1} "
                 f"are below the noise floor at E0={jet.energy}"),
        error_type="order",
    )


def classify_regime(delta: complex) -> Regime:
    if abs(delta.imag) > REALITY_TOL:
        return Regime.OFF_SPECTRUM
    if abs(delta.real - 1) < EDGE_BAND or abs(delta.real + 1) < EDGE_BAND:
        return Regime.EDGE
    if abs(delta.real) < 1:
        return Regime.INTERIOR
    return Regime.OFF_SPECTRUM


def _jet(V: PeriodicPotential, E0: complex, tol: float, radius: Optional[float]) -> TaylorJet:
    jet = cauchy_jet(V, E0, FIRST_PASS_ORDER, radius, tol)
    try:
        vanishing_order(jet)
        return jet
    except OrderUndetermined:
        logger.debug(f"Order undetermined through {FIRST_PASS_ORDER} at E0={E0}, extending to {MAX_ORDER}")
        return cauchy_jet(V, E0, MAX_ORDER, radius, tol)


def local_structure(V: PeriodicPotential, E0: complex, tol: float = 1e-10,
                    radius: Optional[float] = None) -> CriticalPoint:
    """Order, regime and emanating directions of the spectrum at E0.

    Raises:
        OrderUndetermined: If no derivative through order 12 clears the noise floor
        InconsistentDerivative: If the Cauchy rule disagrees with the variational Delta'
    """
    E0 = complex(E0)
    jet = _jet(V, E0, tol, radius)
    order_k = vanishing_order(jet)
    delta_at = jet.derivatives[0]
    regime = classify_regime(delta_at)
    leading = jet.derivatives[order_k]
    sign = 1 if delta_at.real > 0 else -1
    directions = emanating_directions(leading, order_k, regime, sign)
    logger.debug(f"Local structure at E0={E0}: k={order_k}, Delta={delta_at}, {regime.value}")
    return CriticalPoint(
        e0=E0,
        order_k=order_k,
        delta_at=delta_at,
        regime=regime,
        directions=tuple(directions),
        leading_derivative=leading,
    )


def try_order(V: PeriodicPotential, E0: complex, tol: float) -> Optional[int]:
    """Vanishing order at E0, or None when it cannot be determined."""
    try:
        return local_structure(V, E0, tol).order_k
    except FloquetError as e:
        logger.debug(f"Order at {E0} unavailable: {e.message}")
    except OrderUndetermined as e:
        logger.debug(e.message)
    return None
