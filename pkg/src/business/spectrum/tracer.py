"""
Spectral arc tracer.
Follows the level set Im Delta = 0 with Re Delta in [-1, 1] by predictor-corrector
continuation. The tangent is conj(Delta') / |Delta'|, along which Delta moves in the
real direction; the corrector runs Newton on Im Delta along the normal.

Arcs run from the end reached by increasing Re Delta to the end reached by
decreasing it.
"""
import cmath
import logging
from typing import List, Optional, Tuple

from src.business.floquet import DiscriminantValue, discriminant
from src.business.potential import PeriodicPotential
from .critical import critical_threshold, try_order
from .exceptions import CorrectorDiverged, SeedNotOnSpectrum
from .membership import in_spectrum
from .models import ArcEndpoint, EndpointKind, SpectralArc, TraceConfig

MAX_NEWTON = 8
MAX_HALVINGS = 5
STEP_GROWTH = 1.5
PREDICT_FRACTION = 0.9
CORRECT_FRACTION = 0.5
EDGE_XTOL = 1e-10

logger = logging.getLogger(__name__)

Leg = Tuple[List[complex], List[float], ArcEndpoint]


def _unit_tangent(dv: DiscriminantValue) -> Optional[complex]:
    g = dv.delta_prime.conjugate()
    size = abs(g)
    return g / size if size > 0 else None


def correct(V: PeriodicPotential, predicted: complex, normal: complex, trace_tol: float,
            ode_tol: float = 1e-10) -> Optional[Tuple[complex, DiscriminantValue]]:
    """Newton on Im Delta along the fixed direction normal.

    Returns the corrected energy and its discriminant data, or None when the
    iteration does not reach |Im Delta| <= trace_tol / 2 within eight steps.
    """
    energy = complex(predicted)
    for _ in range(MAX_NEWTON + 1):
        dv = discriminant(V, energy, ode_tol, with_second=True)
        residual = dv.delta.imag
        if abs(residual) <= CORRECT_FRACTION * trace_tol:
            return energy, dv
        slope = (dv.delta_prime * normal).imag
        if slope == 0:
            return None
        energy -= residual / slope * normal
    return None


def _advance(V: PeriodicPotential, energy: complex, tangent: complex, h: float,
             cfg: TraceConfig) -> Tuple[complex, DiscriminantValue, complex, float]:
    for _ in range(MAX_HALVINGS + 1):
        result = correct(V, energy + h * tangent, 1j * tangent, cfg.trace_tol, cfg.ode_tol)
        if result is not None:
            new_energy, dv = result
            new_tangent = _unit_tangent(dv) or tangent
            if (new_tangent * tangent.conjugate()).real < 0:
                new_tangent = -new_tangent
            turn = abs(cmath.phase(new_tangent * tangent.conjugate()))
            if abs(new_energy - energy) <= cfg.step and turn <= cfg.max_turn:
                return new_energy, dv, new_tangent, h
        h /= 2
        logger.debug(f"Halving step to {h:.3g} at E={energy}")
    raise CorrectorDiverged(
        message=f"Corrector failed after {MAX_HALVINGS} step halvings at E={energy}",
        error_type="corrector",
    )


def _locate_edge(V: PeriodicPotential, energy: complex, dv: DiscriminantValue,
                 tangent: complex, h: float, cfg: TraceConfig) -> Tuple[complex, DiscriminantValue]:
    """Bisect the step parameter until the last in-band point is within 1e-10 of |Re Delta| = 1."""
    lo, hi = 0.0, h
    best = (energy, dv)
    while hi - lo > EDGE_XTOL:
        mid = 0.5 * (lo + hi)
        result = correct(V, energy + mid * tangent, 1j * tangent, cfg.trace_tol, cfg.ode_tol)
        if result is None:
            break
        if abs(result[1].delta.real) > 1:
            hi = mid
        else:
            lo, best = mid, result
    return best


def _near_known_critical(energy: complex, cfg: TraceConfig) -> Optional[complex]:
    for point in cfg.critical_points:
        if abs(energy - point) < cfg.step:
            return point
    return None


def _trace_leg(V: PeriodicPotential, seed: complex, seed_dv: DiscriminantValue,
               orientation: int, budget: int, cfg: TraceConfig) -> Leg:
    points, deltas = [seed], [seed_dv.delta.real]
    energy, dv = seed, seed_dv
    tangent = _unit_tangent(dv)
    max_predict = PREDICT_FRACTION * cfg.step
    h = max_predict

    while True:
        if tangent is None or abs(dv.delta_prime) < critical_threshold(dv.delta_second):
            order = try_order(V, energy, cfg.ode_tol)
            return points, deltas, ArcEndpoint(EndpointKind.CRITICAL_POINT, energy, order=order)
        if len(points) >= budget:
            return points, deltas, ArcEndpoint(EndpointKind.STEP_LIMIT, energy)
        if len(points) == 1:
            tangent *= orientation

        new_energy, new_dv, new_tangent, h_used = _advance(V, energy, tangent, h, cfg)

        if not cfg.box.contains(new_energy):
            return points, deltas, ArcEndpoint(EndpointKind.BOX_EXIT, energy)

        if abs(new_dv.delta.real) > 1 + cfg.trace_tol:
            sign = 1 if new_dv.delta.real > 0 else -1
            edge, edge_dv = _locate_edge(V, energy, dv, tangent, h_used, cfg)
            if edge != energy:
                points.append(edge)
                deltas.append(edge_dv.delta.real)
            return points, deltas, ArcEndpoint(EndpointKind.BAND_EDGE, edge, sign=sign)

        points.append(new_energy)
        deltas.append(new_dv.delta.real)

        known = _near_known_critical(new_energy, cfg)
        if known is not None:
            return points, deltas, ArcEndpoint(EndpointKind.CRITICAL_POINT, known)

        energy, dv, tangent = new_energy, new_dv, new_tangent
        h = min(max_predict, h_used * STEP_GROWTH)


def trace_arc(V: PeriodicPotential, seed: complex, cfg: TraceConfig) -> SpectralArc:
    """Trace the spectral arc through seed in both directions.

    Raises:
        SeedNotOnSpectrum: If seed fails the membership test at trace_tol
        CorrectorDiverged: If a step fails after five halvings
    """
    seed = complex(seed)
    if not in_spectrum(V, seed, cfg.trace_tol, cfg.ode_tol):
        raise SeedNotOnSpectrum(
            message=f"Seed E={seed} is not on the spectrum at tol={cfg.trace_tol}",
            error_type="seed",
        )
    seed_dv = discriminant(V, seed, cfg.ode_tol, with_second=True)

    up_points, up_deltas, start = _trace_leg(V, seed, seed_dv, 1, cfg.max_points, cfg)
    budget = cfg.max_points - len(up_points) + 1
    down_points, down_deltas, end = _trace_leg(V, seed, seed_dv, -1, budget, cfg)

    points = up_points[::-1] + down_points[1:]
    deltas = up_deltas[::-1] + down_deltas[1:]
    logger.debug(f"Traced arc through {seed}: {len(points)} points, "
                 f"{start.label} -> {end.label}")
    return SpectralArc(
        points=tuple(points),
        delta_values=tuple(deltas),
        start_kind=start,
        end_kind=end,
    )
