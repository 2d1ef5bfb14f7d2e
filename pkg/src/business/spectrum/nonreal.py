"""
Non-real spectrum of PT-symmetric potentials.
A real extremum E0 of Delta with -1 < Delta(E0) < 1 has vanishing order k >= 2,
so 2k spectral arcs leave it and at least two of them leave the real axis.
Tracing those arcs produces non-real points of the spectrum, which come in
complex-conjugate pairs.
"""
import cmath
import logging
from typing import List, Optional, Tuple

from scipy.optimize import brentq

from src.business.floquet import discriminant
from src.business.potential import PeriodicPotential, bound_region, check_pt_symmetry
from .critical import REALITY_TOL, local_structure
from .exceptions import NotPTSymmetric, SeedNotOnSpectrum, SpectrumError
from .membership import in_spectrum, scan_real_line
from .models import EnergyBox, NonrealCertificate, Regime, ScanResult, TraceConfig
from .tracer import correct, trace_arc

INDETERMINATE_BAND = 1e-6
MIN_WITNESS_IM = 1e-4
MIN_DIRECTION_SIN = 0.1
EXTREMUM_XTOL = 1e-12
SEED_OFFSET_FACTOR = 1e-2
WITNESS_TRACE_POINTS = 12

logger = logging.getLogger(__name__)


def refine_extremum(V: PeriodicPotential, bracket: Tuple[float, float], ode_tol: float) -> float:
    """Zero of Re Delta' inside a sign-change bracket."""
    return brentq(lambda e: discriminant(V, e, ode_tol).delta_prime.real,
                  bracket[0], bracket[1], xtol=EXTREMUM_XTOL)


def _pick(points: List[complex], count: int) -> List[complex]:
    if len(points) <= count:
        return points
    stride = (len(points) - 1) / (count - 1) if count > 1 else 0
    return [points[round(i * stride)] for i in range(count)]


def _witnesses(V: PeriodicPotential, e0: float, directions: Tuple[float, ...], box: EnergyBox,
               offset: float, trace_points: int, per_arc: int,
               tol: float, ode_tol: float) -> List[complex]:
    cfg = TraceConfig(step=offset / 2, trace_tol=tol, max_points=trace_points, box=box,
                      ode_tol=ode_tol, critical_points=(complex(e0),))
    found: List[complex] = []
    for theta in directions:
        direction = cmath.exp(1j * theta)
        if direction.imag <= MIN_DIRECTION_SIN:
            continue
        corrected = correct(V, e0 + offset * direction, 1j * direction, tol, ode_tol)
        if corrected is None:
            logger.warning(f"Could not seed the arc leaving E0={e0} at angle {theta:.4f}")
            continue
        seed = corrected[0]
        try:
            candidates = list(trace_arc(V, seed, cfg).points)
        except SeedNotOnSpectrum:
            logger.warning(f"Could not seed the arc leaving E0={e0} at angle {theta:.4f}")
            continue
        except SpectrumError as e:
            logger.warning(f"Arc from E0={e0} at angle {theta:.4f} not traced: {e.message}")
            candidates = [seed]

        for point in _pick([p for p in candidates if p.imag >= MIN_WITNESS_IM], per_arc):
            mirror = point.conjugate()
            if in_spectrum(V, point, tol, ode_tol) and in_spectrum(V, mirror, tol, ode_tol):
                found.extend((point, mirror))
    return found


def detect_nonreal_from_extremum(V: PeriodicPotential, window: Tuple[float, float],
                                 n: int = 601, tol: float = 1e-8, ode_tol: float = 1e-10,
                                 pt_tol: float = 1e-10, seed_offset: Optional[float] = None,
                                 trace_points: int = WITNESS_TRACE_POINTS,
                                 witnesses_per_arc: int = 4,
                                 scan: Optional[ScanResult] = None) -> List[NonrealCertificate]:
    """Certificates of non-real spectrum emanating from real interior extrema.

    Extrema with Delta within 1e-6 of +-1 are indeterminate: they are logged
    and left out of the result. A scan of the same window may be passed in to
    skip resampling the real line.

    Raises:
        NotPTSymmetric: If V fails the PT check at pt_tol
    """
    report = check_pt_symmetry(V, pt_tol)
    if not report.pt_symmetric:
        raise NotPTSymmetric(
            message=f"Potential is not PT-symmetric: defect {report.max_defect:.3g} > {pt_tol}",
            error_type="pt",
        )

    e_min, e_max = window
    if scan is None:
        scan = scan_real_line(V, e_min, e_max, n, tol, ode_tol)
    bound = bound_region(V)
    box = EnergyBox.from_bound(bound, e_max + (e_max - e_min), 1.0)

    certificates: List[NonrealCertificate] = []
    for bracket in scan.extremum_brackets:
        e0 = refine_extremum(V, bracket, ode_tol)
        delta = discriminant(V, e0, ode_tol).delta
        if abs(delta.imag) > REALITY_TOL:
            continue
        if abs(abs(delta.real) - 1) < INDETERMINATE_BAND:
            logger.warning(f"Indeterminate extremum at E0={e0}: Delta={delta.real} is within "
                           f"{INDETERMINATE_BAND} of the band edge")
            continue
        if abs(delta.real) > 1:
            continue

        point = local_structure(V, e0, ode_tol)
        if point.regime != Regime.INTERIOR or point.order_k < 2:
            logger.debug(f"Extremum at E0={e0} has k={point.order_k}, {point.regime.value}")
            continue

        offset = seed_offset if seed_offset is not None else SEED_OFFSET_FACTOR * (1 + abs(e0))
        witnesses = _witnesses(V, e0, point.directions, box, offset, trace_points,
                               witnesses_per_arc, tol, ode_tol)
        if not witnesses:
            logger.warning(f"No non-real witnesses found at E0={e0}")
            continue
        logger.info(f"Non-real spectrum at E0={e0:.10g}: k={point.order_k}, "
                    f"{len(witnesses)} witnesses")
        certificates.append(NonrealCertificate(
            extremum_e0=e0,
            delta_at=delta.real,
            order_k=point.order_k,
            witness_points=tuple(witnesses),
        ))
    return certificates
