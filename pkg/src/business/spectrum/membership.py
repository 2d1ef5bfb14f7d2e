"""
Spectral membership.
E lies in the spectrum iff Delta(E) is real with -1 <= Delta(E) <= 1, equivalently
iff some Floquet multiplier is unimodular. Both criteria are evaluated and any
disagreement beyond the integration noise is reported as an error.
"""
import logging
import math
from typing import Callable, List, Tuple

import numpy as np
from scipy.optimize import brentq

from src.business.floquet import discriminant, monodromy
from src.business.potential import PeriodicPotential
from .exceptions import CriteriaMismatch
from .models import RealBand, ScanResult

EDGE_XTOL = 1e-10
MIN_SCAN_POINTS = 2

logger = logging.getLogger(__name__)


def in_band(delta: complex, tol: float) -> bool:
    """Real-discriminant criterion: |Im Delta| <= tol and -1 - tol <= Re Delta <= 1 + tol"""
    return abs(delta.imag) <= tol and -1 - tol <= delta.real <= 1 + tol


def _growth_bounds(tol: float, noise: float) -> Tuple[float, float]:
    # |rho| - 1 ~ beta with cosh(beta) cos(alpha) = Re Delta, sinh(beta) sin(alpha) = Im Delta;
    # inside the tol-slab beta <= sqrt(3 tol), outside it beta > tol / 2
    outer = 2 * math.sqrt(tol) + 10 * tol + noise
    inner = tol / 2 - noise
    return outer, inner


def in_spectrum(V: PeriodicPotential, E: complex, tol: float, ode_tol: float = 1e-10) -> bool:
    """Whether E belongs to the spectrum of H_V, up to tol.

    Raises:
        CriteriaMismatch: If the unimodular-multiplier check contradicts the
            real-discriminant check beyond integration noise
    """
    matrix = monodromy(V, E, ode_tol)
    inside = in_band(matrix.half_trace, tol)

    eigenvalues = np.linalg.eigvals(matrix.as_array())
    growth = float(np.abs(eigenvalues).max()) - 1.0
    # eigenvalues of a Jordan block move like the square root of the perturbation
    noise = math.sqrt(ode_tol * matrix.scale) + matrix.det_defect
    outer, inner = _growth_bounds(tol, noise)

    if (inside and growth > outer) or (not inside and growth <= inner):
        raise CriteriaMismatch(
            message=(f"Membership criteria disagree at E={complex(E)}: "
                     f"Delta={matrix.half_trace}, max|rho|-1={growth:.3g}"),
            error_type="criteria",
        )
    return inside


def _locate_boundary(outside_at: float, inside_at: float, g: Callable[[float], float],
                     inside: Callable[[float], bool]) -> float:
    g_out, g_in = g(outside_at), g(inside_at)
    if g_out > 0 >= g_in:
        a, b = sorted((inside_at, outside_at))
        return brentq(g, a, b, xtol=EDGE_XTOL)

    # the inside sample sits in the tolerance slab: bisect on the mask itself
    lo, hi = outside_at, inside_at
    while abs(hi - lo) > EDGE_XTOL:
        mid = 0.5 * (lo + hi)
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _refine_edge(V: PeriodicPotential, outside_at: float, outside_delta: complex,
                 inside_at: float, tol: float, ode_tol: float) -> float:
    def delta(e: float) -> complex:
        return discriminant(V, e, ode_tol).delta

    if abs(outside_delta.imag) <= tol:
        g = lambda e: abs(delta(e).real) - 1.0
    else:
        g = lambda e: abs(delta(e).imag) - tol
    return _locate_boundary(outside_at, inside_at, g, lambda e: in_band(delta(e), tol))


def scan_real_line(V: PeriodicPotential, e_min: float, e_max: float, n: int,
                   tol: float = 1e-8, ode_tol: float = 1e-10) -> ScanResult:
    """Sample Delta on n equispaced real energies and assemble the real bands.

    Band ends interior to the window are refined to 1e-10; an in-band sample
    at the window boundary closes its band there unrefined.
    """
    if n < MIN_SCAN_POINTS:
        raise ValueError(f"Scan needs at least {MIN_SCAN_POINTS} points, got {n}")
    if not e_min < e_max:
        raise ValueError(f"Empty scan window [{e_min}, {e_max}]")

    energies = np.linspace(e_min, e_max, n)
    values = [discriminant(V, float(e), ode_tol) for e in energies]
    mask = [in_band(v.delta, tol) for v in values]

    bands: List[RealBand] = []
    i = 0
    while i < n:
        if not mask[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and mask[j + 1]:
            j += 1
        if i == 0:
            lower, lower_refined = float(energies[0]), False
        else:
            lower = _refine_edge(V, float(energies[i - 1]), values[i - 1].delta,
                                 float(energies[i]), tol, ode_tol)
            lower_refined = True
        if j == n - 1:
            upper, upper_refined = float(energies[-1]), False
        else:
            upper = _refine_edge(V, float(energies[j + 1]), values[j + 1].delta,
                                 float(energies[j]), tol, ode_tol)
            upper_refined = True
        bands.append(RealBand(lower, upper, lower_refined, upper_refined))
        i = j + 1

    brackets = []
    for i in range(n - 1):
        if not (mask[i] and mask[i + 1]):
            continue
        if (values[i].delta_prime.real < 0) != (values[i + 1].delta_prime.real < 0):
            brackets.append((float(energies[i]), float(energies[i + 1])))

    logger.debug(f"Scanned [{e_min}, {e_max}] with {n} points: "
                 f"{len(bands)} bands, {len(brackets)} extremum brackets")
    return ScanResult(
        samples=tuple((float(e), v.delta) for e, v in zip(energies, values)),
        delta_primes=tuple(v.delta_prime for v in values),
        bands=tuple(bands),
        extremum_brackets=tuple(brackets),
    )
