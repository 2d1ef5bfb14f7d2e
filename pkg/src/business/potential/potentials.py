"""
Potential operations module.
Pointwise evaluation, the strip bound containing the spectrum, and PT-symmetry
detection for every potential representation.
"""
import bisect
import cmath
import logging
import math
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from src.business.expr import eval_expr
from .exceptions import DomainError
from .models import (
    DeltaComb, Expression, FourierSeries, PeriodicPotential, PiecewiseConstant,
    SpectralBound, SymmetryReport,
)

DEFAULT_SAMPLING_POINTS = 4096
DEFAULT_BOUND_MARGIN = 1e-6
DEFAULT_SYMMETRY_SAMPLES = 2048
IMPULSE_EXCLUSION = 1e-14

logger = logging.getLogger(__name__)


def free_potential(period: float = math.pi) -> PeriodicPotential:
    return PeriodicPotential(period, FourierSeries(((0, 0j),)))


def constant_potential(value: complex, period: float = math.pi) -> PeriodicPotential:
    return PeriodicPotential(period, FourierSeries(((0, complex(value)),)))


def trigonometric_potential(period: float,
                            sin_terms: Optional[Mapping[int, complex]] = None,
                            cos_terms: Optional[Mapping[int, complex]] = None,
                            constant: complex = 0j) -> PeriodicPotential:
    """Fourier potential constant + sum a_n sin(n k x) + sum b_n cos(n k x), k = 2 pi / period"""
    coefficients: Dict[int, complex] = {0: complex(constant)}
    for n, a in (sin_terms or {}).items():
        coefficients[n] = coefficients.get(n, 0j) + a / 2j
        coefficients[-n] = coefficients.get(-n, 0j) - a / 2j
    for n, b in (cos_terms or {}).items():
        coefficients[n] = coefficients.get(n, 0j) + b / 2
        coefficients[-n] = coefficients.get(-n, 0j) + b / 2
    return PeriodicPotential(period, FourierSeries(tuple(sorted(coefficients.items()))))


def expression_potential(source: str, period: float) -> PeriodicPotential:
    return PeriodicPotential(period, Expression.from_source(source))


def reduce_argument(V: PeriodicPotential, x: float) -> float:
    """Reduce x into [0, period)"""
    r = x % V.period
    return 0.0 if r >= V.period else r


def _segment_starts(body: PiecewiseConstant) -> Tuple[float, ...]:
    starts, position = [], 0.0
    for length, _ in body.segments:
        starts.append(position)
        position += length
    return tuple(starts)


def evaluate(V: PeriodicPotential, x: float) -> complex:
    """Evaluate V at x (periodically extended).

    Raises:
        DomainError: If V is a delta comb and x is an impulse position
    """
    r = reduce_argument(V, x)
    body = V.body
    if isinstance(body, FourierSeries):
        k = 2 * math.pi / V.period
        return sum((c * cmath.exp(1j * k * n * r) for n, c in body.coefficients), 0j)
    if isinstance(body, PiecewiseConstant):
        index = bisect.bisect_right(_segment_starts(body), r) - 1
        return complex(body.segments[index][1])
    if isinstance(body, DeltaComb):
        for position, _ in body.impulses:
            gap = abs(r - position)
            if min(gap, V.period - gap) <= IMPULSE_EXCLUSION * V.period:
                raise DomainError(f"x={x} coincides with an impulse at {position}")
        return complex(body.background)
    return eval_expr(body.ast, r)


def potential_function(V: PeriodicPotential) -> Callable[[float], complex]:
    """Fast evaluator for points inside one period, used by the integrator."""
    body = V.body
    if isinstance(body, FourierSeries):
        k = 2 * math.pi / V.period
        freqs = np.array([k * n for n, _ in body.coefficients])
        coeffs = np.array([c for _, c in body.coefficients], dtype=complex)
        if body.is_constant:
            mean = body.mean
            return lambda x: mean
        return lambda x: complex(coeffs @ np.exp(1j * freqs * x))
    if isinstance(body, Expression):
        ast = body.ast
        return lambda x: eval_expr(ast, x)
    return lambda x: evaluate(V, x)


def sample(V: PeriodicPotential, xs: np.ndarray) -> np.ndarray:
    """Evaluate V on an array of points."""
    body = V.body
    if isinstance(body, FourierSeries):
        k = 2 * math.pi / V.period
        reduced = np.mod(xs, V.period)
        freqs = np.array([k * n for n, _ in body.coefficients])
        coeffs = np.array([c for _, c in body.coefficients], dtype=complex)
        return np.exp(1j * np.outer(reduced, freqs)) @ coeffs
    return np.array([evaluate(V, float(x)) for x in xs], dtype=complex)


def bound_region(V: PeriodicPotential,
                 sampling_points: int = DEFAULT_SAMPLING_POINTS,
                 margin: float = DEFAULT_BOUND_MARGIN) -> SpectralBound:
    """Strip (M1, M2, M3) = (inf Re V, inf Im V, sup Im V) containing the spectrum.

    Piecewise-constant and constant potentials are exact. Delta combs use the
    background only and are flagged inexact. Everything else is sampled densely
    and widened by margin.
    """
    body = V.body
    if isinstance(body, PiecewiseConstant):
        values = [complex(v) for _, v in body.segments]
        return SpectralBound(
            re_min=min(v.real for v in values),
            im_min=min(v.imag for v in values),
            im_max=max(v.imag for v in values),
            exact=True,
        )
    if isinstance(body, DeltaComb):
        b = complex(body.background)
        return SpectralBound(re_min=b.real, im_min=b.imag, im_max=b.imag, exact=False)
    if isinstance(body, FourierSeries) and body.is_constant:
        c = body.mean
        return SpectralBound(re_min=c.real, im_min=c.imag, im_max=c.imag, exact=True)

    xs = np.arange(sampling_points) * (V.period / sampling_points)
    values = sample(V, xs)
    bound = SpectralBound(
        re_min=float(values.real.min()) - margin,
        im_min=float(values.imag.min()) - margin,
        im_max=float(values.imag.max()) + margin,
        exact=False,
    )
    logger.debug(f"Sampled bound for {V.describe()}: {bound}")
    return bound


def _impulse_defect(V: PeriodicPotential, body: DeltaComb) -> float:
    """Largest mismatch between the impulse set and its mirror image x -> -x."""
    defect = 0.0
    position_tol = 1e-12 * V.period
    for position, strength in body.impulses:
        mirror = (-position) % V.period
        mirror = 0.0 if mirror >= V.period - position_tol else mirror
        partner = next(
            (s for p, s in body.impulses if abs(p - mirror) <= position_tol), None
        )
        if partner is None:
            defect = max(defect, abs(strength))
        else:
            defect = max(defect, abs(partner.conjugate() - strength))
    return defect


def check_pt_symmetry(V: PeriodicPotential, tol: float,
                      samples: int = DEFAULT_SYMMETRY_SAMPLES) -> SymmetryReport:
    """Test conj(V(-x)) == V(x) on a grid of cell midpoints.

    Delta combs are compared through their background and mirrored impulse set,
    so their report has samples_used = 0.
    """
    if not tol > 0:
        raise ValueError(f"Symmetry tolerance must be positive, got {tol}")
    body = V.body
    if isinstance(body, DeltaComb):
        b = complex(body.background)
        max_defect = max(abs(b.conjugate() - b), _impulse_defect(V, body))
        samples = 0
    else:
        xs = (np.arange(samples) + 0.5) * (V.period / samples)
        defects = np.abs(np.conj(sample(V, -xs)) - sample(V, xs))
        max_defect = float(defects.max())
    report = SymmetryReport(
        pt_symmetric=max_defect <= tol,
        max_defect=max_defect,
        samples_used=samples,
    )
    logger.debug(f"PT check for {V.describe()}: {report}")
    return report
