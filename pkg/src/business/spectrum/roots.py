"""
Root finding for Delta = +-1 and Delta' = 0 in a rectangular window.
A grid of |f| seeds Newton refinement from its local minima.
"""
import logging
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from src.business.floquet import DiscriminantValue, discriminant
from src.business.potential import PeriodicPotential
from .critical import critical_threshold, local_structure
from .models import BandEdge, CriticalPoint, EnergyBox

MAX_NEWTON = 60
NEWTON_XTOL = 1e-13
EDGE_RESIDUAL = 1e-8
CRITICAL_RESIDUAL = 1e-6
DEDUPE_FACTOR = 1e-7
MIN_GRID = 4

logger = logging.getLogger(__name__)


def _grid(box: EnergyBox, grid_n: int) -> np.ndarray:
    if grid_n < MIN_GRID:
        raise ValueError(f"Grid needs at least {MIN_GRID} points per side, got {grid_n}")
    re = np.linspace(box.re_min, box.re_max, grid_n)
    if box.im_min == box.im_max:
        im = np.array([box.im_min])
    else:
        im = np.linspace(box.im_min, box.im_max, grid_n)
    return re[None, :] + 1j * im[:, None]


def _local_minima(values: np.ndarray) -> List[Tuple[int, int]]:
    rows, cols = values.shape
    minima = []
    for r in range(rows):
        for c in range(cols):
            v = values[r, c]
            neighbours = values[max(0, r - 1):r + 2, max(0, c - 1):c + 2]
            if v <= neighbours.min():
                minima.append((r, c))
    return minima


def _newton(start: complex, step: Callable[[complex], Optional[complex]]) -> Optional[complex]:
    energy = start
    for _ in range(MAX_NEWTON):
        delta = step(energy)
        if delta is None:
            return energy
        energy -= delta
        if not np.isfinite(energy):
            return None
        if abs(delta) <= NEWTON_XTOL * (1 + abs(energy)):
            return energy
    return energy


def _dedupe(energies: Iterable[complex]) -> List[complex]:
    unique: List[complex] = []
    for energy in energies:
        if all(abs(energy - u) > DEDUPE_FACTOR * (1 + abs(energy)) for u in unique):
            unique.append(energy)
    return unique


def _sample(V: PeriodicPotential, box: EnergyBox, grid_n: int,
            ode_tol: float) -> Tuple[np.ndarray, List[List[DiscriminantValue]]]:
    grid = _grid(box, grid_n)
    values = [[discriminant(V, complex(e), ode_tol, with_second=True) for e in row] for row in grid]
    return grid, values


def find_band_edges(V: PeriodicPotential, box: EnergyBox, grid_n: int = 16,
                    ode_tol: float = 1e-10) -> List[BandEdge]:
    """Roots of Delta(E) = +1 and Delta(E) = -1 inside box, sorted by (Re, Im).

    Newton uses the multiplicity-independent step f f' / (f'^2 - f f''), so double
    roots converge as fast as simple ones.
    """
    grid, values = _sample(V, box, grid_n, ode_tol)
    slack = DEDUPE_FACTOR * (1 + box.diameter)
    edges: List[BandEdge] = []
    for sign in (1, -1):
        residual = np.array([[abs(v.delta - sign) for v in row] for row in values])

        def step(energy: complex) -> Optional[complex]:
            dv = discriminant(V, energy, ode_tol, with_second=True)
            f, f1, f2 = dv.delta - sign, dv.delta_prime, dv.delta_second
            if f == 0:
                return None
            denominator = f1 * f1 - f * f2
            return f * f1 / denominator if denominator != 0 else None

        roots = []
        for r, c in _local_minima(residual):
            root = _newton(complex(grid[r, c]), step)
            if root is None or not box.contains(root, slack):
                continue
            dv = discriminant(V, root, ode_tol, with_second=True)
            if abs(dv.delta - sign) > EDGE_RESIDUAL:
                continue
            roots.append(root)

        for root in _dedupe(roots):
            dv = discriminant(V, root, ode_tol, with_second=True)
            simple = abs(dv.delta_prime) > critical_threshold(dv.delta_second)
            edges.append(BandEdge(energy=root, sign=sign, simple=simple))

    edges.sort(key=lambda edge: (edge.energy.real, edge.energy.imag))
    logger.debug(f"Found {len(edges)} band edges in {box}")
    return edges


def find_critical_points(V: PeriodicPotential, box: EnergyBox, grid_n: int = 16,
                         ode_tol: float = 1e-10) -> List[CriticalPoint]:
    """Zeros of Delta' inside box with their local structure, sorted by (Re, Im).

    Raises:
        OrderUndetermined: If a zero's order cannot be resolved through order 12
    """
    grid, values = _sample(V, box, grid_n, ode_tol)
    residual = np.array([[abs(v.delta_prime) for v in row] for row in values])
    slack = DEDUPE_FACTOR * (1 + box.diameter)

    def step(energy: complex) -> Optional[complex]:
        dv = discriminant(V, energy, ode_tol, with_second=True)
        if dv.delta_prime == 0 or dv.delta_second == 0:
            return None
        return dv.delta_prime / dv.delta_second

    roots = []
    for r, c in _local_minima(residual):
        root = _newton(complex(grid[r, c]), step)
        if root is None or not box.contains(root, slack):
            continue
        dv = discriminant(V, root, ode_tol, with_second=True)
        if abs(dv.delta_prime) > CRITICAL_RESIDUAL * (1 + abs(dv.delta_second)):
            continue
        roots.append(root)

    points = [local_structure(V, root, ode_tol) for root in _dedupe(roots)]
    points.sort(key=lambda point: (point.e0.real, point.e0.imag))
    logger.debug(f"Found {len(points)} critical points in {box}")
    return points
