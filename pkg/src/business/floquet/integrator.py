"""
Floquet integrator module.
Integrates the fundamental system of -psi'' + V psi = E psi over one period and
returns the monodromy matrix, the discriminant Delta = (a + d) / 2 and its
E-derivatives.

Smooth potentials (Fourier, expression) go through an adaptive RK45 pair with
the variational equations y'' = (V - E) y - l * y_prev co-integrated, one level
per E-derivative. Piecewise-constant and delta-comb potentials are propagated by
exact transfer matrices.
"""
import cmath
import logging
from typing import List, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from src.business.potential import DeltaComb, PeriodicPotential, PiecewiseConstant
from src.business.potential.potentials import potential_function
from .exceptions import IntegrationError, InvalidTolerance, StepSizeUnderflow
from .models import DiscriminantValue, FloquetMultipliers, MonodromyMatrix
from .transfer import propagate_jump, propagate_segment

MIN_TOL = 1e-13
MAX_TOL = 1e-3
MIN_STEP_FRACTION = 1e-14
MAX_STEP_FRACTION = 1 / 16
DET_DEFECT_LIMIT = 1e-8
TIE_TOL = 1e-12

logger = logging.getLogger(__name__)


def validate_tolerance(tol: float) -> None:
    if not (MIN_TOL <= tol <= MAX_TOL):
        raise InvalidTolerance(tol)


def _initial_state(order: int) -> np.ndarray:
    state = np.zeros((order + 1, 2, 2), dtype=complex)
    # state[level, column, (value, x-derivative)]
    state[0, 0, 0] = 1.0
    state[0, 1, 1] = 1.0
    return state


def _integrate_ode(V: PeriodicPotential, energy: complex, tol: float,
                   order: int) -> Tuple[List[np.ndarray], float]:
    levels = order + 1
    potential = potential_function(V)
    weights = np.arange(levels, dtype=float)[1:, None]

    def rhs(x: float, y: np.ndarray) -> np.ndarray:
        s = y.reshape(levels, 2, 2)
        q = potential(x) - energy
        out = np.empty_like(s)
        out[:, :, 0] = s[:, :, 1]
        out[:, :, 1] = q * s[:, :, 0]
        out[1:, :, 1] -= weights * s[:-1, :, 0]
        return out.ravel()

    try:
        solution = solve_ivp(
            rhs, (0.0, V.period), _initial_state(order).ravel(),
            method="RK45", rtol=tol, atol=tol,
            max_step=V.period * MAX_STEP_FRACTION,
        )
    except Exception as e:
        raise IntegrationError(
            message=f"Integration failed at E={energy}: {e}",
            error_type="integration",
            original_error=e,
        )

    min_step = V.period * MIN_STEP_FRACTION
    steps = np.diff(solution.t)
    if solution.status < 0 or (steps.size and steps.min() < min_step):
        if solution.status < 0 and "step size" not in solution.message:
            raise IntegrationError(
                message=f"Integration failed at E={energy}: {solution.message}",
                error_type="integration",
            )
        raise StepSizeUnderflow(
            message=f"Step size fell below {min_step:.3g} at E={energy} with tol={tol}",
            error_type="step_size",
        )

    final = solution.y[:, -1].reshape(levels, 2, 2)
    # columns hold (phi, phi_x) of each fundamental solution: M = [[phi1, phi2], [phi1_x, phi2_x]]
    jet = [final[level].T.copy() for level in range(levels)]
    est_error = tol * max(1.0, float(np.abs(final[0]).max())) * max(1.0, np.sqrt(steps.size))
    return jet, est_error


def _propagate_exact(V: PeriodicPotential, energy: complex, order: int) -> Tuple[List[np.ndarray], float]:
    jet = [np.eye(2, dtype=complex)] + [np.zeros((2, 2), dtype=complex) for _ in range(order)]
    body = V.body
    pieces = 0
    if isinstance(body, PiecewiseConstant):
        for length, value in body.segments:
            jet = propagate_segment(jet, energy - value, length)
            pieces += 1
    else:
        position = 0.0
        background = complex(body.background)
        for impulse_at, strength in body.impulses:
            if impulse_at > position:
                jet = propagate_segment(jet, energy - background, impulse_at - position)
                pieces += 1
            jet = propagate_jump(jet, strength)
            position = impulse_at
        if V.period > position:
            jet = propagate_segment(jet, energy - background, V.period - position)
            pieces += 1
    scale = max(1.0, float(np.abs(jet[0]).max()))
    est_error = 10 * np.finfo(float).eps * scale * max(1, pieces)
    return jet, est_error


def monodromy_jet(V: PeriodicPotential, energy: complex, tol: float,
                  order: int = 0) -> Tuple[List[np.ndarray], float]:
    """[M, dM/dE, d2M/dE2][:order + 1] and an error estimate."""
    validate_tolerance(tol)
    energy = complex(energy)
    if isinstance(V.body, (PiecewiseConstant, DeltaComb)):
        return _propagate_exact(V, energy, order)
    return _integrate_ode(V, energy, tol, order)


def _checked_matrix(matrix: np.ndarray, energy: complex) -> MonodromyMatrix:
    result = MonodromyMatrix.from_array(matrix, energy)
    # the integrator conserves the Wronskian only up to tol relative to the entries
    if result.det_defect > DET_DEFECT_LIMIT * result.scale ** 2:
        logger.warning(f"Wronskian defect {result.det_defect:.3g} at E={energy}")
    return result


def monodromy(V: PeriodicPotential, E: complex, tol: float) -> MonodromyMatrix:
    """Monodromy matrix M(E) of the fundamental system at x = omega.

    Raises:
        InvalidTolerance: If tol is outside [1e-13, 1e-3]
        StepSizeUnderflow: If the step controller collapses
    """
    jet, _ = monodromy_jet(V, E, tol, order=0)
    return _checked_matrix(jet[0], complex(E))


def discriminant(V: PeriodicPotential, E: complex, tol: float,
                 with_second: bool = False) -> DiscriminantValue:
    """Delta(E) and Delta'(E), optionally Delta''(E), from one augmented integration."""
    energy = complex(E)
    jet, est_error = monodromy_jet(V, energy, tol, order=2 if with_second else 1)
    _checked_matrix(jet[0], energy)
    return DiscriminantValue(
        delta=complex(np.trace(jet[0]) / 2),
        delta_prime=complex(np.trace(jet[1]) / 2),
        energy=energy,
        est_error=est_error,
        delta_second=complex(np.trace(jet[2]) / 2) if with_second else None,
    )


def multipliers(dv: DiscriminantValue) -> FloquetMultipliers:
    """Roots of rho^2 - 2 Delta rho + 1 with |rho1| >= 1 and rho2 = 1 / rho1."""
    delta = dv.delta
    root = cmath.sqrt(delta * delta - 1)
    first, second = delta + root, delta - root
    if abs(abs(first) - abs(second)) <= TIE_TOL * max(1.0, abs(first)):
        rho1 = first if first.imag >= 0 else second
    else:
        rho1 = first if abs(first) > abs(second) else second
    return FloquetMultipliers(rho1=rho1, rho2=1 / rho1)
