import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.business.potential import (  # noqa: E402
    PeriodicPotential, PiecewiseConstant, expression_potential, trigonometric_potential,
)


@pytest.fixture
def free_pi():
    """V = 0 with period pi, held as a single segment so Delta comes from exact transfer matrices"""
    return PeriodicPotential(math.pi, PiecewiseConstant(((math.pi, 0j),)))


@pytest.fixture
def constant_i():
    """V = i with period pi"""
    return PeriodicPotential(math.pi, PiecewiseConstant(((math.pi, 1j),)))


@pytest.fixture
def three_segments():
    return PeriodicPotential(3.0, PiecewiseConstant(((1.0, 0j), (1.0, 1.0 + 0.5j), (1.0, -0.5j))))


@pytest.fixture
def i_sin():
    """PT-symmetric i sin(x), period 2 pi, through the expression evaluator"""
    return expression_potential("i*sin(x)", 2 * math.pi)


@pytest.fixture
def i_sin_cubed():
    return expression_potential("i*sin(x)^3", 2 * math.pi)


@pytest.fixture
def i_sin_fourier():
    """Fourier form of i sin(x)"""
    return trigonometric_potential(2 * math.pi, sin_terms={1: 1j})


@pytest.fixture
def pt_well():
    """V = i on [0, 1) and -i on [1, 2): PT-symmetric, Delta has an interior minimum near E = pi^2 / 4"""
    return PeriodicPotential(2.0, PiecewiseConstant(((1.0, 1j), (1.0, -1j))))
