import math

import numpy as np
import pytest

from src.business.oracle import (
    Constant, Free, Impulses, Segments, free_discriminant, free_discriminant_prime,
    kind_from_potential, oracle_discriminant, oracle_monodromy,
)
from src.business.potential import (
    DeltaComb, PeriodicPotential, PiecewiseConstant, constant_potential, expression_potential,
    free_potential,
)

KINDS = [
    (Free(), math.pi),
    (Constant(1j), math.pi),
    (Segments(((1.0, 0j), (0.5, 2 + 1j), (1.5, -1j))), 3.0),
    (Impulses(0.5 + 0j, ((0.25, 1 + 0j), (1.0, -2j))), 2.0),
]


def test_closed_form_matrices():
    M = oracle_monodromy(Free(), math.pi, 4)
    np.testing.assert_allclose(M.as_array(), np.eye(2), atol=1e-14)

    M = oracle_monodromy(Constant(1j), math.pi, 1j)
    np.testing.assert_allclose(M.as_array(), [[1, math.pi], [0, 1]], atol=1e-14)

    # second segment has k = 0 at E = 1
    M = oracle_monodromy(Segments(((1.0, 0j), (1.0, 1 + 0j))), 2.0, 1)
    c, s = math.cos(1), math.sin(1)
    np.testing.assert_allclose(M.as_array(), [[c - s, s + c], [-s, c]], atol=1e-14)


def test_closed_form_discriminants():
    assert oracle_discriminant(Free(), 2 * math.pi, 0.25) == pytest.approx(-1, abs=1e-14)
    assert oracle_discriminant(Free(), 2 * math.pi, 0) == 1
    assert oracle_discriminant(Constant(1j), math.pi, 1 + 1j) == pytest.approx(-1, abs=1e-14)
    assert free_discriminant(2 * math.pi, -1) == pytest.approx(math.cosh(2 * math.pi))


def test_free_derivative():
    assert free_discriminant_prime(math.pi, 0.25) == pytest.approx(-math.pi)
    assert free_discriminant_prime(math.pi, 0) == pytest.approx(-math.pi ** 2 / 2)
    assert abs(free_discriminant_prime(math.pi, 1)) < 1e-14
    h = 1e-6
    E = 2.3 + 0.4j
    fd = (free_discriminant(2.0, E + h) - free_discriminant(2.0, E - h)) / (2 * h)
    assert free_discriminant_prime(2.0, E) == pytest.approx(fd, rel=1e-8)


def test_unit_determinant_and_branch_safety():
    """Every factor has determinant one, and cos is even in the square root"""
    rng = np.random.default_rng(7)
    energies = rng.uniform(-5, 5, 40) + 1j * rng.uniform(-5, 5, 40)
    for kind, omega in KINDS:
        for E in energies:
            M = oracle_monodromy(kind, omega, E)
            assert M.det_defect <= 1e-12 * M.scale ** 2
            principal = oracle_discriminant(kind, omega, E)
            other = oracle_discriminant(kind, omega, E, branch=-1)
            assert abs(principal - other) <= 1e-12 * max(1.0, abs(principal))


def test_kind_from_potential():
    assert kind_from_potential(free_potential()) == Free()
    assert kind_from_potential(constant_potential(1j)) == Constant(1j)
    segments = PeriodicPotential(2.0, PiecewiseConstant(((1.0, 0j), (1.0, 1j))))
    assert kind_from_potential(segments) == Segments(((1.0, 0j), (1.0, 1j)))
    comb = PeriodicPotential(1.0, DeltaComb(0j, ((0.5, 2 + 0j),)))
    assert kind_from_potential(comb) == Impulses(0j, ((0.5, 2 + 0j),))
    assert kind_from_potential(expression_potential("sin(x)", 1.0)) is None
