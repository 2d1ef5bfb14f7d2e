from .exceptions import *
from .models import (
    DeltaComb, Expression, FourierSeries, PeriodicPotential, PiecewiseConstant,
    PotentialKind, SpectralBound, SymmetryReport,
)
from .potentials import (
    bound_region, check_pt_symmetry, constant_potential, evaluate, expression_potential,
    free_potential, trigonometric_potential,
)
