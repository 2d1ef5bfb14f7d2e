from .exceptions import *
from .models import DiscriminantValue, FloquetMultipliers, MonodromyMatrix, TaylorJet
from .integrator import discriminant, monodromy, monodromy_jet, multipliers
from .derivatives import cauchy_jet, derivatives_at
