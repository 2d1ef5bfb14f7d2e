from .models import Constant, Free, Impulses, OracleKind, Segments
from .closed_form import (
    free_discriminant, free_discriminant_prime, kind_from_potential, oracle_discriminant,
    oracle_monodromy,
)
