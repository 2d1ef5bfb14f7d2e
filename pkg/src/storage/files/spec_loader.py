"""
Potential spec loading.
Validates the JSON spec file with pydantic and converts it to a PeriodicPotential.
Complex numbers are written as [re, im] pairs.
"""
import json
import logging
from typing import Dict, List, Literal, Mapping, Optional, Tuple

from pydantic import BaseModel, Field, PositiveFloat, ValidationError, model_validator

from src.business.expr import ExprError, ParseError, substitute_parameter
from src.business.potential import (
    DeltaComb, Expression, FourierSeries, PeriodicPotential, PiecewiseConstant, PotentialError,
)
from .exceptions import SpecError

ComplexPair = Tuple[float, float]

BODY_FIELDS = {
    "fourier": ("coefficients",),
    "piecewise": ("segments",),
    "delta_comb": ("background", "impulses"),
    "expression": ("source",),
}

logger = logging.getLogger(__name__)


class PotentialSpec(BaseModel):
    period: PositiveFloat = Field(description="Period omega of the potential")
    type: Literal["fourier", "piecewise", "delta_comb", "expression"]
    coefficients: Optional[List[Tuple[int, ComplexPair]]] = Field(
        default=None, description="Fourier modes [n, [re, im]]")
    segments: Optional[List[Tuple[PositiveFloat, ComplexPair]]] = Field(
        default=None, description="Piecewise segments [length, [re, im]] in order from x = 0")
    background: Optional[ComplexPair] = Field(default=None, description="Delta comb background value")
    impulses: Optional[List[Tuple[float, ComplexPair]]] = Field(
        default=None, description="Delta comb impulses [position, [re, im]]")
    source: Optional[str] = Field(default=None, description="Expression in x")

    @model_validator(mode="after")
    def check_body_fields(self) -> 'PotentialSpec':
        missing = [name for name in BODY_FIELDS[self.type] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"type '{self.type}' requires {', '.join(missing)}")
        return self


def _complex(pair: ComplexPair) -> complex:
    return complex(pair[0], pair[1])


def _line_of(text: str, key: str) -> Optional[int]:
    """1-based line of the first occurrence of "key" in the spec text"""
    position = text.find(f'"{key}"')
    return text.count("\n", 0, position) + 1 if position >= 0 else None


def _to_potential(spec: PotentialSpec, parameters: Mapping[str, float]) -> PeriodicPotential:
    if spec.type == "fourier":
        body = FourierSeries(tuple((n, _complex(c)) for n, c in spec.coefficients))
    elif spec.type == "piecewise":
        body = PiecewiseConstant(tuple((length, _complex(v)) for length, v in spec.segments))
    elif spec.type == "delta_comb":
        body = DeltaComb(_complex(spec.background),
                         tuple((position, _complex(s)) for position, s in spec.impulses))
    else:
        source = spec.source
        for name, value in parameters.items():
            source = substitute_parameter(source, name, value)
        body = Expression.from_source(source)
    return PeriodicPotential(spec.period, body)


def parse_spec(text: str) -> PotentialSpec:
    """Validate spec text without building the potential.

    Raises:
        SpecError: On malformed JSON or a schema violation
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"Malformed JSON: {e.msg}", line=e.lineno, offset=e.colno)
    try:
        return PotentialSpec.model_validate(raw)
    except ValidationError as e:
        error = e.errors()[0]
        location = error["loc"]
        field = str(location[0]) if location else None
        path = ".".join(str(part) for part in location) or "spec"
        raise SpecError(f"Invalid spec at {path}: {error['msg']}",
                        line=_line_of(text, field) if field else None)


def load_potential(text: str, parameters: Optional[Dict[str, float]] = None) -> PeriodicPotential:
    """Build a PeriodicPotential from spec text.

    parameters are substituted into an expression source before parsing,
    e.g. {"A": 2.5} turns "A*i*sin(x)^3" into "(2.5)*i*sin(x)^3".

    Raises:
        SpecError: On malformed JSON, a schema violation, an unparsable
            expression or a potential that fails validation
    """
    spec = parse_spec(text)
    try:
        potential = _to_potential(spec, parameters or {})
    except ParseError as e:
        raise SpecError(f"Invalid expression: {e}", line=_line_of(text, "source"), offset=e.offset)
    except (ExprError, PotentialError, ValueError) as e:
        raise SpecError(f"Invalid potential: {e}", line=_line_of(text, BODY_FIELDS[spec.type][0]))
    logger.debug(f"Loaded {potential.describe()}")
    return potential
