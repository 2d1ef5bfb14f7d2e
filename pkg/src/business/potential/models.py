"""
Potential models.
A PeriodicPotential is a complex periodic function V with period omega held in one
of four representations. Instances are immutable and validated on construction.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

from src.business.expr import ExprAst, ExprError, eval_expr, parse
from .exceptions import PotentialValidationError

SEGMENT_SUM_RTOL = 1e-12


class PotentialKind(str, Enum):
    FOURIER = "fourier"
    PIECEWISE = "piecewise"
    DELTA_COMB = "delta_comb"
    EXPRESSION = "expression"


@dataclass(frozen=True)
class FourierSeries:
    """V(x) = sum of c_n exp(2 pi i n x / omega) over (n, c_n)"""
    coefficients: Tuple[Tuple[int, complex], ...]

    def __post_init__(self):
        harmonics = [n for n, _ in self.coefficients]
        if len(set(harmonics)) != len(harmonics):
            raise PotentialValidationError(f"Duplicate harmonics in Fourier series: {harmonics}")

    @property
    def is_constant(self) -> bool:
        return all(n == 0 or c == 0 for n, c in self.coefficients)

    @property
    def mean(self) -> complex:
        return sum((c for n, c in self.coefficients if n == 0), complex(0.0))


@dataclass(frozen=True)
class PiecewiseConstant:
    """Consecutive (length, value) segments starting at x = 0"""
    segments: Tuple[Tuple[float, complex], ...]

    def __post_init__(self):
        if not self.segments:
            raise PotentialValidationError("Piecewise potential needs at least one segment")
        for length, _ in self.segments:
            if not (length > 0 and math.isfinite(length)):
                raise PotentialValidationError(f"Segment length must be positive, got {length}")


@dataclass(frozen=True)
class DeltaComb:
    """Constant background plus point impulses s_j delta(x - x_j) repeated with the period"""
    background: complex
    impulses: Tuple[Tuple[float, complex], ...]

    @property
    def total_strength(self) -> float:
        return sum(abs(s) for _, s in self.impulses)


@dataclass(frozen=True)
class Expression:
    source: str
    ast: ExprAst

    @classmethod
    def from_source(cls, source: str) -> 'Expression':
        return cls(source=source, ast=parse(source))


PotentialBody = Union[FourierSeries, PiecewiseConstant, DeltaComb, Expression]

_KINDS = {
    FourierSeries: PotentialKind.FOURIER,
    PiecewiseConstant: PotentialKind.PIECEWISE,
    DeltaComb: PotentialKind.DELTA_COMB,
    Expression: PotentialKind.EXPRESSION,
}


@dataclass(frozen=True)
class PeriodicPotential:
    """Complex-valued periodic potential of period omega"""
    period: float
    body: PotentialBody

    def __post_init__(self):
        if not (self.period > 0 and math.isfinite(self.period)):
            raise PotentialValidationError(f"Period must be positive and finite, got {self.period}")
        if isinstance(self.body, PiecewiseConstant):
            total = sum(length for length, _ in self.body.segments)
            if abs(total - self.period) > SEGMENT_SUM_RTOL * self.period:
                raise PotentialValidationError(
                    f"Segment lengths sum to {total!r}, expected the period {self.period!r}"
                )
        elif isinstance(self.body, DeltaComb):
            positions = [p for p, _ in self.body.impulses]
            if any(not (0 <= p < self.period) for p in positions):
                raise PotentialValidationError(f"Impulse positions must lie in [0, {self.period})")
            if any(b <= a for a, b in zip(positions, positions[1:])):
                raise PotentialValidationError("Impulse positions must be strictly increasing")
        elif isinstance(self.body, Expression):
            for x in (0.0, self.period / 2):
                try:
                    eval_expr(self.body.ast, x)
                except ExprError as e:
                    raise PotentialValidationError(
                        f"Expression {self.body.source!r} fails at x={x}: {e}"
                    ) from e
        elif not isinstance(self.body, FourierSeries):
            raise PotentialValidationError(f"Unsupported potential body: {type(self.body).__name__}")

    @property
    def kind(self) -> PotentialKind:
        return _KINDS[type(self.body)]

    def describe(self) -> str:
        if isinstance(self.body, Expression):
            return f"expression {self.body.source!r}, period {self.period:g}"
        return f"{self.kind.value} potential, period {self.period:g}"


@dataclass(frozen=True)
class SpectralBound:
    """Strip Re E >= re_min, im_min <= Im E <= im_max containing the spectrum"""
    re_min: float
    im_min: float
    im_max: float
    exact: bool

    def __post_init__(self):
        if self.im_min > self.im_max:
            raise ValueError(f"im_min {self.im_min} exceeds im_max {self.im_max}")

    def contains(self, energy: complex, eps: float = 0.0) -> bool:
        return (energy.real >= self.re_min - eps
                and self.im_min - eps <= energy.imag <= self.im_max + eps)


@dataclass(frozen=True)
class SymmetryReport:
    pt_symmetric: bool
    max_defect: float
    samples_used: int
