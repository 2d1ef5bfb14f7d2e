"""
Spectrum models.
Arcs, band edges, critical points and certificates produced by the spectrum module.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from src.business.potential import SpectralBound


class Regime(str, Enum):
    INTERIOR = "interior"
    EDGE = "edge"
    OFF_SPECTRUM = "off_spectrum"


class EndpointKind(str, Enum):
    BAND_EDGE = "band_edge"
    CRITICAL_POINT = "critical_point"
    BOX_EXIT = "box_exit"
    STEP_LIMIT = "step_limit"


@dataclass(frozen=True)
class EnergyBox:
    """Closed rectangle in the complex E-plane"""
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not self.re_min < self.re_max:
            raise ValueError(f"Empty real range [{self.re_min}, {self.re_max}]")
        if not self.im_min <= self.im_max:
            raise ValueError(f"Empty imaginary range [{self.im_min}, {self.im_max}]")

    @classmethod
    def from_bound(cls, bound: SpectralBound, re_max: float, margin: float) -> 'EnergyBox':
        """Strip containing the spectrum, cut at re_max and widened by margin."""
        return cls(bound.re_min - margin, re_max, bound.im_min - margin, bound.im_max + margin)

    def contains(self, energy: complex, slack: float = 0.0) -> bool:
        return (self.re_min - slack <= energy.real <= self.re_max + slack
                and self.im_min - slack <= energy.imag <= self.im_max + slack)

    @property
    def diameter(self) -> float:
        return abs(complex(self.re_max - self.re_min, self.im_max - self.im_min))


@dataclass(frozen=True)
class ArcEndpoint:
    kind: EndpointKind
    energy: complex
    sign: Optional[int] = None
    order: Optional[int] = None

    @property
    def label(self) -> str:
        if self.kind == EndpointKind.BAND_EDGE:
            return f"BandEdge({self.sign:+d})"
        if self.kind == EndpointKind.CRITICAL_POINT:
            return f"CriticalPoint({self.energy:.6g}, {self.order if self.order else '?'})"
        return "BoxExit" if self.kind == EndpointKind.BOX_EXIT else "StepLimit"


@dataclass(frozen=True)
class SpectralArc:
    """Polyline on the spectrum with Re Delta at each point"""
    points: Tuple[complex, ...]
    delta_values: Tuple[float, ...]
    start_kind: ArcEndpoint
    end_kind: ArcEndpoint


@dataclass(frozen=True)
class BandEdge:
    energy: complex
    sign: int
    simple: bool

    @property
    def label(self) -> str:
        """P for periodic (Delta = +1), AP for anti-periodic (Delta = -1)"""
        return "P" if self.sign > 0 else "AP"


@dataclass(frozen=True)
class CriticalPoint:
    e0: complex
    order_k: int
    delta_at: complex
    regime: Regime
    directions: Tuple[float, ...]
    leading_derivative: complex

    @property
    def edge_sign(self) -> int:
        return 1 if self.delta_at.real > 0 else -1


@dataclass(frozen=True)
class NonrealCertificate:
    extremum_e0: float
    delta_at: float
    order_k: int
    witness_points: Tuple[complex, ...]


@dataclass(frozen=True)
class RealBand:
    """Maximal real interval with Delta real in [-1, 1]; *_refined is False at window ends"""
    lower: float
    upper: float
    lower_refined: bool
    upper_refined: bool


@dataclass(frozen=True)
class ScanResult:
    samples: Tuple[Tuple[float, complex], ...]
    delta_primes: Tuple[complex, ...]
    bands: Tuple[RealBand, ...]
    extremum_brackets: Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class TraceConfig:
    step: float
    trace_tol: float
    max_points: int
    box: EnergyBox
    ode_tol: float = 1e-10
    critical_points: Tuple[complex, ...] = field(default_factory=tuple)
    max_turn: float = 0.35


@dataclass(frozen=True)
class LocalShapeReport:
    measured_angles: Tuple[float, ...]
    predicted_angles: Tuple[float, ...]
    max_angle_error: float
    arcs_found: int
    probe_radius: float
