from .exceptions import *
from .models import (
    ArcEndpoint, BandEdge, CriticalPoint, EndpointKind, EnergyBox, LocalShapeReport,
    NonrealCertificate, RealBand, Regime, ScanResult, SpectralArc, TraceConfig,
)
from .membership import in_band, in_spectrum, scan_real_line
from .local_shape import emanating_directions, verify_local_shape
from .critical import classify_regime, critical_threshold, local_structure, vanishing_order
from .tracer import correct, trace_arc
from .roots import find_band_edges, find_critical_points
from .nonreal import detect_nonreal_from_extremum, refine_extremum
