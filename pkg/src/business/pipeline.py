"""
Pipeline module.
Coordinates the spectral workflows behind each CLI command: discriminant tables,
full spectrum runs, local-shape verification and amplitude-family sweeps.
Results are plain records; rendering and storage happen in the outer layers.
"""
import cmath
import logging
from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.business.floquet import discriminant
from src.business.potential import (
    DeltaComb, PeriodicPotential, SpectralBound, bound_region, check_pt_symmetry,
)
from src.business.spectrum import (
    ArcCountMismatch, BandEdge, CriticalPoint, EnergyBox, LocalShapeReport, NonrealCertificate,
    RealBand, Regime, SpectralArc, TraceConfig, correct, detect_nonreal_from_extremum,
    find_band_edges, find_critical_points, in_spectrum, scan_real_line, trace_arc,
    verify_local_shape,
)

DEFAULT_ANGLE_THRESHOLD = 1e-2
DEFAULT_BOX_REACH = 10.0
DEFAULT_BOX_MARGIN = 1.0

ProgressCallback = Callable[[int, int, str], None]


@dataclass(frozen=True)
class DiscriminantSample:
    energy: complex
    delta: complex
    delta_prime: complex


@dataclass(frozen=True)
class SpectrumResult:
    description: str
    box: EnergyBox
    bound: SpectralBound
    bands: Tuple[RealBand, ...]
    band_edges: Tuple[BandEdge, ...]
    critical_points: Tuple[CriticalPoint, ...]
    arcs: Tuple[SpectralArc, ...]
    pt_symmetric: bool
    certificates: Tuple[NonrealCertificate, ...] = ()


@dataclass(frozen=True)
class VerificationEntry:
    point: CriticalPoint
    report: Optional[LocalShapeReport]
    passed: bool
    measured_count: int


@dataclass(frozen=True)
class VerificationResult:
    entries: Tuple[VerificationEntry, ...]
    angle_threshold: float

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)


@dataclass(frozen=True)
class FamilyRow:
    amplitude: float
    extrema_found: int
    certificates: Tuple[NonrealCertificate, ...]


@dataclass(frozen=True)
class FamilyResult:
    parameter: str
    window: Tuple[float, float]
    rows: Tuple[FamilyRow, ...] = field(default_factory=tuple)


def default_box(V: PeriodicPotential, bound: SpectralBound) -> EnergyBox:
    """Box reaching DEFAULT_BOX_REACH to the right of the strip's left edge.

    Delta-comb bounds ignore the impulses, so their box is widened by
    10 + 2 sum |s_j| / omega on every side.
    """
    margin = DEFAULT_BOX_MARGIN
    if isinstance(V.body, DeltaComb):
        margin = 10 + 2 * V.body.total_strength / V.period
    return EnergyBox(
        bound.re_min - margin, bound.re_min + DEFAULT_BOX_REACH + margin,
        bound.im_min - margin, bound.im_max + margin,
    )


class SpectrumPipeline:
    """Coordinates the spectrum module into complete runs.

        Flow of a spectrum run:
        1. Bound the spectrum and scan the real line
        2. Locate band edges and critical points in the box
        3. Seed arcs from band midpoints and critical-point directions
        4. Trace every seed not already covered by an arc
        5. Certify non-real spectrum for PT-symmetric potentials
        """

    def __init__(self,
                 ode_tol: float = 1e-10,
                 trace_tol: float = 1e-8,
                 pt_tol: float = 1e-10,
                 trace_step: float = 0.05,
                 trace_max_points: int = 2000,
                 seed_offset: float = 0.02,
                 probe_nodes: int = 1024,
                 sampling_points: int = 4096,
                 symmetry_samples: int = 2048,
                 bound_margin: float = 1e-6):
        self.ode_tol = ode_tol
        self.trace_tol = trace_tol
        self.pt_tol = pt_tol
        self.trace_step = trace_step
        self.trace_max_points = trace_max_points
        self.seed_offset = seed_offset
        self.probe_nodes = probe_nodes
        self.sampling_points = sampling_points
        self.symmetry_samples = symmetry_samples
        self.bound_margin = bound_margin
        self.logger = logging.getLogger(__name__)

    def bound(self, V: PeriodicPotential) -> SpectralBound:
        return bound_region(V, self.sampling_points, self.bound_margin)

    def discriminant_table(self, V: PeriodicPotential,
                           window: Optional[Tuple[float, float]] = None, points: int = 601,
                           box: Optional[EnergyBox] = None, grid: int = 16) -> List[DiscriminantSample]:
        """Delta and Delta' over a real window, or over a grid x grid lattice of box rows."""
        if window is not None:
            energies = [complex(e) for e in np.linspace(window[0], window[1], points)]
        elif box is not None:
            re = np.linspace(box.re_min, box.re_max, grid)
            im = np.linspace(box.im_min, box.im_max, grid) if box.im_max > box.im_min \
                else np.array([box.im_min])
            energies = [complex(x, y) for y in im for x in re]
        else:
            raise ValueError("Either a window or a box is required")

        self.logger.info(f"Evaluating Delta at {len(energies)} energies for {V.describe()}")
        samples = []
        for energy in energies:
            dv = discriminant(V, energy, self.ode_tol)
            samples.append(DiscriminantSample(energy, dv.delta, dv.delta_prime))
        return samples

    def _trace_config(self, box: EnergyBox) -> TraceConfig:
        return TraceConfig(step=self.trace_step, trace_tol=self.trace_tol,
                           max_points=self.trace_max_points, box=box, ode_tol=self.ode_tol)

    def _critical_seeds(self, V: PeriodicPotential, point: CriticalPoint) -> List[complex]:
        offset = self.seed_offset * (1 + abs(point.e0))
        seeds = []
        for theta in point.directions:
            direction = cmath.exp(1j * theta)
            corrected = correct(V, point.e0 + offset * direction, 1j * direction,
                                self.trace_tol, self.ode_tol)
            if corrected is None or not in_spectrum(V, corrected[0], self.trace_tol, self.ode_tol):
                self.logger.warning(f"Skipping seed at angle {theta:.4f} from E0={point.e0}")
                continue
            seeds.append(corrected[0])
        return seeds

    def _covered(self, seed: complex, arcs: Sequence[SpectralArc]) -> bool:
        return any(min(abs(seed - p) for p in arc.points) <= self.trace_step for arc in arcs)

    def spectrum(self, V: PeriodicPotential, box: Optional[EnergyBox] = None,
                 scan_points: int = 601, grid: int = 16) -> SpectrumResult:
        session_start = datetime.now()
        self.logger.info(f"Starting spectrum run for {V.describe()}")

        # 1. Bound and real-line scan
        bound = self.bound(V)
        box = box or default_box(V, bound)
        scan = None
        if box.im_min <= 0 <= box.im_max:
            scan = scan_real_line(V, box.re_min, box.re_max, scan_points,
                                  self.trace_tol, self.ode_tol)
            self.logger.info(f"Real-line scan found {len(scan.bands)} bands")

        # 2. Band edges and critical points
        edges = find_band_edges(V, box, grid, self.ode_tol)
        self.logger.info(f"Found {len(edges)} band edges")
        critical = find_critical_points(V, box, grid, self.ode_tol)
        self.logger.info(f"Found {len(critical)} critical points")

        # 3. Seeds
        seeds: List[complex] = []
        for band in scan.bands if scan else ():
            seeds.append(complex(0.5 * (band.lower + band.upper)))
        for point in critical:
            if point.regime != Regime.OFF_SPECTRUM:
                seeds.extend(self._critical_seeds(V, point))

        # 4. Trace
        arcs: List[SpectralArc] = []
        cfg = self._trace_config(box)
        for seed in seeds:
            if self._covered(seed, arcs):
                self.logger.debug(f"Seed {seed} already lies on a traced arc")
                continue
            arc = trace_arc(V, seed, cfg)
            self.logger.debug(f"Arc from seed {seed}: {arc.start_kind.label} -> {arc.end_kind.label}")
            arcs.append(arc)
        self.logger.info(f"Traced {len(arcs)} arcs from {len(seeds)} seeds")

        # 5. Non-real certificates
        pt_symmetric = check_pt_symmetry(V, self.pt_tol, self.symmetry_samples).pt_symmetric
        certificates: List[NonrealCertificate] = []
        if pt_symmetric and scan is not None:
            certificates = detect_nonreal_from_extremum(
                V, (box.re_min, box.re_max), scan_points, self.trace_tol, self.ode_tol,
                self.pt_tol, scan=scan,
            )
            self.logger.info(f"Found {len(certificates)} non-real certificates")

        self.logger.info(f"Spectrum run completed in {datetime.now() - session_start}")
        return SpectrumResult(
            description=V.describe(),
            box=box,
            bound=bound,
            bands=scan.bands if scan else (),
            band_edges=tuple(edges),
            critical_points=tuple(critical),
            arcs=tuple(arcs),
            pt_symmetric=pt_symmetric,
            certificates=tuple(certificates),
        )

    def verify(self, V: PeriodicPotential, box: EnergyBox, grid: int = 16,
               angle_threshold: float = DEFAULT_ANGLE_THRESHOLD) -> VerificationResult:
        """Probe every critical point in box and compare arc counts and angles."""
        self.logger.info(f"Verifying local shape for {V.describe()} in {box}")
        entries = []
        for point in find_critical_points(V, box, grid, self.ode_tol):
            try:
                report = verify_local_shape(V, point, nodes=self.probe_nodes,
                                            tol=self.trace_tol, ode_tol=self.ode_tol)
            except ArcCountMismatch as e:
                entries.append(VerificationEntry(point, None, False, e.measured))
                continue
            passed = report.max_angle_error <= angle_threshold
            if not passed:
                self.logger.warning(f"Angle error {report.max_angle_error:.3g} at E0={point.e0} "
                                    f"exceeds {angle_threshold}")
            entries.append(VerificationEntry(point, report, passed, report.arcs_found))
        result = VerificationResult(tuple(entries), angle_threshold)
        self.logger.info(f"Verified {len(entries)} critical points: "
                         f"{'all passed' if result.passed else 'failures present'}")
        return result

    def scan_family(self, load: Callable[[float], PeriodicPotential], amplitudes: Sequence[float],
                    window: Tuple[float, float], scan_points: int = 601, parameter: str = "A",
                    progress_callback: Optional[ProgressCallback] = None) -> FamilyResult:
        """Run non-real detection for each amplitude of a one-parameter family.

        load builds the family member for an amplitude value.
        """
        rows = []
        total = len(amplitudes)
        for done, amplitude in enumerate(amplitudes):
            V = load(amplitude)
            scan = scan_real_line(V, window[0], window[1], scan_points, self.trace_tol, self.ode_tol)
            certificates = detect_nonreal_from_extremum(
                V, window, scan_points, self.trace_tol, self.ode_tol, self.pt_tol, scan=scan,
            )
            rows.append(FamilyRow(amplitude, len(scan.extremum_brackets), tuple(certificates)))
            if progress_callback:
                progress_callback(done + 1, total, f"{parameter}={amplitude:g}")
        self.logger.info(f"Family sweep over {total} values of {parameter}: "
                         f"{sum(1 for row in rows if row.certificates)} with non-real spectrum")
        return FamilyResult(parameter, window, tuple(rows))
