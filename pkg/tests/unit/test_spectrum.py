import cmath
import logging
import math
import time

import numpy as np
import pytest

from src.business.floquet import TaylorJet, discriminant
from src.business.potential import (
    PeriodicPotential, PiecewiseConstant, bound_region, trigonometric_potential,
)
from src.business.spectrum import (
    ArcCountMismatch, CriticalPoint, EndpointKind, EnergyBox, NotPTSymmetric, OrderUndetermined,
    Regime, SeedNotOnSpectrum, TraceConfig, classify_regime, correct, critical_threshold,
    detect_nonreal_from_extremum, emanating_directions, find_band_edges, find_critical_points,
    in_band, in_spectrum, local_structure, refine_extremum, scan_real_line, trace_arc,
    vanishing_order, verify_local_shape,
)

TWO_PI = 2 * math.pi


def angle_gap(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def same_angles(measured, expected, tol: float) -> bool:
    return len(measured) == len(expected) and all(
        min(angle_gap(m, e) for m in measured) <= tol for e in expected
    )


def cyclic_gaps(angles):
    ordered = sorted(angles)
    return [b - a for a, b in zip(ordered, ordered[1:])] + [ordered[0] + TWO_PI - ordered[-1]]


def trace_config(box: EnergyBox, **overrides) -> TraceConfig:
    options = dict(step=0.05, trace_tol=1e-8, max_points=2000, box=box)
    options.update(overrides)
    return TraceConfig(**options)


# Membership

def test_in_band():
    assert in_band(0.3 + 0j, 1e-8)
    assert in_band(1 + 5e-9 + 5e-9j, 1e-8)
    assert not in_band(1.1 + 0j, 1e-8)
    assert not in_band(0.3 + 1e-6j, 1e-8)


def test_in_spectrum_examples(free_pi, constant_i):
    assert in_spectrum(free_pi, 1, 1e-8)
    assert in_spectrum(free_pi, 0.5, 1e-8)
    assert not in_spectrum(free_pi, -1, 1e-8)
    assert not in_spectrum(free_pi, 2 + 0.1j, 1e-8)
    assert in_spectrum(constant_i, 4 + 1j, 1e-8)
    assert in_spectrum(constant_i, 2.5 + 1j, 1e-8)
    assert not in_spectrum(constant_i, 4, 1e-8)


def test_membership_criteria_agree(free_pi, constant_i, three_segments):
    """The unimodular-multiplier and real-discriminant criteria never disagree"""
    rng = np.random.default_rng(3)
    energies = list(rng.uniform(-5, 5, 150) + 1j * rng.uniform(-5, 5, 150))
    energies += list(rng.uniform(0, 20, 50))
    for V in (free_pi, three_segments):
        for E in energies:
            in_spectrum(V, E, 1e-8)
    for E in energies:
        in_spectrum(constant_i, E + 1j, 1e-8)


@pytest.mark.slow
def test_membership_criteria_agree_dense(free_pi, constant_i, three_segments):
    rng = np.random.default_rng(4)
    energies = rng.uniform(-5, 5, 10_000) + 1j * rng.uniform(-5, 5, 10_000)
    for V in (free_pi, constant_i, three_segments):
        for E in energies:
            in_spectrum(V, complex(E), 1e-8)


# Real-line scan

def test_scan_free_potential(free_pi):
    """The free spectrum is [0, inf): one band, refined at 0, open at the window end"""
    scan = scan_real_line(free_pi, -1, 5, 601)
    assert len(scan.samples) == 601
    assert len(scan.bands) == 1
    band = scan.bands[0]
    assert abs(band.lower) <= 1e-8
    assert band.lower_refined
    assert band.upper == 5.0
    assert not band.upper_refined

    # Delta' changes sign at E = 1 and E = 4 only
    assert len(scan.extremum_brackets) == 2
    for (a, b), expected in zip(scan.extremum_brackets, (1.0, 4.0)):
        assert a <= expected + 1e-12 and expected - 1e-12 <= b


def test_scan_without_real_bands(constant_i):
    scan = scan_real_line(constant_i, -1, 5, 61)
    assert scan.bands == ()
    assert scan.extremum_brackets == ()
    assert not any(in_band(delta, 1e-8) for _, delta in scan.samples)


def test_scan_minimal_input(free_pi):
    scan = scan_real_line(free_pi, 0, 1, 2)
    assert [e for e, _ in scan.samples] == [0.0, 1.0]
    assert len(scan.bands) == 1
    assert (scan.bands[0].lower, scan.bands[0].upper) == (0.0, 1.0)

    with pytest.raises(ValueError):
        scan_real_line(free_pi, 0, 1, 1)
    with pytest.raises(ValueError):
        scan_real_line(free_pi, 1, 1, 10)


def test_scan_refines_interior_gaps():
    """Band ends found inside the window sit on |Delta| = 1"""
    barrier = PeriodicPotential(3.0, PiecewiseConstant(((1.0, 0j), (1.0, 2 + 0j), (1.0, 0j))))
    scan = scan_real_line(barrier, 0, 6, 301)
    edges = [b.lower for b in scan.bands if b.lower_refined] + [b.upper for b in scan.bands if b.upper_refined]
    assert len(scan.bands) >= 2
    assert scan.bands[0].lower_refined
    for edge in edges:
        assert abs(abs(discriminant(barrier, edge, 1e-10).delta.real) - 1) <= 1e-7
    for left, right in zip(scan.bands, scan.bands[1:]):
        assert left.upper < right.lower


# Arc tracing

def test_trace_free_arc(free_pi):
    """Seeded at 0.5 the free arc runs from the band edge at 0 out of the box"""
    box = EnergyBox(-1, 26, -1, 1)
    arc = trace_arc(free_pi, 0.5, trace_config(box))

    assert arc.start_kind.kind == EndpointKind.BAND_EDGE
    assert arc.start_kind.sign == 1
    assert arc.start_kind.label == "BandEdge(+1)"
    assert abs(arc.start_kind.energy) <= 1e-8
    assert arc.end_kind.kind == EndpointKind.BOX_EXIT
    assert abs(arc.points[0]) <= 1e-8
    assert arc.points[-1].real >= 25.9

    steps = np.abs(np.diff(np.array(arc.points)))
    assert steps.max() <= 0.05 + 1e-12
    assert all(abs(p.imag) <= 1e-6 for p in arc.points)
    assert all(-1 - 1e-8 <= d <= 1 + 1e-8 for d in arc.delta_values)
    # Re Delta grows towards the start of the arc
    assert arc.delta_values[0] == pytest.approx(1, abs=1e-8)


def test_trace_points_stay_on_spectrum_and_in_strip(constant_i):
    box = EnergyBox(-1, 6, 0, 2)
    arc = trace_arc(constant_i, 0.5 + 1j, trace_config(box))
    assert arc.start_kind.kind == EndpointKind.BAND_EDGE
    assert abs(arc.start_kind.energy - 1j) <= 1e-8
    assert arc.end_kind.kind == EndpointKind.BOX_EXIT

    bound = bound_region(constant_i)
    for point in arc.points[::10]:
        assert in_spectrum(constant_i, point, 1e-8)
    for point in arc.points:
        assert bound.contains(point, eps=1e-6)
        assert point.imag == pytest.approx(1, abs=1e-6)


def test_trace_rejects_seed_off_spectrum(free_pi):
    with pytest.raises(SeedNotOnSpectrum):
        trace_arc(free_pi, -1, trace_config(EnergyBox(-2, 5, -1, 1)))


def test_trace_step_limit(free_pi):
    arc = trace_arc(free_pi, 0.5, trace_config(EnergyBox(-1, 26, -1, 1), max_points=5))
    assert len(arc.points) == 5
    assert arc.start_kind.kind == EndpointKind.STEP_LIMIT
    assert arc.end_kind.kind == EndpointKind.STEP_LIMIT


def test_trace_stops_at_known_critical_point(free_pi):
    cfg = trace_config(EnergyBox(-1, 26, -1, 1), critical_points=(1 + 0j,))
    arc = trace_arc(free_pi, 0.5, cfg)
    assert arc.end_kind.kind == EndpointKind.CRITICAL_POINT
    assert arc.end_kind.energy == 1
    assert abs(arc.points[-1] - 1) < 0.05


def test_scan_and_trace_agree(free_pi):
    scan = scan_real_line(free_pi, -1, 5, 301)
    arc = trace_arc(free_pi, 0.5, trace_config(EnergyBox(-1, 5, -1, 1)))
    assert arc.start_kind.energy.real == pytest.approx(scan.bands[0].lower, abs=1e-6)


# Roots

def test_free_band_edges(free_pi):
    """Delta = +-1 at E = n^2; only E = 0 is a simple edge"""
    edges = find_band_edges(free_pi, EnergyBox(-1, 10, -1, 1), grid_n=16)
    assert [round(e.energy.real, 6) for e in edges] == [0, 1, 4, 9]
    assert all(abs(e.energy.imag) < 1e-6 for e in edges)
    assert [e.sign for e in edges] == [1, -1, 1, -1]
    assert [e.label for e in edges] == ["P", "AP", "P", "AP"]
    assert [e.simple for e in edges] == [True, False, False, False]


def test_shifted_band_edges(constant_i):
    edges = find_band_edges(constant_i, EnergyBox(-1, 10, 0, 2), grid_n=16)
    assert len(edges) == 4
    for edge, n in zip(edges, range(4)):
        assert abs(edge.energy - (n * n + 1j)) < 1e-6


def test_no_band_edges_left_of_the_strip(free_pi):
    assert find_band_edges(free_pi, EnergyBox(-20, -11, -1, 1), grid_n=6) == []


def test_root_search_needs_four_grid_points(free_pi):
    box = EnergyBox(-1, 10, -1, 1)
    with pytest.raises(ValueError):
        find_band_edges(free_pi, box, grid_n=3)
    with pytest.raises(ValueError):
        find_critical_points(free_pi, box, grid_n=3)


def test_free_critical_points(free_pi):
    points = find_critical_points(free_pi, EnergyBox(0.5, 9.5, -1, 1), grid_n=16)
    assert [round(p.e0.real, 6) for p in points] == [1, 4, 9]
    for point, delta in zip(points, (-1, 1, -1)):
        assert point.order_k == 2
        assert point.regime == Regime.EDGE
        assert point.delta_at.real == pytest.approx(delta, abs=1e-8)
        assert same_angles(point.directions, (0.0, math.pi), 1e-9)
    assert points[0].leading_derivative.real == pytest.approx(math.pi ** 2 / 4, abs=1e-6)

    assert find_critical_points(free_pi, EnergyBox(1.5, 3.5, -1, 1), grid_n=8) == []


# Critical points and directions

def test_direction_examples():
    assert same_angles(emanating_directions(1 + 0j, 1, Regime.INTERIOR), (0.0, math.pi), 1e-12)
    assert same_angles(emanating_directions(math.pi ** 2 / 4 + 0j, 2, Regime.EDGE, edge_sign=-1),
                       (0.0, math.pi), 1e-12)
    assert same_angles(emanating_directions(1 + 0j, 2, Regime.INTERIOR),
                       (0.0, math.pi / 2, math.pi, 3 * math.pi / 2), 1e-12)
    # Delta = +1 with Delta'' > 0: Delta drops below 1 along the imaginary directions
    assert same_angles(emanating_directions(2 + 0j, 2, Regime.EDGE, edge_sign=1),
                       (math.pi / 2, 3 * math.pi / 2), 1e-12)
    assert emanating_directions(1 + 0j, 3, Regime.OFF_SPECTRUM) == []


def test_direction_gaps():
    """2k rays at gaps pi/k in the interior, k rays at gaps 2 pi/k at an edge"""
    for k in range(1, 7):
        for phase in (0.0, 0.3, -2.0, math.pi):
            leading = 1.7 * cmath.exp(1j * phase)
            interior = emanating_directions(leading, k, Regime.INTERIOR)
            assert len(interior) == 2 * k
            assert all(0 <= a < TWO_PI for a in interior)
            assert max(abs(g - math.pi / k) for g in cyclic_gaps(interior)) <= 1e-12
            for sign in (1, -1):
                edge = emanating_directions(leading, k, Regime.EDGE, edge_sign=sign)
                assert len(edge) == k
                assert max(abs(g - TWO_PI / k) for g in cyclic_gaps(edge)) <= 1e-12


def test_edge_directions_move_delta_into_the_band():
    """Along a kept ray Re[Delta^(k) (E - E0)^k] has the sign that pulls Delta back into [-1, 1]"""
    for k in (1, 2, 3, 5):
        leading = cmath.exp(0.7j)
        for sign in (1, -1):
            for theta in emanating_directions(leading, k, Regime.EDGE, edge_sign=sign):
                term = (leading * cmath.exp(1j * k * theta)).real
                assert term * sign < 0


def test_direction_arguments_are_validated():
    with pytest.raises(ValueError):
        emanating_directions(1 + 0j, 0, Regime.INTERIOR)
    with pytest.raises(ValueError):
        emanating_directions(0j, 2, Regime.INTERIOR)


def test_classify_regime_and_threshold():
    assert classify_regime(0.5 + 0j) == Regime.INTERIOR
    assert classify_regime(1 + 0j) == Regime.EDGE
    assert classify_regime(-1 + 1e-7 + 0j) == Regime.EDGE
    assert classify_regime(1.5 + 0j) == Regime.OFF_SPECTRUM
    assert classify_regime(0.5 + 1e-6j) == Regime.OFF_SPECTRUM
    assert critical_threshold(0j) == pytest.approx(1e-7)
    assert critical_threshold(9 + 0j) == pytest.approx(1e-6)


def test_vanishing_order():
    jet = TaylorJet(energy=0j, derivatives=(1 + 0j, 0j, 0j, 6 + 0j), radius=0.1, circle_max=1.0)
    assert vanishing_order(jet) == 3
    flat = TaylorJet(energy=0j, derivatives=(1 + 0j, 1e-12 + 0j, 0j), radius=0.1, circle_max=1.0)
    with pytest.raises(OrderUndetermined):
        vanishing_order(flat)


def test_local_structure_of_the_free_potential(free_pi):
    interior = local_structure(free_pi, 0.25)
    assert interior.order_k == 1
    assert interior.regime == Regime.INTERIOR
    assert same_angles(interior.directions, (0.0, math.pi), 1e-9)

    simple_edge = local_structure(free_pi, 0)
    assert simple_edge.order_k == 1
    assert simple_edge.regime == Regime.EDGE
    assert same_angles(simple_edge.directions, (0.0,), 1e-9)

    off = local_structure(free_pi, -1)
    assert off.regime == Regime.OFF_SPECTRUM
    assert off.directions == ()


# Local shape

def test_local_shape_at_free_edges(free_pi):
    """Two arcs meet at angle pi at the double points E = 1, 4, 9"""
    for e0 in (1, 4, 9):
        point = local_structure(free_pi, e0)
        report = verify_local_shape(free_pi, point)
        assert report.arcs_found == 2
        assert same_angles(report.measured_angles, (0.0, math.pi), 1e-2)
        assert report.max_angle_error <= 10 * report.probe_radius
        assert report.probe_radius == pytest.approx(1e-3 * (1 + e0))


def test_local_shape_regular_points(free_pi):
    """A smooth arc crosses the probe circle twice; a simple edge once"""
    report = verify_local_shape(free_pi, local_structure(free_pi, 0.25))
    assert report.arcs_found == 2
    assert cyclic_gaps(report.measured_angles)[0] == pytest.approx(math.pi, abs=1e-2)

    report = verify_local_shape(free_pi, local_structure(free_pi, 0))
    assert report.arcs_found == 1
    assert report.max_angle_error <= 1e-2


def test_local_shape_off_spectrum(free_pi):
    report = verify_local_shape(free_pi, local_structure(free_pi, -1))
    assert report.arcs_found == 0
    assert report.max_angle_error == 0.0


def test_local_shape_error_scales_with_radius(free_pi):
    point = local_structure(free_pi, 0.25)
    small = verify_local_shape(free_pi, point, probe_radius=1e-3)
    large = verify_local_shape(free_pi, point, probe_radius=2e-3)
    assert large.max_angle_error <= 2 * small.max_angle_error + 1e-6


def test_local_shape_count_mismatch(free_pi):
    point = local_structure(free_pi, 1)
    wrong = CriticalPoint(e0=point.e0, order_k=2, delta_at=point.delta_at, regime=point.regime,
                          directions=(0.0,), leading_derivative=point.leading_derivative)
    with pytest.raises(ArcCountMismatch) as error:
        verify_local_shape(free_pi, wrong)
    assert (error.value.predicted, error.value.measured) == (1, 2)

    with pytest.raises(ValueError):
        verify_local_shape(free_pi, point, nodes=4)


def test_interior_double_point_has_four_arcs(pt_well):
    """The interior minimum of Delta on a PT well is a meeting point of four arcs at right angles"""
    scan = scan_real_line(pt_well, 0.5, 5, 201)
    assert scan.extremum_brackets
    a, b = scan.extremum_brackets[0]
    e0 = refine_extremum(pt_well, (a, b), 1e-10)
    point = local_structure(pt_well, e0)
    assert point.order_k == 2
    assert point.regime == Regime.INTERIOR
    report = verify_local_shape(pt_well, point)
    assert report.arcs_found == 4
    assert max(abs(g - math.pi / 2) for g in cyclic_gaps(report.measured_angles)) <= 1e-2


# Non-real spectrum

def test_nonreal_certificate(pt_well):
    certificates = detect_nonreal_from_extremum(pt_well, (0.5, 5), n=201)
    assert certificates
    certificate = certificates[0]
    assert certificate.order_k >= 2
    assert -1 < certificate.delta_at < 1
    assert len(certificate.witness_points) >= 2

    print("\n" + "=" * 50)
    print(f"Extremum at E0={certificate.extremum_e0:.10f}, Delta={certificate.delta_at:.6f}")
    for point in certificate.witness_points:
        print(f"  witness {point:.6f}")
        assert abs(point.imag) >= 1e-4
        assert in_spectrum(pt_well, point, 1e-8)
        assert any(abs(point.conjugate() - other) <= 1e-6 for other in certificate.witness_points)
    print("=" * 50)


def test_nonreal_arc_is_mirrored_and_stays_in_strip(pt_well):
    """Every point of an arc leaving the real extremum has its conjugate on the spectrum too"""
    certificate = detect_nonreal_from_extremum(pt_well, (0.5, 5), n=201)[0]
    witness = next(p for p in certificate.witness_points if p.imag > 0)
    cfg = trace_config(EnergyBox(-1, 8, -3, 3), step=0.02, max_points=200,
                       critical_points=(complex(certificate.extremum_e0),))
    arc = trace_arc(pt_well, witness, cfg)

    bound = bound_region(pt_well)
    assert bound.exact
    for point in arc.points:
        assert bound.contains(point, eps=1e-6), point
        assert in_spectrum(pt_well, point, 1e-8), point
        assert in_spectrum(pt_well, point.conjugate(), 1e-8), point


def test_arcs_of_segment_potential_stay_in_strip(three_segments):
    """Arcs of a potential with an exact bound never leave its strip"""
    # Delta is close to cos(3 sqrt(E - 1/3)), which vanishes near E = 0.61
    seed, _ = correct(three_segments, 0.61 + 0j, 1j, 1e-8)
    arc = trace_arc(three_segments, seed, trace_config(EnergyBox(-1, 8, -2, 2), max_points=400))

    bound = bound_region(three_segments)
    assert bound.exact
    assert len(arc.points) > 10
    assert all(bound.contains(point, eps=1e-6) for point in arc.points)


def test_nonreal_free_potential_has_no_certificates(free_pi, caplog):
    """Extrema of the free discriminant sit at Delta = +-1 and are reported as indeterminate"""
    with caplog.at_level(logging.WARNING):
        assert detect_nonreal_from_extremum(free_pi, (-1, 5), n=121) == []
    assert "Indeterminate extremum" in caplog.text


def test_nonreal_requires_pt_symmetry(constant_i):
    with pytest.raises(NotPTSymmetric):
        detect_nonreal_from_extremum(constant_i, (-1, 5), n=61)


@pytest.mark.slow
def test_cubic_sine_family_has_nonreal_spectrum():
    """Sweeping A i sin(x)^3 finds interior extrema, each certified by conjugate witness pairs"""
    from src.business.pipeline import SpectrumPipeline

    def member(amplitude: float):
        # sin^3 x = (3 sin x - sin 3x) / 4
        return trigonometric_potential(TWO_PI, sin_terms={1: 0.75j * amplitude, 3: -0.25j * amplitude})

    pipeline = SpectrumPipeline(ode_tol=1e-9)
    started = time.perf_counter()
    result = pipeline.scan_family(member, list(np.linspace(0.5, 10, 40)), (-1.0, 8.0), scan_points=181)
    print(f"\nSweep of {len(result.rows)} amplitudes took {time.perf_counter() - started:.1f} s")
    certified = [row for row in result.rows if row.certificates]
    assert certified, "no interior extremum in the sweep"

    for row in certified:
        V = member(row.amplitude)
        for certificate in row.certificates:
            assert certificate.order_k >= 2
            assert -1 < certificate.delta_at < 1
            for point in certificate.witness_points:
                assert abs(point.imag) >= 1e-4
                assert in_spectrum(V, point, 1e-8, 1e-9)
                assert any(abs(point.conjugate() - other) <= 1e-6 for other in certificate.witness_points)
