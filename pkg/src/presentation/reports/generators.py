# src/presentation/reports/generators.py

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import jinja2

from src.business.pipeline import (
    DiscriminantSample, FamilyResult, SpectrumResult, VerificationResult,
)
from src.business.spectrum import ArcEndpoint
from .base import ReportGeneratorInterface
from .exceptions import ReportGenerationError

SCHEMA = "hillspec/1"
TEMPLATE_DIR = Path(__file__).parent / "templates"


def _real(value: float) -> Optional[float]:
    value = float(value)
    return value if math.isfinite(value) else None


def _pair(value: complex) -> List[Optional[float]]:
    return [_real(value.real), _real(value.imag)]


def _g17(value: float) -> str:
    return f"{value:.17g}"


def _endpoint(endpoint: ArcEndpoint) -> Dict[str, Any]:
    return {
        'kind': endpoint.kind.value,
        'label': endpoint.label,
        'E': _pair(endpoint.energy),
        'sign': endpoint.sign,
        'order': endpoint.order,
    }


class JSONReportGenerator(ReportGeneratorInterface):
    """Versioned JSON documents with sorted keys and non-finite floats as null"""

    def _dump(self, kind: str, payload: Dict[str, Any]) -> bytes:
        document = {'schema': SCHEMA, 'kind': kind, **payload}
        # floats are written with repr: at most 17 significant digits, read back bit-exact
        try:
            text = json.dumps(document, sort_keys=True, indent=2, allow_nan=False)
        except (TypeError, ValueError) as e:
            raise ReportGenerationError(f"Failed to serialize {kind} result: {str(e)}")
        return (text + "\n").encode("utf-8")

    def discriminant(self, samples: Sequence[DiscriminantSample], description: str) -> bytes:
        return self._dump('discriminant', {
            'potential': description,
            'samples': [
                {'E': _pair(s.energy), 'delta': _pair(s.delta), 'delta_prime': _pair(s.delta_prime)}
                for s in samples
            ],
        })

    def spectrum(self, result: SpectrumResult) -> bytes:
        box, bound = result.box, result.bound
        return self._dump('spectrum', {
            'potential': result.description,
            'box': {'re_min': box.re_min, 're_max': box.re_max,
                    'im_min': box.im_min, 'im_max': box.im_max},
            'bound': {'re_min': _real(bound.re_min), 'im_min': _real(bound.im_min),
                      'im_max': _real(bound.im_max), 'exact': bound.exact},
            'bands': [
                {'lower': b.lower, 'upper': b.upper,
                 'lower_refined': b.lower_refined, 'upper_refined': b.upper_refined}
                for b in result.bands
            ],
            'band_edges': [
                {'E': _pair(e.energy), 'sign': e.sign, 'label': e.label, 'simple': e.simple}
                for e in result.band_edges
            ],
            'critical_points': [
                {'E0': _pair(p.e0), 'order': p.order_k, 'delta': _pair(p.delta_at),
                 'regime': p.regime.value, 'directions': list(p.directions)}
                for p in result.critical_points
            ],
            'arcs': [
                {'points': [_pair(z) for z in arc.points],
                 'delta': [_real(d) for d in arc.delta_values],
                 'start': _endpoint(arc.start_kind),
                 'end': _endpoint(arc.end_kind)}
                for arc in result.arcs
            ],
            'pt_symmetric': result.pt_symmetric,
            'certificates': [
                {'E0': c.extremum_e0, 'delta': c.delta_at, 'order': c.order_k,
                 'witnesses': [_pair(w) for w in c.witness_points]}
                for c in result.certificates
            ],
        })

    def verification(self, result: VerificationResult) -> bytes:
        return self._dump('verification', {
            'angle_threshold': result.angle_threshold,
            'passed': result.passed,
            'points': [
                {'E0': _pair(e.point.e0), 'order': e.point.order_k,
                 'regime': e.point.regime.value,
                 'predicted': list(e.point.directions),
                 'measured': list(e.report.measured_angles) if e.report else None,
                 'arcs_found': e.measured_count,
                 'max_angle_error': _real(e.report.max_angle_error) if e.report else None,
                 'passed': e.passed}
                for e in result.entries
            ],
        })

    def family(self, result: FamilyResult) -> bytes:
        return self._dump('family', {
            'parameter': result.parameter,
            'window': list(result.window),
            'rows': [
                {'value': row.amplitude, 'extrema_found': row.extrema_found,
                 'certificates': [
                     {'E0': c.extremum_e0, 'delta': c.delta_at, 'order': c.order_k,
                      'witnesses': [_pair(w) for w in c.witness_points]}
                     for c in row.certificates
                 ]}
                for row in result.rows
            ],
        })


class CSVReportGenerator(ReportGeneratorInterface):
    """Header row plus one record per sample; floats at 17 significant digits"""

    def _write(self, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> bytes:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_g17(v) if isinstance(v, float) else v for v in row])
        return buffer.getvalue().encode("utf-8")

    def discriminant(self, samples: Sequence[DiscriminantSample], description: str) -> bytes:
        if all(s.energy.imag == 0 for s in samples):
            header = ['E', 're_delta', 'im_delta', 're_delta_prime', 'im_delta_prime']
            rows = [(s.energy.real, s.delta.real, s.delta.imag, s.delta_prime.real, s.delta_prime.imag)
                    for s in samples]
        else:
            header = ['re_E', 'im_E', 're_delta', 'im_delta', 're_delta_prime', 'im_delta_prime']
            rows = [(s.energy.real, s.energy.imag, s.delta.real, s.delta.imag,
                     s.delta_prime.real, s.delta_prime.imag) for s in samples]
        return self._write(header, rows)

    def spectrum(self, result: SpectrumResult) -> bytes:
        rows = []
        for index, arc in enumerate(result.arcs):
            for position, (z, d) in enumerate(zip(arc.points, arc.delta_values)):
                rows.append((index, position, z.real, z.imag, float(d)))
        return self._write(['arc', 'point', 're_E', 'im_E', 're_delta'], rows)

    def verification(self, result: VerificationResult) -> bytes:
        rows = []
        for e in result.entries:
            rows.append((
                e.point.e0.real, e.point.e0.imag, e.point.order_k, e.point.regime.value,
                len(e.point.directions), e.measured_count,
                float(e.report.max_angle_error) if e.report else '',
                'pass' if e.passed else 'fail',
            ))
        return self._write(['re_E0', 'im_E0', 'order', 'regime', 'predicted_arcs',
                            'measured_arcs', 'max_angle_error', 'status'], rows)

    def family(self, result: FamilyResult) -> bytes:
        rows = [(float(row.amplitude), row.extrema_found, len(row.certificates),
                 sum(len(c.witness_points) for c in row.certificates))
                for row in result.rows]
        return self._write([result.parameter, 'extrema_found', 'certificates', 'witnesses'], rows)


class _Frame:
    """Maps data coordinates to SVG pixels with y pointing up."""

    def __init__(self, x_range: Tuple[float, float], y_range: Tuple[float, float],
                 width: int = 800, height: int = 500, margin: int = 60):
        self.x_min, self.x_max = x_range
        self.y_min, self.y_max = y_range
        if not self.x_max > self.x_min:
            self.x_max = self.x_min + 1.0
        if not self.y_max > self.y_min:
            self.y_min, self.y_max = self.y_min - 0.5, self.y_max + 0.5
        self.width, self.height, self.margin = width, height, margin

    def x(self, value: float) -> float:
        span = self.width - 2 * self.margin
        return round(self.margin + span * (value - self.x_min) / (self.x_max - self.x_min), 2)

    def y(self, value: float) -> float:
        value = min(max(value, self.y_min), self.y_max)
        span = self.height - 2 * self.margin
        return round(self.height - self.margin - span * (value - self.y_min) / (self.y_max - self.y_min), 2)

    def polyline(self, points: Sequence[Tuple[float, float]]) -> str:
        return " ".join(f"{self.x(px)},{self.y(py)}" for px, py in points
                        if math.isfinite(px) and math.isfinite(py))

    def ticks(self, count: int = 5) -> Dict[str, List[Dict[str, Any]]]:
        xs = [self.x_min + i * (self.x_max - self.x_min) / count for i in range(count + 1)]
        ys = [self.y_min + i * (self.y_max - self.y_min) / count for i in range(count + 1)]
        return {
            'x': [{'pos': self.x(v), 'label': f"{v:.3g}"} for v in xs],
            'y': [{'pos': self.y(v), 'label': f"{v:.3g}"} for v in ys],
        }


class SVGReportGenerator(ReportGeneratorInterface):
    """Line-art plots rendered through jinja2 templates.

    - Delta against real E with guide lines at +-1
    - Spectral arcs in the complex plane over the bounding strip
    """

    def __init__(self, template_dir: Path = TEMPLATE_DIR):
        try:
            self.env = jinja2.Environment(
                loader=jinja2.FileSystemLoader(str(template_dir)),
                autoescape=True
            )
        except Exception as e:
            raise ReportGenerationError(f"Failed to initialize template environment: {str(e)}")

    def _render(self, template_name: str, **context) -> bytes:
        try:
            return self.env.get_template(template_name).render(**context).encode("utf-8")
        except jinja2.TemplateError as e:
            raise ReportGenerationError(f"Template error: {str(e)}")

    def discriminant(self, samples: Sequence[DiscriminantSample], description: str) -> bytes:
        if not samples or any(s.energy.imag != 0 for s in samples):
            raise ReportGenerationError("SVG discriminant plots need samples on a real window")
        energies = [s.energy.real for s in samples]
        values = [v for s in samples for v in (s.delta.real, s.delta.imag) if math.isfinite(v)]
        low = min([-1.5] + [max(v, -5.0) for v in values])
        high = max([1.5] + [min(v, 5.0) for v in values])
        frame = _Frame((min(energies), max(energies)), (low, high))
        return self._render(
            'discriminant.svg.j2',
            frame=frame,
            title=description,
            ticks=frame.ticks(),
            real_curve=frame.polyline([(s.energy.real, s.delta.real) for s in samples]),
            imag_curve=frame.polyline([(s.energy.real, s.delta.imag) for s in samples]),
            guides=[{'y': frame.y(1.0), 'label': '+1'}, {'y': frame.y(-1.0), 'label': '-1'}],
            zero_y=frame.y(0.0),
        )

    def spectrum(self, result: SpectrumResult) -> bytes:
        box, bound = result.box, result.bound
        frame = _Frame((box.re_min, box.re_max), (box.im_min, box.im_max))
        strip_left = frame.x(max(bound.re_min, box.re_min))
        strip = {
            'x': strip_left,
            'y': frame.y(min(bound.im_max, box.im_max)),
            'width': round(frame.x(box.re_max) - strip_left, 2),
            'height': round(frame.y(max(bound.im_min, box.im_min)) - frame.y(min(bound.im_max, box.im_max)), 2),
        }
        return self._render(
            'spectrum.svg.j2',
            frame=frame,
            title=result.description,
            ticks=frame.ticks(),
            strip=strip,
            axis_y=frame.y(0.0) if box.im_min <= 0 <= box.im_max else None,
            arcs=[frame.polyline([(z.real, z.imag) for z in arc.points]) for arc in result.arcs],
            edges=[{'x': frame.x(e.energy.real), 'y': frame.y(e.energy.imag), 'label': e.label}
                   for e in result.band_edges],
            critical=[{'x': frame.x(p.e0.real), 'y': frame.y(p.e0.imag), 'order': p.order_k}
                      for p in result.critical_points],
            witnesses=[{'x': frame.x(w.real), 'y': frame.y(w.imag)}
                       for c in result.certificates for w in c.witness_points],
        )


GENERATORS = {
    'csv': CSVReportGenerator,
    'json': JSONReportGenerator,
    'svg': SVGReportGenerator,
}


def generator_for(format: str) -> ReportGeneratorInterface:
    try:
        return GENERATORS[format]()
    except KeyError:
        raise ReportGenerationError(f"Unsupported output format: {format}")
