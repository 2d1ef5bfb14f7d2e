import csv
import io
import json
import math

import pytest

from src.business.pipeline import (
    DiscriminantSample, FamilyResult, FamilyRow, SpectrumResult, VerificationEntry, VerificationResult,
)
from src.business.potential import SpectralBound
from src.business.spectrum import (
    ArcEndpoint, BandEdge, CriticalPoint, EndpointKind, EnergyBox, LocalShapeReport,
    NonrealCertificate, RealBand, Regime, SpectralArc,
)
from src.presentation.reports import (
    CSVReportGenerator, JSONReportGenerator, ReportGenerationError, SVGReportGenerator, generator_for,
)


@pytest.fixture
def samples():
    return [
        DiscriminantSample(0j, 1 + 0j, complex(-math.pi ** 2 / 2)),
        DiscriminantSample(0.25 + 0j, 0j, complex(-math.pi)),
        DiscriminantSample(1 + 0j, -1 + 0j, 0j),
    ]


@pytest.fixture
def critical_point():
    return CriticalPoint(e0=1 + 0j, order_k=2, delta_at=-1 + 0j, regime=Regime.EDGE,
                         directions=(0.0, math.pi), leading_derivative=complex(math.pi ** 2 / 4))


@pytest.fixture
def spectrum_result(critical_point):
    arc = SpectralArc(
        points=(0j, 0.5 + 0j, 1 + 0j, 1.5 + 0j),
        delta_values=(1.0, 0.0, -1.0, -0.5),
        start_kind=ArcEndpoint(EndpointKind.BAND_EDGE, 0j, sign=1),
        end_kind=ArcEndpoint(EndpointKind.BOX_EXIT, 1.5 + 0j),
    )
    return SpectrumResult(
        description="piecewise potential, period 3.14159",
        box=EnergyBox(-1, 2, -1, 1),
        bound=SpectralBound(0.0, 0.0, 0.0, True),
        bands=(RealBand(0.0, 2.0, True, False),),
        band_edges=(BandEdge(0j, 1, True), BandEdge(1 + 0j, -1, False)),
        critical_points=(critical_point,),
        arcs=(arc,),
        pt_symmetric=True,
        certificates=(NonrealCertificate(2.47, -0.92, 2, (2.47 + 0.3j, 2.47 - 0.3j)),),
    )


def test_json_discriminant(samples):
    document = json.loads(JSONReportGenerator().discriminant(samples, "free potential"))
    assert document['schema'] == "hillspec/1"
    assert document['kind'] == "discriminant"
    assert document['potential'] == "free potential"
    assert document['samples'][0] == {'E': [0.0, 0.0], 'delta': [1.0, 0.0],
                                      'delta_prime': [-math.pi ** 2 / 2, 0.0]}


def test_json_keys_are_sorted_and_non_finite_is_null():
    rendered = JSONReportGenerator().discriminant(
        [DiscriminantSample(-1000 + 0j, complex(math.inf, 0), complex(math.nan, 0))], "overflow")
    text = rendered.decode("utf-8")
    assert text.endswith("\n")
    assert "NaN" not in text and "Infinity" not in text
    document = json.loads(text)
    assert document['samples'][0]['delta'] == [None, 0.0]
    assert list(document) == sorted(document)
    assert list(document['samples'][0]) == ['E', 'delta', 'delta_prime']


def test_json_spectrum(spectrum_result):
    document = json.loads(JSONReportGenerator().spectrum(spectrum_result))
    assert document['kind'] == "spectrum"
    assert document['box'] == {'re_min': -1, 're_max': 2, 'im_min': -1, 'im_max': 1}
    assert document['bands'][0]['upper_refined'] is False
    assert [e['label'] for e in document['band_edges']] == ["P", "AP"]
    assert document['critical_points'][0]['regime'] == "edge"
    assert document['critical_points'][0]['directions'] == [0.0, math.pi]

    arc = document['arcs'][0]
    assert len(arc['points']) == len(arc['delta']) == 4
    assert arc['start'] == {'kind': 'band_edge', 'label': 'BandEdge(+1)', 'E': [0.0, 0.0],
                            'sign': 1, 'order': None}
    assert arc['end']['label'] == "BoxExit"
    assert document['certificates'][0]['witnesses'] == [[2.47, 0.3], [2.47, -0.3]]


def test_json_rendering_is_deterministic(spectrum_result):
    generator = JSONReportGenerator()
    assert generator.spectrum(spectrum_result) == generator.spectrum(spectrum_result)


def test_json_verification_and_family(critical_point):
    report = LocalShapeReport((0.0, math.pi), (0.0, math.pi), 1e-9, 2, 2e-3)
    result = VerificationResult((VerificationEntry(critical_point, report, True, 2),
                                 VerificationEntry(critical_point, None, False, 3)), 1e-2)
    document = json.loads(JSONReportGenerator().verification(result))
    assert document['passed'] is False
    assert document['points'][0]['measured'] == [0.0, math.pi]
    assert document['points'][1]['measured'] is None
    assert document['points'][1]['arcs_found'] == 3

    family = FamilyResult("A", (-1.0, 8.0), (FamilyRow(0.5, 0, ()), FamilyRow(2.0, 1, ())))
    document = json.loads(JSONReportGenerator().family(family))
    assert document['window'] == [-1.0, 8.0]
    assert [row['value'] for row in document['rows']] == [0.5, 2.0]


def test_csv_discriminant(samples):
    rows = list(csv.reader(io.StringIO(CSVReportGenerator().discriminant(samples, "free").decode())))
    assert rows[0] == ['E', 're_delta', 'im_delta', 're_delta_prime', 'im_delta_prime']
    assert rows[1][:3] == ['0', '1', '0']
    assert float(rows[2][3]) == -math.pi
    assert len(rows) == 4

    off_axis = [DiscriminantSample(1j, 1 + 0j, 0j)]
    rows = list(csv.reader(io.StringIO(CSVReportGenerator().discriminant(off_axis, "i").decode())))
    assert rows[0][:2] == ['re_E', 'im_E']
    assert rows[1][:2] == ['0', '1']


def test_csv_spectrum_and_family(spectrum_result):
    rows = list(csv.reader(io.StringIO(CSVReportGenerator().spectrum(spectrum_result).decode())))
    assert rows[0] == ['arc', 'point', 're_E', 'im_E', 're_delta']
    assert rows[3] == ['0', '2', '1', '0', '-1']

    family = FamilyResult("A", (-1.0, 8.0), (FamilyRow(0.5, 1, (
        NonrealCertificate(2.0, 0.1, 2, (2 + 1j, 2 - 1j)),)),))
    rows = list(csv.reader(io.StringIO(CSVReportGenerator().family(family).decode())))
    assert rows == [['A', 'extrema_found', 'certificates', 'witnesses'], ['0.5', '1', '1', '2']]


def test_svg_outputs(samples, spectrum_result):
    svg = SVGReportGenerator().discriminant(samples, "free potential").decode()
    assert svg.startswith("<svg")
    assert 'class="re-delta"' in svg
    assert "free potential" in svg

    svg = SVGReportGenerator().spectrum(spectrum_result).decode()
    assert svg.count('class="arc"') == 1
    assert svg.count('class="edge"') == 2
    assert svg.count('class="critical"') == 1
    assert svg.count('class="witness"') == 2


def test_svg_needs_a_real_window():
    with pytest.raises(ReportGenerationError):
        SVGReportGenerator().discriminant([DiscriminantSample(1j, 0j, 0j)], "complex")


def test_unsupported_formats():
    assert isinstance(generator_for('json'), JSONReportGenerator)
    with pytest.raises(ReportGenerationError):
        generator_for('xml')
    with pytest.raises(NotImplementedError):
        SVGReportGenerator().verification(VerificationResult((), 1e-2))


def test_json_floats_read_back_exactly():
    values = [0.1 + 0.2, math.pi / 3, -2.0 ** -1074, 1 / 3 * 1e300, 6.02214076e23]
    samples = [DiscriminantSample(complex(v, -v), complex(v), 0j) for v in values]
    document = json.loads(JSONReportGenerator().discriminant(samples, "floats"))
    for value, sample in zip(values, document['samples']):
        assert sample['E'] == [value, -value]
        assert sample['delta'][0] == value
