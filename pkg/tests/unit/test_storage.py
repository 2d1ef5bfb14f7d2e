import math

import pytest

from src.business.potential import PotentialKind, evaluate
from src.settings import Settings
from src.storage.files import (
    InvalidFormatError, LocalFileStorage, SpecError, StorageOperationError, load_potential, parse_spec,
)

PIECEWISE_SPEC = """{
  "period": 3.141592653589793,
  "type": "piecewise",
  "segments": [[3.141592653589793, [0, 0]]]
}"""

EXPRESSION_SPEC = """{
  "period": 6.283185307179586,
  "type": "expression",
  "source": "A*i*sin(x)^3"
}"""


def test_load_each_kind():
    assert load_potential(PIECEWISE_SPEC).kind == PotentialKind.PIECEWISE

    fourier = load_potential('{"period": 6.283185307179586, "type": "fourier", '
                             '"coefficients": [[1, [0.5, 0]], [-1, [-0.5, 0]]]}')
    assert fourier.kind == PotentialKind.FOURIER
    assert evaluate(fourier, math.pi / 2) == pytest.approx(1j)

    comb = load_potential('{"period": 1, "type": "delta_comb", "background": [0, 0], '
                          '"impulses": [[0.5, [2, 0]]]}')
    assert comb.kind == PotentialKind.DELTA_COMB
    assert comb.body.total_strength == 2


def test_parameter_substitution():
    V = load_potential(EXPRESSION_SPEC, {"A": 2.0})
    assert V.kind == PotentialKind.EXPRESSION
    assert evaluate(V, math.pi / 2) == pytest.approx(2j)

    # without a value A is an unknown identifier
    with pytest.raises(SpecError) as error:
        load_potential(EXPRESSION_SPEC)
    assert error.value.line == 4
    assert error.value.offset == 0


def test_malformed_json_reports_position():
    text = '{\n  "period": 3.14,\n  "type" "piecewise"\n}'
    with pytest.raises(SpecError) as error:
        parse_spec(text)
    assert error.value.line == 3
    assert error.value.offset == 10
    assert "line 3" in str(error.value)


def test_schema_violations():
    with pytest.raises(SpecError) as error:
        parse_spec('{\n  "period": 1,\n  "type": "bessel"\n}')
    assert error.value.line == 3
    assert "type" in str(error.value)

    with pytest.raises(SpecError) as error:
        parse_spec('{\n  "period": -2,\n  "type": "piecewise",\n  "segments": [[1, [0, 0]]]\n}')
    assert error.value.line == 2

    with pytest.raises(SpecError) as error:
        parse_spec('{"period": 1, "type": "piecewise"}')
    assert "requires segments" in str(error.value)


def test_invalid_expression_and_potential():
    text = '{\n  "period": 6.28,\n  "type": "expression",\n  "source": "sin x"\n}'
    with pytest.raises(SpecError) as error:
        load_potential(text)
    assert (error.value.line, error.value.offset) == (4, 4)

    text = '{\n  "period": 2,\n  "type": "piecewise",\n  "segments": [[1, [0, 0]], [0.5, [1, 0]]]\n}'
    with pytest.raises(SpecError) as error:
        load_potential(text)
    assert error.value.line == 4


def test_local_storage(tmp_path):
    storage = LocalFileStorage(tmp_path / "results")
    assert not (tmp_path / "results" / "spectrum.json").exists()

    path = storage.store_result("spectrum", b"{}\n", "json")
    assert path == tmp_path / "results" / "spectrum.json"
    assert path.read_bytes() == b"{}\n"

    explicit = storage.store_result("spectrum", b"a,b\n", "CSV", tmp_path / "nested" / "out.csv")
    assert explicit.read_text() == "a,b\n"

    with pytest.raises(InvalidFormatError):
        storage.store_result("spectrum", b"", "xml")

    spec = tmp_path / "free.json"
    spec.write_text(PIECEWISE_SPEC, encoding="utf-8")
    assert storage.read_spec(spec) == PIECEWISE_SPEC
    with pytest.raises(StorageOperationError):
        storage.read_spec(tmp_path / "missing.json")


def test_settings_environment_placeholders(tmp_path, monkeypatch):
    config = tmp_path / "config.yaml"
    config.write_text('numerics:\n  ode_tol: 1.0e-9\nstorage:\n  output_path: "${HILLSPEC_TEST_OUT:-fallback}"\n')

    monkeypatch.delenv("HILLSPEC_TEST_OUT", raising=False)
    settings = Settings(config)
    assert settings.ode_tol == 1e-9
    assert settings.trace_tol == 1e-8
    assert str(settings.output_path) == "fallback"

    monkeypatch.setenv("HILLSPEC_TEST_OUT", str(tmp_path / "env"))
    assert Settings(config).output_path == tmp_path / "env"

    config.write_text('storage:\n  output_path: "${HILLSPEC_TEST_REQUIRED}"\n')
    monkeypatch.delenv("HILLSPEC_TEST_REQUIRED", raising=False)
    with pytest.raises(ValueError):
        Settings(config)
