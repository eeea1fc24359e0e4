import json

import numpy as np
import pytest

from gaussgcd.errors import DomainError
from gaussgcd.gcdstats import FitResult, MomentSeries, fit_polynomial
from gaussgcd.report import emit_csv, emit_json, emit_svg, format_polynomial


class TestCsv:
    def test_distribution_rows(self, tmp_path):
        path = tmp_path / "dist.csv"
        text = emit_csv(["x", "k", "count"], [[2, 1, 3], [2, 2, 1]], path)
        assert text == "x,k,count\n2,1,3\n2,2,1\n"
        assert path.read_bytes() == b"x,k,count\n2,1,3\n2,2,1\n"

    def test_empty_series_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv(["x", "n", "moment"], [], path)
        assert path.read_text() == "x,n,moment\n"

    def test_float_shortest_roundtrip(self):
        text = emit_csv(["v"], [[0.1], [1 / 3]], None)
        assert text == "v\n0.1\n0.3333333333333333\n"

    def test_none_renders_empty_cell(self):
        assert emit_csv(["a", "b"], [[1, None]], None) == "a,b\n1,\n"


class TestJson:
    def test_mirrors_csv_schema(self, tmp_path):
        path = tmp_path / "dist.json"
        emit_json(["x", "k", "count"], [[2, 1, 3], [2, 2, 1]], path)
        records = json.loads(path.read_text())
        assert records == [
            {"x": 2, "k": 1, "count": 3},
            {"x": 2, "k": 2, "count": 1},
        ]

    def test_drops_padding_cells(self):
        text = emit_json(["n", "c0", "c1"], [[2, 1.5, None]], None)
        assert json.loads(text) == [{"n": 2, "c0": 1.5}]


class TestFormatPolynomial:
    def test_linear(self):
        assert format_polynomial((0.63951, 1.80167)) == "0.63951x + 1.80167"

    def test_cubic_with_negatives(self):
        out = format_polynomial((0.37018, 0.69337, -584.8498))
        assert out == "0.37018x^2 + 0.69337x - 584.84980"

    def test_leading_negative(self):
        assert format_polynomial((-1.25, 0.0)) == "-1.25000x + 0.00000"


class TestSvg:
    def _series(self, n=2, count=40):
        xs = list(range(100, 100 + 10 * count, 10))
        return MomentSeries(
            n=n, samples=tuple((x, 2.0 * x) for x in xs)
        )

    def test_caption_contains_leading_coefficient(self, tmp_path):
        series = self._series()
        fit = fit_polynomial([(float(x), v) for x, v in series.samples], 1)
        path = tmp_path / "fig.svg"
        emit_svg(series, fit, path, conjectured=0.67364)
        text = path.read_text()
        assert f"{fit.coefficients[0]:.5f}" in text
        assert "best fit:" in text
        assert text.lstrip().startswith("<?xml")

    def test_exact_fit_overlays_data(self):
        series = self._series()
        fit = fit_polynomial([(float(x), v) for x, v in series.samples], 1)
        xs = np.array([x for x, _ in series.samples], dtype=float)
        ys = np.array([v for _, v in series.samples])
        assert np.max(np.abs(np.polyval(fit.coefficients, xs) - ys)) < 1e-9

    def test_single_point_rejected(self, tmp_path):
        series = MomentSeries(n=2, samples=((100, 5.0),))
        fit = FitResult(degree=0, coefficients=(5.0,), residual=0.0)
        with pytest.raises(DomainError):
            emit_svg(series, fit, tmp_path / "bad.svg")

    def test_empty_series_rejected(self, tmp_path):
        series = MomentSeries(n=2, samples=())
        fit = FitResult(degree=0, coefficients=(0.0,), residual=0.0)
        with pytest.raises(DomainError):
            emit_svg(series, fit, tmp_path / "bad.svg")

    def test_rerun_byte_identical(self, tmp_path):
        series = self._series()
        fit = fit_polynomial([(float(x), v) for x, v in series.samples], 1)
        p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
        emit_svg(series, fit, p1)
        emit_svg(series, fit, p2)
        assert p1.read_bytes() == p2.read_bytes()
