import json
import math

import pytest

from src.exceptions import DomainViolationError
from src.export import (
    analyze_rows,
    format_number,
    image_polyline,
    polyline_to_svg,
    rows_to_csv,
    singular_markers,
    to_json,
)
from src.minkowski import MinkVector, pairing
from src.models import ImageKind
from src.singular import find_singularities


class TestNumberFormatting:
    def test_seventeen_digits(self):
        assert format_number(0.1) == '0.10000000000000001'
        assert format_number(1e-20) == '9.9999999999999995e-21'

    def test_non_finite_is_undefined(self):
        assert format_number(math.nan) is None
        assert format_number(math.inf) is None
        assert format_number(None) is None

    def test_json(self):
        text = to_json({'a': [1.0, None, math.nan], 'b': 'x', 'c': True, 'd': {}})
        assert json.loads(text) == {'a': [1.0, None, None], 'b': 'x', 'c': True, 'd': {}}
        assert '"a": [1, null, null]' in text

    def test_json_rejects_unknown_types(self):
        with pytest.raises(TypeError):
            to_json({'a': object()})

    def test_csv(self):
        text = rows_to_csv([{'s': 0.5, 'ok': True, 'guard': None}], ['s', 'ok', 'guard'])
        assert text == 's,ok,guard\n0.5,true,\n'


class TestAnalyze:
    def test_rows_on_plane(self, plane):
        rows, columns = analyze_rows(plane, 4)
        assert len(rows) == 4
        assert columns[:5] == ['s', 't_param', 'kappa_n', 'kappa_g', 'tau_g']
        assert 'delta_Sr' in columns and 'guard_Lo' in columns
        for row in rows:
            assert row['kappa_g'] == pytest.approx(1.0, abs=1e-10)
            assert row['domain_Tr'] is True
            assert row['domain_So'] is False
            assert row['delta_So'] is None
            assert row['guard_So'] == '(kappa_n, tau_g) != (0, 0)'

    def test_deterministic(self, hyperbolic):
        first = rows_to_csv(*analyze_rows(hyperbolic, 3))
        second = rows_to_csv(*analyze_rows(hyperbolic, 3))
        assert first == second


class TestImageExport:
    def test_polyline_points(self, cylinder):
        points = image_polyline(cylinder, ImageKind.OSC_SPACELIKE, 5)
        assert len(points) == 5
        for p in points:
            assert (p['x0'], p['x1'], p['x2']) == pytest.approx((0.0, 0.0, 1.0), abs=1e-9)

    def test_polyline_gaps(self, cylinder):
        # the rectifying guard fails at s = 1
        points = image_polyline(cylinder, ImageKind.RECT_TIMELIKE, 4)
        assert points[-1]['x0'] is None
        assert points[0]['x0'] is not None

    def test_undefined_everywhere(self, plane):
        with pytest.raises(DomainViolationError):
            image_polyline(plane, ImageKind.OSC_SPACELIKE, 4)

    def test_svg(self, cubic):
        points = image_polyline(cubic, ImageKind.RECT_SPACELIKE, 8)
        report = find_singularities(cubic, ImageKind.RECT_SPACELIKE, grid_n=32)
        markers = singular_markers(cubic, ImageKind.RECT_SPACELIKE, report)
        svg = polyline_to_svg(points, markers, title='cubic Sr')
        assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
        assert '<title>cubic Sr</title>' in svg
        assert svg.count('<circle') == len(markers) >= 1
        assert '<polyline' in svg

    @pytest.mark.parametrize("scene_name,kind", [
        ("hyperbolic", ImageKind.RECT_TIMELIKE),
        ("hyperbolic", ImageKind.OSC_LIGHTLIKE),
        ("cylinder", ImageKind.OSC_SPACELIKE),
        ("cubic", ImageKind.RECT_SPACELIKE),
        ("cubic", ImageKind.OSC_LIGHTLIKE),
    ])
    def test_json_reload_stays_on_sphere(self, request, scene_name, kind):
        """Seventeen digits are enough to keep reloaded points on their pseudo-sphere."""
        points = image_polyline(request.getfixturevalue(scene_name), kind, 16)
        reloaded = json.loads(to_json(points))
        assert len(reloaded) == 16
        for p in reloaded:
            v = MinkVector(p['x0'], p['x1'], p['x2'])
            assert abs(pairing(v, v) - kind.sphere.level) < 1e-9
