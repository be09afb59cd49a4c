import math

import numpy as np
import pytest

from src.exceptions import (
    DegenerateTangentPlaneError,
    NotSpacelikeHereError,
    OutOfDomainError,
    UnboundVariableError,
)
from src.jets import Jet
from src.minkowski import E0, MinkVector, is_future_directed, pairing
from src.surface import SurfacePatch

SQUARE = ((-1.0, 1.0), (-1.0, 1.0))


@pytest.fixture
def hyperbolic_patch():
    return SurfacePatch.from_strings("cosh(u1)", "sinh(u1)*cos(u2)", "sinh(u1)*sin(u2)",
                                     ((0.1, 3.0), (-10.0, 10.0)))


class TestConstruction:
    def test_parameters_are_bound(self):
        patch = SurfacePatch.from_strings("a*u1^2", "u1", "u2", SQUARE, {"a": 0.25})
        assert patch.point_at((1.0, 0.0)) == MinkVector(0.25, 1.0, 0.0)

    def test_unbound_parameter(self):
        with pytest.raises(UnboundVariableError, match="'a'"):
            SurfacePatch.from_strings("a*u1^2", "u1", "u2", SQUARE)

    def test_empty_domain(self):
        with pytest.raises(ValueError, match="empty patch domain"):
            SurfacePatch.from_strings("0", "u1", "u2", ((1.0, 1.0), (0.0, 1.0)))

    def test_out_of_domain(self):
        patch = SurfacePatch.from_strings("0", "u1", "u2", SQUARE)
        with pytest.raises(OutOfDomainError):
            patch.point_at((1.5, 0.0))


class TestNormal:
    def test_flat_plane_normal_is_flipped_to_future(self):
        patch = SurfacePatch.from_strings("0", "u1", "u2", SQUARE)
        n, flipped = patch.oriented_normal((0.2, -0.4))
        assert n == E0
        assert flipped

    def test_hyperbolic_normal_is_position(self, hyperbolic_patch):
        u = (1.0, 0.7)
        n = hyperbolic_patch.normal_at(u)
        np.testing.assert_allclose(n.as_array(), hyperbolic_patch.point_at(u).as_array(), atol=1e-14)
        assert is_future_directed(n)
        assert pairing(n, n) == pytest.approx(-1.0)

    def test_timelike_patch(self):
        patch = SurfacePatch.from_strings("2*u1", "u1", "u2", SQUARE)
        with pytest.raises(NotSpacelikeHereError, match="not spacelike"):
            patch.oriented_normal((0.0, 0.0))

    def test_degenerate_patch(self):
        patch = SurfacePatch.from_strings("0", "u1", "u1", SQUARE)
        with pytest.raises(DegenerateTangentPlaneError):
            patch.oriented_normal((0.0, 0.0))

    def test_normal_jet_matches_pointwise_normal(self, hyperbolic_patch):
        u1 = Jet([1.0, 0.3, 0.0, 0.0])
        u2 = Jet([0.7, -1.0, 0.0, 0.0])
        n, _ = hyperbolic_patch.normal_jet(u1, u2)
        np.testing.assert_allclose(n.constant_term().as_array(),
                                   hyperbolic_patch.normal_at((1.0, 0.7)).as_array(), atol=1e-14)
        unit = pairing(n, n)
        np.testing.assert_allclose(unit.coeffs, [-1.0, 0.0, 0.0, 0.0], atol=1e-13)

    def test_normal_jet_on_cylinder(self):
        patch = SurfacePatch.from_strings("sqrt(u1^2 + 1)", "u1", "u2", ((0.0, 1.5), (-0.5, 1.0)))
        n, _ = patch.normal_jet(Jet([0.5, 1.0, 0.0]), Jet([0.0, 0.0, 0.0]))
        np.testing.assert_allclose(n.constant_term().as_array(), [math.sqrt(1.25), 0.5, 0.0], atol=1e-14)


class TestValidateSpacelike:
    def test_spacelike_patch_passes(self, hyperbolic_patch):
        report = hyperbolic_patch.validate_spacelike(grid=8)
        assert report.passed
        assert report.failures == 0
        assert len(report.samples) == 64
        assert report.worst_margin > 0

    def test_partly_timelike_graph_fails(self):
        patch = SurfacePatch.from_strings("u1^2", "u1", "u2", SQUARE)
        report = patch.validate_spacelike(grid=9)
        assert not report.passed
        assert 0 < report.failures < 81
        assert report.worst_margin < 0
        assert abs(report.worst_at[0]) == 1.0
