import math

import pytest

from src.exceptions import NotTimelikeError, ZeroVectorError
from src.minkowski import (
    E0,
    E1,
    E2,
    Causality,
    MinkPlane,
    MinkVector,
    PseudoSphere,
    causal_character,
    classify_section,
    is_future_directed,
    norm,
    on_pseudo_sphere,
    pairing,
    wedge,
)


class TestPairing:
    def test_signature(self):
        assert pairing(E0, E0) == -1.0
        assert pairing(E1, E1) == 1.0
        assert pairing(E2, E2) == 1.0
        assert pairing(E0, E1) == 0.0

    def test_norm_is_absolute(self):
        assert norm(MinkVector(2.0, 0.0, 0.0)) == pytest.approx(2.0)
        assert norm(MinkVector(1.0, 1.0, 0.0)) == 0.0


class TestWedge:
    def test_basis_products(self):
        assert wedge(E1, E2) == -E0
        assert wedge(E0, E1) == E2
        assert wedge(E2, E0) == E1

    def test_orthogonal_to_factors(self):
        a = MinkVector(0.3, -1.2, 2.5)
        b = MinkVector(1.7, 0.4, -0.9)
        c = wedge(a, b)
        assert pairing(c, a) == pytest.approx(0.0, abs=1e-12)
        assert pairing(c, b) == pytest.approx(0.0, abs=1e-12)

    def test_anticommutes(self):
        a = MinkVector(0.3, -1.2, 2.5)
        b = MinkVector(1.7, 0.4, -0.9)
        assert wedge(a, b) == -wedge(b, a)


class TestCausalCharacter:
    def test_basis(self):
        assert causal_character(E0).kind is Causality.TIMELIKE
        assert causal_character(E1).kind is Causality.SPACELIKE
        assert causal_character(MinkVector(1.0, 1.0, 0.0)).kind is Causality.LIGHTLIKE

    def test_scale_invariant(self):
        v = MinkVector(1.0, 1.0 + 1e-6, 0.0)
        small = causal_character(v * 1e-8)
        large = causal_character(v * 1e8)
        assert small.kind is large.kind is Causality.SPACELIKE
        assert small.margin == pytest.approx(large.margin)

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVectorError):
            causal_character(MinkVector(0.0, 0.0, 0.0))

    def test_non_finite_component_rejected(self):
        with pytest.raises(ValueError, match="not finite"):
            MinkVector(math.nan, 0.0, 0.0)


class TestTimeOrientation:
    def test_future_and_past(self):
        assert is_future_directed(E0)
        assert not is_future_directed(-E0)

    def test_spacelike_has_no_orientation(self):
        with pytest.raises(NotTimelikeError, match="not timelike"):
            is_future_directed(E1)


class TestPseudoSpheres:
    def test_membership(self):
        c = math.cosh(0.7)
        s = math.sinh(0.7)
        assert on_pseudo_sphere(MinkVector(c, s, 0.0), PseudoSphere.HYPERBOLIC)
        assert on_pseudo_sphere(MinkVector(s, c, 0.0), PseudoSphere.DE_SITTER)
        assert on_pseudo_sphere(MinkVector(2.0, 0.0, 2.0), PseudoSphere.LIGHTCONE)
        assert not on_pseudo_sphere(E1, PseudoSphere.HYPERBOLIC)

    def test_lightcone_excludes_origin(self):
        assert not on_pseudo_sphere(MinkVector(0.0, 0.0, 0.0), PseudoSphere.LIGHTCONE)

    def test_tolerance_is_absolute_off_the_lightcone(self):
        """A far point off H^2(-1) by 1e-6 is rejected however large it is."""
        b = 100.0
        a = math.sqrt(1.0 + 1e-6 + b * b)
        assert not on_pseudo_sphere(MinkVector(a, b, 0.0), PseudoSphere.HYPERBOLIC)
        assert on_pseudo_sphere(MinkVector(math.sqrt(1.0 + b * b), b, 0.0), PseudoSphere.HYPERBOLIC, tol=1e-9)

    def test_lightcone_tolerance_scales(self):
        assert on_pseudo_sphere(MinkVector(1e3, 1e3, 1e-4), PseudoSphere.LIGHTCONE)
        assert not on_pseudo_sphere(MinkVector(1.0, 1.0, 1e-3), PseudoSphere.LIGHTCONE)

    def test_levels(self):
        assert PseudoSphere.HYPERBOLIC.level == -1.0
        assert PseudoSphere.DE_SITTER.level == 1.0
        assert PseudoSphere.LIGHTCONE.level == 0.0


class TestPlanes:
    def test_contains(self):
        plane = MinkPlane(E2, 0.5)
        assert plane.contains(MinkVector(3.0, -1.0, 0.5))
        assert not plane.contains(MinkVector(3.0, -1.0, 0.6))

    def test_plane_type_is_dual_to_normal(self):
        assert MinkPlane(E0, 0.0).kind() is Causality.SPACELIKE
        assert MinkPlane(E1, 0.0).kind() is Causality.TIMELIKE
        assert MinkPlane(MinkVector(1.0, 0.0, 1.0), 0.0).kind() is Causality.LIGHTLIKE

    def test_zero_normal_rejected(self):
        with pytest.raises(ZeroVectorError):
            MinkPlane(MinkVector(0.0, 0.0, 0.0), 1.0)

    @pytest.mark.parametrize("sphere,plane,expected", [
        (PseudoSphere.HYPERBOLIC, MinkPlane(E2, 0.0), "hyperbolic line"),
        (PseudoSphere.HYPERBOLIC, MinkPlane(E2, 0.3), "equidistant curve"),
        (PseudoSphere.HYPERBOLIC, MinkPlane(MinkVector(1.0, 1.0, 0.0), -1.0), "horocycle"),
        (PseudoSphere.HYPERBOLIC, MinkPlane(E0, -2.0), "hyperbolic circle"),
        (PseudoSphere.DE_SITTER, MinkPlane(E0, 0.0), "geodesic pseudo-circle"),
        (PseudoSphere.DE_SITTER, MinkPlane(E2, 0.0), "geodesic hyperbola"),
        (PseudoSphere.DE_SITTER, MinkPlane(MinkVector(1.0, 1.0, 0.0), 1.0), "de Sitter horocycle"),
        (PseudoSphere.LIGHTCONE, MinkPlane(E0, -1.0), "lightcone circle"),
        (PseudoSphere.LIGHTCONE, MinkPlane(E1, 0.0), None),
    ])
    def test_classify_section(self, sphere, plane, expected):
        assert classify_section(sphere, plane) == expected
