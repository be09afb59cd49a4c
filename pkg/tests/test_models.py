import pytest
from pydantic import ValidationError

from src.minkowski import PseudoSphere
from src.models import (
    CatalogEntry,
    CheckResult,
    CurveSpec,
    DualityReport,
    ExpectedValue,
    ImageKind,
    SceneFile,
    SceneOptions,
    SingularPoint,
    SurfaceSpec,
    VerificationReport,
)


def scene_data(**overrides):
    data = {
        'name': 'plane',
        'surface': {'x0': '0', 'x1': 'u1', 'x2': 'u2', 'domain': [[-1, 1], [-1, 1]]},
        'curve': {'u1': 'sin(t)', 'u2': 'cos(t)', 'interval': [0, 1]},
    }
    data.update(overrides)
    return data


class TestImageKind:
    def test_codes_and_letters(self):
        assert [k.value for k in ImageKind] == ['Tr', 'Sr', 'Lr', 'So', 'Lo']
        assert [k.letter for k in ImageKind] == ['A', 'B', 'C', 'D', 'E']

    def test_spheres(self):
        assert ImageKind.RECT_TIMELIKE.sphere is PseudoSphere.HYPERBOLIC
        assert ImageKind.RECT_SPACELIKE.sphere is PseudoSphere.DE_SITTER
        assert ImageKind.OSC_LIGHTLIKE.sphere is PseudoSphere.LIGHTCONE

    def test_dual_sides(self):
        assert ImageKind.RECT_LIGHTLIKE.dual_side == 'b'
        assert ImageKind.OSC_SPACELIKE.dual_side == 'n'
        assert ImageKind.OSC_SPACELIKE.dual_sphere is PseudoSphere.HYPERBOLIC

    def test_fibration_constants(self):
        constants = {k.value: k.fibration_constant for k in ImageKind}
        assert constants == {'Tr': 0.0, 'Sr': 0.0, 'Lr': 1.0, 'So': 0.0, 'Lo': -1.0}


class TestSceneFile:
    def test_valid_scene(self):
        scene = SceneFile(**scene_data(parameters={'a': 1}))
        assert scene.surface.domain == ((-1.0, 1.0), (-1.0, 1.0))
        assert scene.options.samples == 64
        assert scene.options.validate_on_load == 'fail'
        assert scene.curve.anchor is None
        assert scene.parameters == {'a': 1.0}

    def test_bad_expression(self):
        with pytest.raises(ValidationError, match="does not parse"):
            SurfaceSpec(x0='u1 +', x1='u1', x2='u2', domain=[[0, 1], [0, 1]])

    def test_empty_interval(self):
        with pytest.raises(ValidationError, match="empty"):
            CurveSpec(u1='t', u2='0', interval=[1, 1])

    def test_reversed_domain(self):
        with pytest.raises(ValidationError):
            SurfaceSpec(x0='0', x1='u1', x2='u2', domain=[[1, 0], [0, 1]])

    def test_jet_order_minimum(self):
        with pytest.raises(ValidationError):
            SceneOptions(jet_order=2)

    def test_validate_mode(self):
        with pytest.raises(ValidationError):
            SceneOptions(validate_on_load='off')

    def test_missing_curve(self):
        data = scene_data()
        del data['curve']
        with pytest.raises(ValidationError):
            SceneFile(**data)


class TestCatalogModels:
    def test_id_format(self):
        with pytest.raises(ValidationError, match="lowercase"):
            CatalogEntry(id='Cubic_Graph', title='t', description='d', scene=SceneFile(**scene_data()))

    def test_provenance_values(self):
        assert ExpectedValue(quantity='kappa_n', value=1.0, provenance='DERIVED').note is None
        with pytest.raises(ValidationError):
            ExpectedValue(quantity='kappa_n', value=1.0, provenance='GUESSED')


class TestReports:
    def test_reversed_bracket(self):
        with pytest.raises(ValidationError, match="reversed"):
            SingularPoint(kind='Sr', s0=0.0, t0=0.0, classification='Cusp', delta0=0.0, delta1=18.0,
                          bracket=(0.1, -0.1), residual=0.0)

    def test_duality_statement_range(self):
        with pytest.raises(ValidationError):
            DualityReport(statement=0, image='So', dual_side='n', pairing_constant=0.0)

    def test_verification_passed(self):
        ok = CheckResult(name='unit_speed', worst=1e-12, tolerance=1e-8, evaluated=4, passed=True)
        bad = CheckResult(name='frenet_system', worst=1.0, tolerance=1e-8, evaluated=4, passed=False)
        assert VerificationReport(scene='s', samples=4, checks=[ok]).passed
        assert not VerificationReport(scene='s', samples=4, checks=[ok, bad]).passed
