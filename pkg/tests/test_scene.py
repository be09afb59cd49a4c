import json
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from src.exceptions import ConfigError, NotSpacelikeHereError, SceneError
from src.scene import Scene, load_scene, with_parameters

TIMELIKE_SCENE = {
    'name': 'steep',
    'surface': {'x0': '2*u1', 'x1': 'u1', 'x2': 'u2', 'domain': [[-1, 1], [-1, 1]]},
    'curve': {'u1': '0', 'u2': 't', 'interval': [0, 1]},
    'options': {'spacelike_grid': 4},
}

PLANE_SCENE = {
    'surface': {'x0': '0', 'x1': 'u1', 'x2': 'u2', 'domain': [[-2, 2], [-2, 2]]},
    'curve': {'u1': 'r*sin(t)', 'u2': 'r*cos(t)', 'interval': [0, 1]},
    'options': {'jet_order': 5, 'samples': 4},
    'parameters': {'r': 1.0},
}


class TestSceneSettings:
    def test_keyword_beats_file_beats_environment(self):
        config = {'jet_order': 9, 'causal_tol': 1e-9, 'domain_threshold': 1e-10, 'quad_tol': 1e-12,
                  'grid_samples': 100, 'spacelike_grid': 8, 'parallel_workers': 2, 'log_level': 'INFO'}
        assert Scene.from_dict(PLANE_SCENE, config=config).order == 5
        assert Scene.from_dict(PLANE_SCENE, config=config, jet_order=6).order == 6
        scene = Scene.from_dict({k: v for k, v in PLANE_SCENE.items() if k != 'options'}, config=config)
        assert scene.order == 9
        assert scene.grid_samples == 100
        assert scene.workers == 2

    def test_order_too_low(self):
        with pytest.raises(ConfigError, match=">= 3"):
            Scene.from_dict(PLANE_SCENE, jet_order=2)

    def test_s_grid(self):
        scene = Scene.from_dict(PLANE_SCENE)
        grid = scene.s_grid()
        assert len(grid) == 4
        assert grid[0] == pytest.approx(0.0)
        assert grid[-1] == pytest.approx(1.0, abs=1e-10)


class TestSpacelikeValidation:
    def test_fail_mode(self):
        with pytest.raises(NotSpacelikeHereError, match="not spacelike"):
            Scene.from_dict(TIMELIKE_SCENE)

    def test_warn_mode(self):
        scene = Scene.from_dict(TIMELIKE_SCENE, validate='warn')
        assert not scene.check_spacelike('warn').passed

    def test_off(self):
        with patch('src.scene.SurfacePatch.validate_spacelike') as mock_validate:
            Scene.from_dict(TIMELIKE_SCENE, validate='off')
        mock_validate.assert_not_called()


class TestLoading:
    def test_catalog_id_with_parameters(self):
        scene = load_scene('cubic-graph', {'a20': 0.5})
        assert scene.name == 'cubic-graph'
        assert scene.model.parameters['a20'] == 0.5
        assert scene.model.parameters['a30'] == 1.0

    def test_scene_file(self, tmp_path):
        path = tmp_path / 'unit_circle.json'
        path.write_text(json.dumps(PLANE_SCENE))
        scene = load_scene(str(path), {'r': 0.5})
        assert scene.name == 'unit_circle'
        assert scene.model.parameters == {'r': 0.5}

    def test_invalid_json(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"surface": ')
        with pytest.raises(SceneError, match="not valid JSON"):
            load_scene(str(path))

    def test_schema_violation(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'surface': PLANE_SCENE['surface']}))
        with pytest.raises(ValidationError):
            load_scene(str(path))

    def test_unknown_reference(self):
        with pytest.raises(SceneError):
            load_scene('does-not-exist.json')

    def test_with_parameters_leaves_original(self):
        scene = load_scene('plane')
        updated = with_parameters(scene.model, {'k': 2.0})
        assert updated.parameters == {'k': 2.0}
        assert scene.model.parameters == {}
