import pytest

from src.catalog import get_entry
from src.scene import Scene, load_scene, with_parameters


def _cubic_scene(validate=None, **parameters):
    model = with_parameters(get_entry("cubic-graph").scene, parameters)
    return Scene(model, name="cubic-graph", jet_order=7, validate=validate)


@pytest.fixture(scope="session")
def make_cubic():
    """Factory for cubic-graph scenes with parameter overrides."""
    return _cubic_scene


@pytest.fixture(scope="session")
def plane():
    return load_scene("plane", jet_order=7)


@pytest.fixture(scope="session")
def hyperbolic():
    return load_scene("hyperbolic", jet_order=7)


@pytest.fixture(scope="session")
def cylinder():
    return load_scene("cylinder", jet_order=7)


@pytest.fixture(scope="session")
def cubic():
    return load_scene("cubic-graph", jet_order=7)


@pytest.fixture(scope="session")
def cubic_convex():
    """Cubic graph with a20 = 0.5, so delta_Sr(0) = 2."""
    return _cubic_scene(a20=0.5)


@pytest.fixture(scope="session")
def catalog_frames(request):
    """64 evenly spaced frames per catalog scene, sampled once per session."""
    cache = {}

    def frames(scene_name):
        if scene_name not in cache:
            cache[scene_name] = request.getfixturevalue(scene_name).frames(64)
        return cache[scene_name]

    return frames
