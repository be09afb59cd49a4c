import pytest

from src.catalog import CATALOG, CUBIC_PARAMETERS, get_entry, list_entries
from src.exceptions import SceneError
from src.scene import Scene


class TestCatalog:
    def test_entries(self):
        assert [e.id for e in list_entries()] == ['plane', 'hyperbolic', 'cylinder', 'cubic-graph']
        assert set(CATALOG) == {'plane', 'hyperbolic', 'cylinder', 'cubic-graph'}

    def test_unknown_id(self):
        with pytest.raises(SceneError, match="neither a scene file nor a catalog id"):
            get_entry('torus')

    def test_cubic_parameters_cover_all_coefficients(self):
        assert set(get_entry('cubic-graph').scene.parameters) == set(CUBIC_PARAMETERS)

    def test_cubic_graph_reference_values(self):
        """delta_Sr(0) = 4*a20 and delta_Sr'(0) = 18*a30 (a20 = 0) are the intended values.

        They follow from f_xx(0) = 2*a20 and the future-directed normal. The
        shorter -a20 and 6*a30 drop that factor under the opposite orientation.
        """
        expected = {v.quantity: v.value for v in get_entry('cubic-graph').expected}
        assert expected['kappa_n(0)'] == '2*a20'
        assert expected['delta_Sr(0)'] == '4*a20'
        assert expected["delta_Sr'(0)"] == '18*a30 when a20 = 0'

    def test_provenance_tags(self):
        for entry in list_entries():
            assert entry.expected, f"{entry.id} has no reference values"
            assert {e.provenance for e in entry.expected} <= {'CLOSED_FORM', 'TRIVIAL', 'DERIVED'}

    @pytest.mark.parametrize("entry_id", ['plane', 'hyperbolic', 'cylinder', 'cubic-graph'])
    def test_scenes_are_spacelike(self, entry_id):
        scene = Scene(get_entry(entry_id).scene, name=entry_id)
        report = scene.check_spacelike()
        assert report.passed
        assert report.failures == 0
