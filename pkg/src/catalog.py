"""Built-in example scenes with their reference values.

Signs are those of the future-directed surface normal. Where a known
closed form was stated for the opposite orientation, the stored value is the
reconciled one and the note says so.
"""

import math
from typing import Dict, List

from .exceptions import SceneError
from .models import CatalogEntry, ExpectedValue, SceneFile

TWO_PI = 2.0 * math.pi

CUBIC_PARAMETERS = ("a20", "a11", "a02", "a30", "a21", "a12", "a03")

_CUBIC_GRAPH = ("a20*u1^2 + a11*u1*u2 + a02*u2^2"
                " + a30*u1^3 + a21*u1^2*u2 + a12*u1*u2^2 + a03*u2^3")


def _scene(name: str, surface: dict, curve: dict, parameters: Dict[str, float] = None,
           **options) -> SceneFile:
    return SceneFile.model_validate({
        "name": name,
        "surface": surface,
        "curve": curve,
        "options": options,
        "parameters": parameters or {},
    })


_ENTRIES: List[CatalogEntry] = [
    CatalogEntry(
        id="plane",
        title="flat spacelike plane x0 = 0",
        description="Unit circle traversed clockwise in (x1, x2), so b points inward.",
        scene=_scene(
            "plane",
            {"x0": "0", "x1": "u1", "x2": "u2", "domain": [[-2.0, 2.0], [-2.0, 2.0]]},
            {"u1": "sin(t)", "u2": "cos(t)", "interval": [0.0, TWO_PI]},
        ),
        expected=[
            ExpectedValue(quantity="n", value=[1.0, 0.0, 0.0], provenance="CLOSED_FORM"),
            ExpectedValue(quantity="kappa_n", value=0.0, provenance="CLOSED_FORM"),
            ExpectedValue(quantity="tau_g", value=0.0, provenance="CLOSED_FORM"),
            ExpectedValue(quantity="kappa_g", value=1.0, provenance="DERIVED",
                          note="Euclidean curvature of the unit circle"),
            ExpectedValue(quantity="delta_Tr", value=0.0, provenance="CLOSED_FORM"),
            ExpectedValue(quantity="image_Tr", value=[-1.0, 0.0, 0.0], provenance="CLOSED_FORM",
                          note="constant -e0"),
            ExpectedValue(quantity="image_So", value="undefined", provenance="TRIVIAL",
                          note="kappa_n = tau_g = 0 everywhere"),
        ],
    ),
    CatalogEntry(
        id="hyperbolic",
        title="hyperbolic plane H^2(-1) (Lorentzian Sabban frame)",
        description="Circle u1 = 1 traversed with u2 = -t so that kappa_g = coth(1) > 0.",
        scene=_scene(
            "hyperbolic",
            {"x0": "cosh(u1)", "x1": "sinh(u1)*cos(u2)", "x2": "sinh(u1)*sin(u2)",
             "domain": [[0.1, 3.0], [-10.0, 10.0]]},
            {"u1": "1", "u2": "-t", "interval": [0.0, TWO_PI]},
        ),
        expected=[
            ExpectedValue(quantity="n", value="gamma", provenance="CLOSED_FORM"),
            ExpectedValue(quantity="kappa_n", value=1.0, provenance="CLOSED_FORM"),
            ExpectedValue(quantity="tau_g", value=0.0, provenance="CLOSED_FORM"),
            ExpectedValue(quantity="kappa_g", value=1.0 / math.tanh(1.0), provenance="DERIVED"),
            ExpectedValue(quantity="length", value=TWO_PI * math.sinh(1.0), provenance="DERIVED"),
            ExpectedValue(quantity="delta_Tr", value=1.0, provenance="CLOSED_FORM"),
            ExpectedValue(quantity="delta_So", value="kappa_g", provenance="CLOSED_FORM"),
            ExpectedValue(quantity="image_Tr", value="-gamma", provenance="CLOSED_FORM"),
            ExpectedValue(quantity="image_So", value="-b", provenance="CLOSED_FORM"),
            ExpectedValue(quantity="image_Sr", value="undefined", provenance="CLOSED_FORM"),
        ],
    ),
    CatalogEntry(
        id="cylinder",
        title="developable graph x0 = sqrt(x^2 + 1) over the (x, y) plane",
        description=("Curve y = f(x) with f'(s)^2 (s^2 + 1) = s^2, f' >= 0, f(0) = 0, "
                     "i.e. f(s) = sqrt(s^2 + 1) - 1, unit speed on s in [0.1, 1]."),
        scene=_scene(
            "cylinder",
            {"x0": "sqrt(u1^2 + 1)", "x1": "u1", "x2": "u2", "domain": [[0.0, 1.5], [-0.5, 1.0]]},
            {"u1": "t", "u2": "sqrt(t^2 + 1) - 1", "interval": [0.1, 1.0], "anchor": 0.0},
        ),
        expected=[
            ExpectedValue(quantity="n", value="(sqrt(s^2+1), s, 0)", provenance="CLOSED_FORM",
                          note="future-directed; the past-directed normal is its negative"),
            ExpectedValue(quantity="kappa_n", value="1/(s^2+1)", provenance="DERIVED",
                          note="sign reconciled to the future-directed normal"),
            ExpectedValue(quantity="tau_g", value="s/(s^2+1)", provenance="DERIVED"),
            ExpectedValue(quantity="image_So", value=[0.0, 0.0, 1.0], provenance="CLOSED_FORM",
                          note="parallel to the director of the rulings"),
            ExpectedValue(quantity="image_Lo", value="(sqrt(s^2+1), s, 1)", provenance="DERIVED"),
        ],
    ),
    CatalogEntry(
        id="cubic-graph",
        title="cubic graph x0 = f(x, y) through the origin, curve y = 0",
        description=("f = a20 x^2 + a11 x y + a02 y^2 + a30 x^3 + a21 x^2 y + a12 x y^2 + a03 y^3; "
                     "arc length anchored at x = 0. Sr has an ordinary cusp at 0 iff a20 = 0, a30 != 0."),
        scene=_scene(
            "cubic-graph",
            {"x0": _CUBIC_GRAPH, "x1": "u1", "x2": "u2", "domain": [[-0.3, 0.3], [-0.3, 0.3]]},
            {"u1": "t", "u2": "0", "interval": [-0.25, 0.25], "anchor": 0.0},
            {"a20": 0.0, "a11": 1.0, "a02": 0.0, "a30": 1.0, "a21": 0.0, "a12": 0.0, "a03": 0.0},
        ),
        expected=[
            ExpectedValue(quantity="kappa_n(0)", value="2*a20", provenance="DERIVED",
                          note="f_xx(0) = 2*a20 and the curve is unit speed at 0"),
            ExpectedValue(quantity="kappa_g(0)", value=0.0, provenance="CLOSED_FORM"),
            ExpectedValue(quantity="tau_g(0)", value="-a11", provenance="CLOSED_FORM"),
            ExpectedValue(quantity="delta_Sr(0)", value="4*a20", provenance="DERIVED"),
            ExpectedValue(quantity="delta_Sr'(0)", value="18*a30 when a20 = 0", provenance="DERIVED"),
            ExpectedValue(quantity="cusp_Sr", value=0.0, provenance="CLOSED_FORM",
                          note="single ordinary cusp at s = 0 for the default parameters"),
        ],
    ),
]

CATALOG: Dict[str, CatalogEntry] = {entry.id: entry for entry in _ENTRIES}


def list_entries() -> List[CatalogEntry]:
    return list(_ENTRIES)


def get_entry(entry_id: str) -> CatalogEntry:
    """Look up a catalog scene.

    Raises:
        SceneError: If the id is unknown
    """
    try:
        return CATALOG[entry_id]
    except KeyError as e:
        known = ", ".join(CATALOG)
        raise SceneError(f"'{entry_id}' is neither a scene file nor a catalog id ({known})") from e
