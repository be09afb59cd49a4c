"""Linear algebra of Lorentz-Minkowski 3-space.

The pairing has signature (-,+,+): <x, y> = -x0*y0 + x1*y1 + x2*y2.
``pairing`` and ``wedge`` are written against component attributes only, so they
lift unchanged to jet-valued vectors (see ``src.jets.JetVector``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

import numpy as np

from .exceptions import NotTimelikeError, ZeroVectorError

DEFAULT_CAUSAL_TOL = 1e-9


@dataclass(frozen=True)
class MinkVector:
    """A vector of R^3_1 in the canonical basis e0, e1, e2."""
    x0: float
    x1: float
    x2: float

    def __post_init__(self):
        for name in ("x0", "x1", "x2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"MinkVector component {name} is not finite: {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, values) -> MinkVector:
        x0, x1, x2 = (float(v) for v in values)
        return cls(x0, x1, x2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2])

    def euclidean_norm_sq(self) -> float:
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2

    def is_zero(self) -> bool:
        return self.x0 == 0.0 and self.x1 == 0.0 and self.x2 == 0.0

    def __add__(self, other: MinkVector) -> MinkVector:
        return MinkVector(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: MinkVector) -> MinkVector:
        return MinkVector(self.x0 - other.x0, self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> MinkVector:
        return MinkVector(-self.x0, -self.x1, -self.x2)

    def __mul__(self, scalar: float) -> MinkVector:
        return MinkVector(self.x0 * scalar, self.x1 * scalar, self.x2 * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> MinkVector:
        return MinkVector(self.x0 / scalar, self.x1 / scalar, self.x2 / scalar)

    def __iter__(self):
        return iter((self.x0, self.x1, self.x2))


E0 = MinkVector(1.0, 0.0, 0.0)
E1 = MinkVector(0.0, 1.0, 0.0)
E2 = MinkVector(0.0, 0.0, 1.0)


class Causality(str, Enum):
    SPACELIKE = "Spacelike"
    TIMELIKE = "Timelike"
    LIGHTLIKE = "Lightlike"


@dataclass(frozen=True)
class CausalCharacter:
    """Causal verdict plus the relative margin <x,x> / |x|^2_euclid."""
    kind: Causality
    margin: float


class PseudoSphere(str, Enum):
    """The three pseudo-spheres, keyed by the value of <x,x> on them."""
    HYPERBOLIC = "Hyperbolic"
    DE_SITTER = "DeSitter"
    LIGHTCONE = "Lightcone"

    @property
    def level(self) -> float:
        return {"Hyperbolic": -1.0, "DeSitter": 1.0, "Lightcone": 0.0}[self.value]


def _vector_type(a: Any, b: Any):
    # Mixed MinkVector/JetVector arguments produce a JetVector.
    if isinstance(a, MinkVector) and isinstance(b, MinkVector):
        return MinkVector
    return b.__class__ if isinstance(a, MinkVector) else a.__class__


def pairing(a, b):
    """Pseudo-scalar product -a0*b0 + a1*b1 + a2*b2."""
    return -(a.x0 * b.x0) + a.x1 * b.x1 + a.x2 * b.x2


def wedge(a, b):
    """Pseudo-vector product, orthogonal to both factors under ``pairing``.

    Expands the determinant with first row (-e0, e1, e2).
    """
    cls = _vector_type(a, b)
    return cls(
        -(a.x1 * b.x2 - a.x2 * b.x1),
        -(a.x0 * b.x2 - a.x2 * b.x0),
        a.x0 * b.x1 - a.x1 * b.x0,
    )


def norm(a: MinkVector) -> float:
    """Pseudo-norm sqrt(|<a,a>|)."""
    return math.sqrt(abs(pairing(a, a)))


def causal_character(a: MinkVector, tol: float = DEFAULT_CAUSAL_TOL) -> CausalCharacter:
    """Classify a nonzero vector by the sign of <a,a>.

    The tolerance is relative to the squared Euclidean norm, so the verdict is
    unchanged by positive rescaling of ``a``.

    Raises:
        ZeroVectorError: If ``a`` is the zero vector
    """
    scale = a.euclidean_norm_sq()
    if scale == 0.0:
        raise ZeroVectorError("causal character of the zero vector is undefined")
    q = pairing(a, a)
    margin = q / scale
    if abs(margin) <= tol:
        return CausalCharacter(Causality.LIGHTLIKE, margin)
    if margin > 0:
        return CausalCharacter(Causality.SPACELIKE, margin)
    return CausalCharacter(Causality.TIMELIKE, margin)


def on_pseudo_sphere(a: MinkVector, sphere: PseudoSphere, tol: float = DEFAULT_CAUSAL_TOL) -> bool:
    """Test membership of ``a`` in a pseudo-sphere.

    H^2(-1) and S^2_1 use |<a,a> - level| <= tol. The lightcone has no scale of
    its own, so there the test is |<a,a>| <= tol * ||a||^2 with a != 0.
    """
    q = pairing(a, a)
    if sphere is PseudoSphere.LIGHTCONE:
        scale = a.euclidean_norm_sq()
        return scale > 0.0 and abs(q) <= tol * scale
    return abs(q - sphere.level) <= tol


def is_future_directed(a: MinkVector, tol: float = DEFAULT_CAUSAL_TOL) -> bool:
    """True iff the timelike vector ``a`` satisfies <a, e0> < 0.

    Raises:
        NotTimelikeError: If ``a`` is not timelike
    """
    try:
        character = causal_character(a, tol)
    except ZeroVectorError as e:
        raise NotTimelikeError("the zero vector has no time orientation") from e
    if character.kind is not Causality.TIMELIKE:
        raise NotTimelikeError(f"vector {tuple(a)} is {character.kind.value}, not timelike")
    return pairing(a, E0) < 0


@dataclass(frozen=True)
class MinkPlane:
    """The plane P(v, c) = {x : <x, v> = c} with pseudo-normal v."""
    v: MinkVector
    c: float

    def __post_init__(self):
        if self.v.is_zero():
            raise ZeroVectorError("plane pseudo-normal must be nonzero")

    def contains(self, x: MinkVector, tol: float = DEFAULT_CAUSAL_TOL) -> bool:
        return abs(pairing(x, self.v) - self.c) <= tol

    def kind(self, tol: float = DEFAULT_CAUSAL_TOL) -> Causality:
        """Causal type of the plane itself (a timelike normal gives a spacelike plane)."""
        normal = causal_character(self.v, tol).kind
        if normal is Causality.TIMELIKE:
            return Causality.SPACELIKE
        if normal is Causality.SPACELIKE:
            return Causality.TIMELIKE
        return Causality.LIGHTLIKE


def classify_section(sphere: PseudoSphere, plane: MinkPlane, tol: float = DEFAULT_CAUSAL_TOL) -> Optional[str]:
    """Name the curve cut out of a pseudo-sphere by a plane.

    Returns None for sections without a conventional name.
    """
    normal = causal_character(plane.v, tol).kind
    through_origin = abs(plane.c) <= tol
    if sphere is PseudoSphere.HYPERBOLIC:
        if normal is Causality.SPACELIKE:
            return "hyperbolic line" if through_origin else "equidistant curve"
        if normal is Causality.LIGHTLIKE and not through_origin:
            return "horocycle"
        if normal is Causality.TIMELIKE:
            return "hyperbolic circle"
    elif sphere is PseudoSphere.DE_SITTER:
        if normal is Causality.TIMELIKE:
            return "geodesic pseudo-circle" if through_origin else "pseudo-circle"
        if normal is Causality.SPACELIKE:
            return "geodesic hyperbola" if through_origin else "hyperbola"
        if normal is Causality.LIGHTLIKE and not through_origin:
            return "de Sitter horocycle"
    elif sphere is PseudoSphere.LIGHTCONE:
        if normal is Causality.TIMELIKE and not through_origin:
            return "lightcone circle"
    return None
