from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from .exceptions import ParseError
from .exprdsl import parse
from .minkowski import PseudoSphere


class ImageKind(str, Enum):
    """The five pseudo-spherical Darboux images, keyed by their CLI code."""
    RECT_TIMELIKE = "Tr"    # (A)
    RECT_SPACELIKE = "Sr"   # (B)
    RECT_LIGHTLIKE = "Lr"   # (C)
    OSC_SPACELIKE = "So"    # (D)
    OSC_LIGHTLIKE = "Lo"    # (E)

    @property
    def letter(self) -> str:
        return "ABCDE"[list(ImageKind).index(self)]

    @property
    def sphere(self) -> PseudoSphere:
        return _SPHERES[self.value]

    @property
    def dual_side(self) -> str:
        """Frame vector paired with the image in the duality: 'b' or 'n'."""
        return "b" if self.value.endswith("r") else "n"

    @property
    def dual_sphere(self) -> PseudoSphere:
        return PseudoSphere.DE_SITTER if self.dual_side == "b" else PseudoSphere.HYPERBOLIC

    @property
    def fibration_constant(self) -> float:
        return _FIBRATION_CONSTANTS[self.value]


_SPHERES = {
    "Tr": PseudoSphere.HYPERBOLIC,
    "Sr": PseudoSphere.DE_SITTER,
    "Lr": PseudoSphere.LIGHTCONE,
    "So": PseudoSphere.DE_SITTER,
    "Lo": PseudoSphere.LIGHTCONE,
}

_FIBRATION_CONSTANTS = {"Tr": 0.0, "Sr": 0.0, "Lr": 1.0, "So": 0.0, "Lo": -1.0}


class CurveClass(str, Enum):
    GEODESIC = "Geodesic"
    ASYMPTOTIC = "Asymptotic"
    PRINCIPAL = "Principal"


class DirectionField(str, Enum):
    """Normalizations of t', n_gamma' and b'."""
    T_T = "T_t"
    T_N = "T_n"
    T_B = "T_b"


class PointClass(str, Enum):
    CUSP = "Cusp"
    DEGENERATE = "Degenerate"


# ---------------------------------------------------------------------------
# Scene files
# ---------------------------------------------------------------------------

def _check_expression(value: str) -> str:
    try:
        parse(value)
    except ParseError as e:
        raise ValueError(f"expression '{value}' does not parse: {e}") from e
    return value


def _check_interval(value: Tuple[float, float]) -> Tuple[float, float]:
    lo, hi = value
    if not lo < hi:
        raise ValueError(f"interval [{lo}, {hi}] is empty")
    return value


class SurfaceSpec(BaseModel):
    """Surface patch X(u1, u2) = (x0, x1, x2) over a rectangular domain."""
    x0: str
    x1: str
    x2: str
    domain: Tuple[Tuple[float, float], Tuple[float, float]]

    @field_validator('x0', 'x1', 'x2')
    @classmethod
    def validate_expression(cls, v):
        return _check_expression(v)

    @field_validator('domain')
    @classmethod
    def validate_domain(cls, v):
        for interval in v:
            _check_interval(interval)
        return v


class CurveSpec(BaseModel):
    """Curve (u1(t), u2(t)) on the patch."""
    u1: str
    u2: str
    interval: Tuple[float, float]
    anchor: Optional[float] = None  # parameter where s = 0; defaults to the interval start

    @field_validator('u1', 'u2')
    @classmethod
    def validate_expression(cls, v):
        return _check_expression(v)

    @field_validator('interval')
    @classmethod
    def validate_interval(cls, v):
        return _check_interval(v)


class Tolerances(BaseModel):
    causal: Optional[float] = Field(None, gt=0)
    domain: Optional[float] = Field(None, gt=0)
    quadrature: Optional[float] = Field(None, gt=0)


class SceneOptions(BaseModel):
    jet_order: Optional[int] = Field(None, ge=3)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    samples: int = Field(default=64, ge=2)
    grid_samples: Optional[int] = Field(None, ge=2)
    spacelike_grid: Optional[int] = Field(None, ge=2)
    validate_on_load: Literal["warn", "fail"] = "fail"


class SceneFile(BaseModel):
    """JSON scene document: surface, curve, options and named parameters."""
    name: Optional[str] = None
    surface: SurfaceSpec
    curve: CurveSpec
    options: SceneOptions = Field(default_factory=SceneOptions)
    parameters: Dict[str, float] = Field(default_factory=dict)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

class ExpectedValue(BaseModel):
    """A reference value with its provenance.

    CLOSED_FORM values are stated closed forms (sign-reconciled where
    noted), TRIVIAL ones follow from definitions, DERIVED ones were worked out
    by hand and cross-checked by the jet engine.
    """
    quantity: str = Field(..., min_length=1)
    value: Union[float, List[float], str]
    provenance: Literal["CLOSED_FORM", "TRIVIAL", "DERIVED"]
    note: Optional[str] = None


class CatalogEntry(BaseModel):
    id: str = Field(..., min_length=1)
    title: str
    description: str
    scene: SceneFile
    expected: List[ExpectedValue] = Field(default_factory=list)

    @field_validator('id')
    @classmethod
    def validate_id(cls, v):
        if not v.replace("-", "").isalnum() or v.lower() != v:
            raise ValueError(f"catalog id '{v}' must be lowercase alphanumeric with dashes")
        return v


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class SpacelikeSample(BaseModel):
    u1: float
    u2: float
    passed: bool
    margin: Optional[float] = None
    reason: Optional[str] = None


class SpacelikeReport(BaseModel):
    passed: bool
    worst_margin: Optional[float] = None
    worst_at: Optional[Tuple[float, float]] = None
    failures: int = Field(default=0, ge=0)
    samples: List[SpacelikeSample] = Field(default_factory=list)


class DomainVerdict(BaseModel):
    kind: ImageKind
    satisfied: bool
    margin: float
    guard: str


class SingularPoint(BaseModel):
    kind: ImageKind
    s0: float
    t0: float
    classification: PointClass
    delta0: float
    delta1: float
    delta2: Optional[float] = None
    bracket: Tuple[float, float]
    residual: float = Field(..., ge=0)

    @model_validator(mode='after')
    def validate_bracket(self):
        lo, hi = self.bracket
        if lo > hi:
            raise ValueError(f"bracket [{lo}, {hi}] is reversed")
        return self


class ExcludedInterval(BaseModel):
    s_lo: float
    s_hi: float
    guard: str


class SingularityReport(BaseModel):
    kind: ImageKind
    interval: Tuple[float, float]
    grid_n: int = Field(..., ge=2)
    identically_zero: bool = False
    points: List[SingularPoint] = Field(default_factory=list)
    excluded: List[ExcludedInterval] = Field(default_factory=list)


class HeightEvaluation(BaseModel):
    family: ImageKind
    s: float
    v: Tuple[float, float, float]
    h: float
    h1: float
    h2: float
    h3: float


class DualityReport(BaseModel):
    statement: int = Field(..., ge=1, le=5)
    image: ImageKind
    dual_side: Literal["b", "n"]
    pairing_constant: float
    pairing_residual: Optional[float] = Field(None, ge=0)
    isotropy_residual: Optional[float] = Field(None, ge=0)
    evaluated: int = Field(default=0, ge=0)
    skipped: int = Field(default=0, ge=0)


class ConstancyVerdict(BaseModel):
    kind: ImageKind
    interval: Tuple[float, float]
    samples: int
    value: Tuple[float, float, float]
    constancy_residual: float = Field(..., ge=0)
    delta_max: float = Field(..., ge=0)
    planarity_residual: float = Field(..., ge=0)
    locus: Optional[str] = None
    constant: bool


class SliceReport(BaseModel):
    kind: ImageKind
    director: Tuple[float, float, float]
    director_causal: str
    director_ok: bool
    residual: float = Field(..., ge=0)


class CheckResult(BaseModel):
    name: str
    worst: Optional[float] = None
    tolerance: float
    evaluated: int = 0
    skipped: int = 0
    passed: bool


class VerificationReport(BaseModel):
    scene: str
    samples: int
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
