"""Exception hierarchy for the Darboux toolkit.

Lower layers raise these; the CLI maps them to exit codes.
"""

from typing import Optional


class DarbouxError(Exception):
    """Base class for every error raised by the toolkit."""


class ConfigError(DarbouxError):
    """Invalid configuration value (environment, scene options or flags)."""


class SceneError(DarbouxError):
    """Scene file missing, unreadable or referring to an unknown catalog id."""


# minkowski

class ZeroVectorError(DarbouxError):
    """Causal character requested for the zero vector."""


class NotTimelikeError(DarbouxError):
    """Time orientation requested for a vector that is not timelike."""


# jets

class JetError(DarbouxError):
    """Base class for jet arithmetic failures."""


class JetOrderError(JetError):
    """Jets of incompatible or insufficient order."""


class DivisionByZeroConstantTermError(JetError):
    """Division by a jet whose constant term vanishes."""


class DomainError(JetError):
    """Elementary function evaluated outside its domain."""


class NonzeroInnerConstantError(JetError):
    """Composition with an inner jet that does not vanish at the expansion point."""


class NonInvertibleSeriesError(JetError):
    """Series inversion of a jet without a nonzero linear term."""


class OrderExceededError(JetError):
    """Derivative requested beyond the order carried by a jet."""


# exprdsl

class ParseError(DarbouxError):
    """Malformed expression text.

    Attributes:
        offset: Byte offset of the offending token in the UTF-8 input
        expected: Description of what the grammar expected
        found: Description of what was found instead
    """

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class UnboundVariableError(DarbouxError):
    """Expression references a variable with no binding."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable '{name}'")


class UnsupportedNodeError(DarbouxError):
    """Expression node the differentiator does not know about."""


# surface

class OutOfDomainError(DarbouxError):
    """Parameter outside the rectangular patch domain or curve interval."""


class DegenerateTangentPlaneError(DarbouxError):
    """The wedge of the patch partials vanishes."""


class NotSpacelikeHereError(DarbouxError):
    """The surface (or curve tangent) is not spacelike at the sample."""


# curveframe

class NonRegularCurveError(DarbouxError):
    """Curve speed below the regularity threshold."""


# darboux

class DomainViolationError(DarbouxError):
    """A Darboux image or invariant was requested where its guard fails.

    Attributes:
        kind: Code of the image kind (Tr, Sr, Lr, So, Lo)
        guard: Text of the violated guard
        margin: Signed margin of the guard, if known
    """

    def __init__(self, kind: str, guard: str, margin: Optional[float] = None, detail: str = ""):
        self.kind = kind
        self.guard = guard
        self.margin = margin
        message = f"image {kind} undefined: guard '{guard}' fails"
        if margin is not None:
            message += f" (margin {margin:.3e})"
        if detail:
            message += f"; {detail}"
        super().__init__(message)


class DegenerateDerivativeError(DarbouxError):
    """Direction field requested where the frame derivative has zero pseudo-norm."""


# singular

class VNotOnSphereError(DarbouxError):
    """Height-function parameter is not on the family's pseudo-sphere."""
