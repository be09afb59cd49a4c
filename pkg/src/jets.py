"""Truncated Taylor series (jets) in one variable.

A Jet of order K holds a_0..a_K with f(t0 + h) = sum a_k h^k + O(h^(K+1)).
Arithmetic between jets of different orders truncates to the lower order.
Elementary functions use the usual first-order recurrences, so every
operation is O(K^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Union

import numpy as np

from .exceptions import (
    DivisionByZeroConstantTermError,
    DomainError,
    JetOrderError,
    NonInvertibleSeriesError,
    NonzeroInnerConstantError,
    OrderExceededError,
)
from .minkowski import MinkVector

Scalar = Union[int, float]


class Jet:
    """Truncated Taylor series of a scalar quantity."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=float).ravel()
        if arr.size == 0:
            raise JetOrderError("a jet needs at least one coefficient")
        self.coeffs = arr

    @classmethod
    def constant(cls, value: float, order: int) -> Jet:
        coeffs = np.zeros(order + 1)
        coeffs[0] = value
        return cls(coeffs)

    @classmethod
    def variable(cls, value: float, order: int) -> Jet:
        """The jet of t -> t about t0 = value."""
        coeffs = np.zeros(order + 1)
        coeffs[0] = value
        if order >= 1:
            coeffs[1] = 1.0
        return cls(coeffs)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def is_constant(self) -> bool:
        return not np.any(self.coeffs[1:])

    def truncate(self, order: int) -> Jet:
        if order > self.order:
            raise JetOrderError(f"cannot raise order {self.order} to {order} by truncation")
        return Jet(self.coeffs[: order + 1])

    def pad(self, order: int) -> Jet:
        """Extend with zero coefficients up to ``order``."""
        if order <= self.order:
            return self.truncate(order)
        coeffs = np.zeros(order + 1)
        coeffs[: self.coeffs.size] = self.coeffs
        return Jet(coeffs)

    def _coerce(self, other) -> tuple:
        if isinstance(other, Jet):
            k = min(self.order, other.order)
            return self.coeffs[: k + 1], other.coeffs[: k + 1]
        if isinstance(other, (int, float, np.floating, np.integer)):
            rhs = np.zeros(self.coeffs.size)
            rhs[0] = float(other)
            return self.coeffs, rhs
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(b - a)

    def __neg__(self):
        return Jet(-self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Jet(self.coeffs * float(other))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(np.convolve(a, b)[: a.size])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            if other == 0:
                raise DivisionByZeroConstantTermError("division of a jet by zero")
            return Jet(self.coeffs / float(other))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(_series_divide(a, b))

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(_series_divide(b, a))

    def __pow__(self, exponent):
        if isinstance(exponent, Jet):
            if exponent.is_constant():
                return self ** exponent.value
            return jet_elementary(exponent * jet_elementary(self, "log"), "exp")
        if float(exponent).is_integer():
            return _integer_power(self, int(exponent))
        return jet_elementary(self, "pow_const", float(exponent))

    def deriv(self) -> Jet:
        """Series of the derivative; the order drops by one."""
        if self.order == 0:
            raise OrderExceededError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.coeffs.size)
        return Jet(self.coeffs[1:] * k)

    def integrate(self, constant: float = 0.0) -> Jet:
        """Antiderivative series; the order rises by one."""
        coeffs = np.empty(self.coeffs.size + 1)
        coeffs[0] = constant
        coeffs[1:] = self.coeffs / np.arange(1, self.coeffs.size + 1)
        return Jet(coeffs)

    def compose(self, inner: Jet) -> Jet:
        return jet_compose(self, inner)

    def derivative(self, k: int) -> float:
        return derivative(self, k)

    def __call__(self, h: float) -> float:
        return float(np.polynomial.polynomial.polyval(h, self.coeffs))

    def sqrt(self) -> Jet:
        return jet_elementary(self, "sqrt")

    def __repr__(self):
        return f"Jet({np.array2string(self.coeffs, precision=6, separator=', ')})"


def _series_divide(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if b[0] == 0.0:
        raise DivisionByZeroConstantTermError("divisor jet has zero constant term")
    c = np.zeros(a.size)
    for k in range(a.size):
        c[k] = (a[k] - np.dot(b[1: k + 1], c[k - 1:: -1][:k])) / b[0] if k else a[0] / b[0]
    return c


def _integer_power(a: Jet, n: int) -> Jet:
    if n < 0:
        return 1.0 / _integer_power(a, -n)
    result = Jet.constant(1.0, a.order)
    base = a
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Apply one of + - * / (also accepts the symbols × and ÷) to equal-order jets.

    Raises:
        JetOrderError: If the orders differ
        DivisionByZeroConstantTermError: For division by a jet with b.a_0 = 0
    """
    if a.order != b.order:
        raise JetOrderError(f"jet orders differ: {a.order} vs {b.order}")
    ops: Dict[str, Callable[[Jet, Jet], Jet]] = {
        "+": lambda x, y: x + y,
        "-": lambda x, y: x - y,
        "−": lambda x, y: x - y,
        "*": lambda x, y: x * y,
        "×": lambda x, y: x * y,
        "/": lambda x, y: x / y,
        "÷": lambda x, y: x / y,
    }
    if op not in ops:
        raise ValueError(f"unknown jet operation '{op}'")
    return ops[op](a, b)


def _recurrence_pair(a: np.ndarray, f0: float, g0: float, sign: float) -> tuple:
    # f' = a' g, g' = sign * a' f  (sin/cos with sign=-1, sinh/cosh with sign=+1)
    n = a.size
    f = np.zeros(n)
    g = np.zeros(n)
    f[0], g[0] = f0, g0
    j = np.arange(1, n)
    ja = j * a[1:]
    for k in range(1, n):
        f[k] = np.dot(ja[:k], g[k - 1:: -1][:k]) / k
        g[k] = sign * np.dot(ja[:k], f[k - 1:: -1][:k]) / k
    return f, g


def _exp(a: np.ndarray) -> np.ndarray:
    n = a.size
    e = np.zeros(n)
    e[0] = math.exp(a[0])
    ja = np.arange(1, n) * a[1:]
    for k in range(1, n):
        e[k] = np.dot(ja[:k], e[k - 1:: -1][:k]) / k
    return e


def _log(a: np.ndarray) -> np.ndarray:
    if a[0] <= 0.0:
        raise DomainError(f"log of a jet with constant term {a[0]}")
    n = a.size
    out = np.zeros(n)
    out[0] = math.log(a[0])
    for k in range(1, n):
        acc = sum(j * out[j] * a[k - j] for j in range(1, k))
        out[k] = (a[k] - acc / k) / a[0]
    return out


def _pow_const(a: np.ndarray, p: float) -> np.ndarray:
    if a[0] <= 0.0:
        raise DomainError(f"non-integer power {p} of a jet with constant term {a[0]}")
    n = a.size
    q = np.zeros(n)
    q[0] = a[0] ** p
    for k in range(1, n):
        acc = sum(((p + 1.0) * j - k) * a[j] * q[k - j] for j in range(1, k + 1))
        q[k] = acc / (k * a[0])
    return q


def jet_elementary(a: Jet, func: str, exponent: float = None) -> Jet:
    """Compose an elementary function with a jet.

    Args:
        a: Argument jet
        func: One of sin, cos, tan, sinh, cosh, exp, log, sqrt, pow_const
        exponent: Exponent for pow_const

    Raises:
        DomainError: If the constant term is outside the function's domain
    """
    c = a.coeffs
    if func == "exp":
        return Jet(_exp(c))
    if func == "log":
        return Jet(_log(c))
    if func in ("sin", "cos"):
        s, co = _recurrence_pair(c, math.sin(c[0]), math.cos(c[0]), -1.0)
        return Jet(s if func == "sin" else co)
    if func == "tan":
        s, co = _recurrence_pair(c, math.sin(c[0]), math.cos(c[0]), -1.0)
        if abs(co[0]) < 1e-300:
            raise DomainError(f"tan at a pole (constant term {c[0]})")
        return Jet(_series_divide(s, co))
    if func in ("sinh", "cosh"):
        sh, ch = _recurrence_pair(c, math.sinh(c[0]), math.cosh(c[0]), 1.0)
        return Jet(sh if func == "sinh" else ch)
    if func == "sqrt":
        if c[0] <= 0.0:
            raise DomainError(f"sqrt of a jet with constant term {c[0]}")
        return Jet(_pow_const(c, 0.5))
    if func == "pow_const":
        if exponent is None:
            raise ValueError("pow_const needs an exponent")
        if float(exponent).is_integer():
            return _integer_power(a, int(exponent))
        return Jet(_pow_const(c, float(exponent)))
    raise ValueError(f"unknown elementary function '{func}'")


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Truncated composition outer(inner(h)) about h = 0.

    Raises:
        NonzeroInnerConstantError: If inner.a_0 != 0
    """
    if inner.coeffs[0] != 0.0:
        raise NonzeroInnerConstantError(f"inner jet has constant term {inner.coeffs[0]}")
    k = min(outer.order, inner.order)
    inner_k = inner.truncate(k)
    result = Jet.constant(outer.coeffs[k], k)
    for coeff in outer.coeffs[k - 1:: -1][:k]:
        result = result * inner_k + float(coeff)
    return result


def jet_invert_series(s: Jet) -> Jet:
    """Compositional inverse g with s(g(h)) = h to the order of ``s``.

    Newton iteration on series, doubling the number of correct coefficients
    per step.

    Raises:
        NonInvertibleSeriesError: If s.a_0 != 0 or s.a_1 == 0
    """
    order = s.order
    if order < 1:
        raise NonInvertibleSeriesError("series inversion needs order >= 1")
    if s.coeffs[0] != 0.0:
        raise NonInvertibleSeriesError(f"series has constant term {s.coeffs[0]}")
    if s.coeffs[1] == 0.0:
        raise NonInvertibleSeriesError("series has zero linear term")

    s_prime = s.deriv().pad(order)
    g = Jet([0.0, 1.0 / s.coeffs[1]])
    precision = 1
    while precision < order:
        precision = min(2 * precision, order)
        g = g.pad(precision)
        residual = jet_compose(s.truncate(precision), g) - Jet.variable(0.0, precision)
        slope = jet_compose(s_prime.truncate(precision), g)
        g = g - residual / slope
    # One more pass cleans the top coefficient after the final doubling.
    residual = jet_compose(s, g) - Jet.variable(0.0, order)
    g = g - residual / jet_compose(s_prime, g)
    g.coeffs[0] = 0.0
    return g


def derivative(a: Jet, k: int) -> float:
    """k-th derivative at the expansion point, k! * a_k.

    Raises:
        OrderExceededError: If k is negative or above the jet order
    """
    if k < 0 or k > a.order:
        raise OrderExceededError(f"derivative {k} requested from a jet of order {a.order}")
    return math.factorial(k) * float(a.coeffs[k])


@dataclass(frozen=True)
class JetVector:
    """A MinkVector-valued jet: three component jets of equal order."""
    x0: Jet
    x1: Jet
    x2: Jet

    def __post_init__(self):
        orders = {self.x0.order, self.x1.order, self.x2.order}
        if len(orders) != 1:
            raise JetOrderError(f"JetVector components have orders {sorted(orders)}")

    @classmethod
    def constant(cls, v: MinkVector, order: int) -> JetVector:
        return cls(Jet.constant(v.x0, order), Jet.constant(v.x1, order), Jet.constant(v.x2, order))

    @property
    def order(self) -> int:
        return self.x0.order

    def components(self) -> tuple:
        return self.x0, self.x1, self.x2

    def constant_term(self) -> MinkVector:
        return MinkVector(self.x0.value, self.x1.value, self.x2.value)

    def coefficient_array(self) -> np.ndarray:
        """Coefficients as a (3, order + 1) array."""
        return np.vstack([c.coeffs for c in self.components()])

    def _lift(self, fn) -> JetVector:
        return JetVector(*(fn(c) for c in self.components()))

    def _other(self, other):
        if isinstance(other, MinkVector):
            return JetVector.constant(other, self.order)
        return other

    def __add__(self, other):
        other = self._other(other)
        return JetVector(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return JetVector(self.x0 - other.x0, self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self):
        return self._lift(lambda c: -c)

    def __mul__(self, scalar):
        return self._lift(lambda c: c * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._lift(lambda c: c / scalar)

    def deriv(self) -> JetVector:
        return self._lift(lambda c: c.deriv())

    def compose(self, inner: Jet) -> JetVector:
        return self._lift(lambda c: jet_compose(c, inner))

    def truncate(self, order: int) -> JetVector:
        return self._lift(lambda c: c.truncate(order))
