"""Spacelike surface patches X(u1, u2) given by closed-form expressions."""

from __future__ import annotations

import math
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import (
    DarbouxError,
    DegenerateTangentPlaneError,
    NotSpacelikeHereError,
    OutOfDomainError,
    UnboundVariableError,
)
from .exprdsl import Expr, compile_scalar, diff, eval_jet, parse, substitute, to_text, variables
from .jets import Jet, JetVector
from .minkowski import DEFAULT_CAUSAL_TOL, MinkVector, pairing, wedge
from .models import SpacelikeReport, SpacelikeSample
from .utils import get_logger

logger = get_logger(__name__)

PATCH_VARIABLES = ("u1", "u2")
Domain = Tuple[Tuple[float, float], Tuple[float, float]]


class SurfacePatch:
    """X(u1, u2) = (x0, x1, x2) with its symbolic partials X_u1, X_u2.

    Immutable after construction.
    """

    def __init__(self, components: Sequence[Expr], domain: Domain):
        if len(components) != 3:
            raise ValueError("a surface patch needs three component expressions")
        free = set().union(*(variables(c) for c in components)) - set(PATCH_VARIABLES)
        if free:
            raise UnboundVariableError(sorted(free)[0])
        (a, b), (c, d) = domain
        if not (a < b and c < d):
            raise ValueError(f"empty patch domain {domain}")

        self.components = tuple(components)
        self.domain: Domain = ((float(a), float(b)), (float(c), float(d)))
        self.partial_u1 = tuple(diff(x, "u1") for x in self.components)
        self.partial_u2 = tuple(diff(x, "u2") for x in self.components)
        self._point_fns = [compile_scalar(x) for x in self.components]
        self._du1_fns = [compile_scalar(x) for x in self.partial_u1]
        self._du2_fns = [compile_scalar(x) for x in self.partial_u2]

    @classmethod
    def from_strings(cls, x0: str, x1: str, x2: str, domain: Domain,
                     parameters: Optional[Mapping[str, float]] = None) -> SurfacePatch:
        """Parse component expressions, binding named parameters as constants."""
        parameters = parameters or {}
        exprs = [substitute(parse(text), parameters) for text in (x0, x1, x2)]
        return cls(exprs, domain)

    def __repr__(self):
        texts = ", ".join(to_text(c) for c in self.components)
        return f"SurfacePatch(({texts}), domain={self.domain})"

    def contains(self, u: Tuple[float, float], tol: float = 1e-12) -> bool:
        (a, b), (c, d) = self.domain
        return a - tol <= u[0] <= b + tol and c - tol <= u[1] <= d + tol

    def _check(self, u: Tuple[float, float]) -> dict:
        if not self.contains(u):
            raise OutOfDomainError(f"parameter {u} outside patch domain {self.domain}")
        return {"u1": float(u[0]), "u2": float(u[1])}

    def point_at(self, u: Tuple[float, float]) -> MinkVector:
        env = self._check(u)
        return MinkVector(*(fn(env) for fn in self._point_fns))

    def tangents_at(self, u: Tuple[float, float]) -> Tuple[MinkVector, MinkVector]:
        env = self._check(u)
        xu1 = MinkVector(*(fn(env) for fn in self._du1_fns))
        xu2 = MinkVector(*(fn(env) for fn in self._du2_fns))
        return xu1, xu2

    def oriented_normal(self, u: Tuple[float, float],
                        tol: float = DEFAULT_CAUSAL_TOL) -> Tuple[MinkVector, bool]:
        """Future-directed unit normal at u and whether the raw wedge was flipped.

        Raises:
            DegenerateTangentPlaneError: If X_u1 ^ X_u2 vanishes
            NotSpacelikeHereError: If the tangent plane is not spacelike
        """
        xu1, xu2 = self.tangents_at(u)
        raw = wedge(xu1, xu2)
        scale = xu1.euclidean_norm_sq() * xu2.euclidean_norm_sq()
        if raw.euclidean_norm_sq() <= 1e-28 * max(scale, 1e-300):
            raise DegenerateTangentPlaneError(f"X_u1 ^ X_u2 vanishes at {u}")
        q = pairing(raw, raw)
        if q >= -tol * raw.euclidean_norm_sq():
            raise NotSpacelikeHereError(f"tangent plane at {u} is not spacelike (<N,N> = {q:.3e})")
        n = raw / math.sqrt(-q)
        if n.x0 < 0:
            return -n, True
        return n, False

    def normal_at(self, u: Tuple[float, float], tol: float = DEFAULT_CAUSAL_TOL) -> MinkVector:
        return self.oriented_normal(u, tol)[0]

    def _jets(self, exprs, u1: Jet, u2: Jet) -> JetVector:
        bindings = {"u1": u1, "u2": u2}
        return JetVector(*(eval_jet(x, bindings) for x in exprs))

    def point_jet(self, u1: Jet, u2: Jet) -> JetVector:
        """X along jet-valued parameters."""
        return self._jets(self.components, u1, u2)

    def tangent_jets(self, u1: Jet, u2: Jet) -> Tuple[JetVector, JetVector]:
        return self._jets(self.partial_u1, u1, u2), self._jets(self.partial_u2, u1, u2)

    def normal_jet(self, u1: Jet, u2: Jet) -> Tuple[JetVector, bool]:
        """Future-directed unit normal along jet-valued parameters.

        Normalization happens in jet arithmetic; no finite differences.
        """
        xu1, xu2 = self.tangent_jets(u1, u2)
        raw = wedge(xu1, xu2)
        minus_q = -pairing(raw, raw)
        if raw.constant_term().euclidean_norm_sq() == 0.0:
            raise DegenerateTangentPlaneError(f"X_u1 ^ X_u2 vanishes at ({u1.value}, {u2.value})")
        if minus_q.value <= 0.0:
            raise NotSpacelikeHereError(
                f"tangent plane at ({u1.value}, {u2.value}) is not spacelike")
        n = raw / minus_q.sqrt()
        if n.x0.value < 0:
            return -n, True
        return n, False

    def validate_spacelike(self, grid: int = 64, tol: float = DEFAULT_CAUSAL_TOL) -> SpacelikeReport:
        """Sample the domain on a grid x grid lattice and check spacelikeness.

        A sample passes when both partials are spacelike and their wedge is
        timelike, each by more than ``tol`` in relative margin.
        """
        (a, b), (c, d) = self.domain
        samples = []
        worst = None
        worst_at = None
        failures = 0
        for u1 in np.linspace(a, b, grid):
            for u2 in np.linspace(c, d, grid):
                u = (float(u1), float(u2))
                try:
                    xu1, xu2 = self.tangents_at(u)
                    raw = wedge(xu1, xu2)
                    margins = [
                        pairing(xu1, xu1) / max(xu1.euclidean_norm_sq(), 1e-300),
                        pairing(xu2, xu2) / max(xu2.euclidean_norm_sq(), 1e-300),
                        -pairing(raw, raw) / max(raw.euclidean_norm_sq(), 1e-300),
                    ]
                    margin = min(margins)
                    passed = margin > tol
                    reason = None if passed else "tangent plane not spacelike"
                except (DarbouxError, ValueError, OverflowError) as e:
                    margin, passed, reason = None, False, str(e)

                if margin is not None and (worst is None or margin < worst):
                    worst, worst_at = margin, u
                if not passed:
                    failures += 1
                samples.append(SpacelikeSample(u1=u[0], u2=u[1], passed=passed, margin=margin, reason=reason))

        report = SpacelikeReport(passed=failures == 0, worst_margin=worst, worst_at=worst_at,
                                 failures=failures, samples=samples)
        if report.passed:
            logger.debug(f"Spacelike validation passed on {grid}x{grid} grid (worst margin {worst:.3e})")
        else:
            logger.warning(f"Spacelike validation failed at {failures}/{grid * grid} samples")
        return report
