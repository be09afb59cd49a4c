"""Pseudo-spherical Darboux images, their delta invariants and direction fields.

Images are evaluated exactly as their defining formulas read, in jet
arithmetic, so derivatives of images and invariants come for free:

    Tr  (tau_g t - kappa_g n) / sqrt(kappa_g^2 - tau_g^2)      on H^2
    Sr  (tau_g t - kappa_g n) / sqrt(tau_g^2 - kappa_g^2)      on S^2_1
    Lr  Tr + b                                                 on LC*
    So  (tau_g t - kappa_n b) / sqrt(kappa_n^2 + tau_g^2)      on S^2_1
    Lo  So + n                                                 on LC*
"""

from __future__ import annotations

from typing import Dict, Tuple

import numpy as np

from .curveframe import FrameSample
from .exceptions import DegenerateDerivativeError, DomainViolationError
from .jets import Jet, JetVector
from .minkowski import pairing
from .models import DirectionField, DomainVerdict, ImageKind

DEFAULT_DOMAIN_THRESHOLD = 1e-10

GUARDS: Dict[ImageKind, str] = {
    ImageKind.RECT_TIMELIKE: "kappa_g^2 > tau_g^2",
    ImageKind.RECT_SPACELIKE: "tau_g^2 > kappa_g^2",
    ImageKind.RECT_LIGHTLIKE: "kappa_g^2 > tau_g^2",
    ImageKind.OSC_SPACELIKE: "(kappa_n, tau_g) != (0, 0)",
    ImageKind.OSC_LIGHTLIKE: "(kappa_n, tau_g) != (0, 0)",
}

MATCHED_FIELDS: Dict[ImageKind, DirectionField] = {
    ImageKind.RECT_TIMELIKE: DirectionField.T_B,
    ImageKind.RECT_SPACELIKE: DirectionField.T_B,
    ImageKind.RECT_LIGHTLIKE: DirectionField.T_B,
    ImageKind.OSC_SPACELIKE: DirectionField.T_N,
    ImageKind.OSC_LIGHTLIKE: DirectionField.T_N,
}


def _margin_jet(kind: ImageKind, f: FrameSample) -> Jet:
    kn, kg, tg = f.kappa_n, f.kappa_g, f.tau_g
    if kind in (ImageKind.RECT_TIMELIKE, ImageKind.RECT_LIGHTLIKE):
        return kg * kg - tg * tg
    if kind is ImageKind.RECT_SPACELIKE:
        return tg * tg - kg * kg
    return kn * kn + tg * tg


def domain_predicate(kind: ImageKind, f: FrameSample,
                     threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> DomainVerdict:
    """Evaluate the guard of an image at a sample.

    The margin is kappa_g^2 - tau_g^2 (Tr, Lr), tau_g^2 - kappa_g^2 (Sr) or
    kappa_n^2 + tau_g^2 (So, Lo); the guard holds when it exceeds ``threshold``.
    """
    margin = _margin_jet(kind, f).value
    return DomainVerdict(kind=kind, satisfied=margin > threshold, margin=margin, guard=GUARDS[kind])


def _require(kind: ImageKind, f: FrameSample, threshold: float) -> Jet:
    margin = _margin_jet(kind, f)
    if not margin.value > threshold:
        raise DomainViolationError(kind.value, GUARDS[kind], margin.value, f"s={f.s:.6g}")
    return margin


def image(kind: ImageKind, f: FrameSample, threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> JetVector:
    """The Darboux image of ``kind`` as a jet-valued vector in arc length.

    Raises:
        DomainViolationError: If the image's guard fails at the sample
    """
    margin = _require(kind, f, threshold)
    root = margin.sqrt()
    if kind in (ImageKind.RECT_TIMELIKE, ImageKind.RECT_SPACELIKE, ImageKind.RECT_LIGHTLIKE):
        w = (f.tau_g * f.t - f.kappa_g * f.n) / root
        return w + f.b if kind is ImageKind.RECT_LIGHTLIKE else w
    w = (f.tau_g * f.t - f.kappa_n * f.b) / root
    return w + f.n if kind is ImageKind.OSC_LIGHTLIKE else w


def delta(kind: ImageKind, f: FrameSample, threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> Jet:
    """The delta invariant of ``kind``; its zeros are the singular points of the image.

    Raises:
        DomainViolationError: If the image's guard fails at the sample
    """
    margin = _require(kind, f, threshold)
    kn, kg, tg = f.kappa_n, f.kappa_g, f.tau_g
    if kind in (ImageKind.RECT_TIMELIKE, ImageKind.RECT_LIGHTLIKE):
        value = kn - (kg * tg.deriv() - kg.deriv() * tg) / margin
        return value + margin.sqrt() if kind is ImageKind.RECT_LIGHTLIKE else value
    if kind is ImageKind.RECT_SPACELIKE:
        return kn + (kg * tg.deriv() - kg.deriv() * tg) / margin
    value = kg + (kn * tg.deriv() - kn.deriv() * tg) / margin
    return value + margin.sqrt() if kind is ImageKind.OSC_LIGHTLIKE else value


def direction_field(which: DirectionField, f: FrameSample,
                    threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> JetVector:
    """Normalize t', n' or b' by its own pseudo-norm.

    Raises:
        DegenerateDerivativeError: If the derivative has (near) zero pseudo-norm
    """
    derivative = {
        DirectionField.T_T: f.t_prime,
        DirectionField.T_N: f.n_prime,
        DirectionField.T_B: f.b_prime,
    }[which]
    q = pairing(derivative, derivative)
    if abs(q.value) <= threshold:
        raise DegenerateDerivativeError(f"{which.value} undefined at s={f.s:.6g}: <X', X'> = {q.value:.3e}")
    return derivative / (q if q.value > 0 else -q).sqrt()


def _max_abs(v: JetVector) -> float:
    return float(np.max(np.abs(v.constant_term().as_array())))


def derivative_identity_residual(kind: ImageKind, f: FrameSample,
                                 threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> float:
    """|| image' - delta * T || at the sample, T the field matched to ``kind``."""
    w_prime = image(kind, f, threshold).deriv()
    field = direction_field(MATCHED_FIELDS[kind], f, threshold)
    return _max_abs(w_prime - delta(kind, f, threshold) * field)


def parallel_residual(vector: JetVector, field: JetVector) -> float:
    """Distance of ``vector`` from the line spanned by ``field`` (0-jets, Euclidean)."""
    v = vector.constant_term().as_array()
    u = field.constant_term().as_array()
    projected = (v @ u) / (u @ u) * u
    return float(np.max(np.abs(v - projected)))


def oracle_matched_field(kind: ImageKind, f: FrameSample,
                         threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> Tuple[DirectionField, Dict[str, float]]:
    """Brute-force which direction field the image derivative is parallel to.

    Returns the best field and the parallelism residual of every field that is
    defined at the sample.
    """
    w_prime = image(kind, f, threshold).deriv()
    residuals = {}
    for which in DirectionField:
        try:
            residuals[which.value] = parallel_residual(w_prime, direction_field(which, f, threshold))
        except DegenerateDerivativeError:
            continue
    best = min(residuals, key=residuals.get)
    return DirectionField(best), residuals


def sphere_residual(kind: ImageKind, f: FrameSample, threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> float:
    """| <w, w> - level | for the image's 0-jet."""
    w = image(kind, f, threshold).constant_term()
    return abs(pairing(w, w) - kind.sphere.level)


def image_decomposition_residual(kind: ImageKind, f: FrameSample,
                                 threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> float:
    """Residual of Lr - b = Tr or Lo - n = So."""
    if kind is ImageKind.RECT_LIGHTLIKE:
        diff = image(kind, f, threshold) - f.b - image(ImageKind.RECT_TIMELIKE, f, threshold)
    elif kind is ImageKind.OSC_LIGHTLIKE:
        diff = image(kind, f, threshold) - f.n - image(ImageKind.OSC_SPACELIKE, f, threshold)
    else:
        raise ValueError(f"image {kind.value} has no lightlike decomposition")
    return _max_abs(diff)


def delta_difference_residual(kind: ImageKind, f: FrameSample,
                              threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> float:
    """Residual of delta_Lr - delta_Tr = sqrt(margin) or delta_Lo - delta_So = sqrt(margin)."""
    if kind is ImageKind.RECT_LIGHTLIKE:
        base = ImageKind.RECT_TIMELIKE
    elif kind is ImageKind.OSC_LIGHTLIKE:
        base = ImageKind.OSC_SPACELIKE
    else:
        raise ValueError(f"image {kind.value} has no delta difference identity")
    gap = delta(kind, f, threshold) - delta(base, f, threshold)
    return abs(gap.value - _margin_jet(kind, f).sqrt().value)


def hyperbolic_gauss_residual(f: FrameSample, threshold: float = DEFAULT_DOMAIN_THRESHOLD) -> float:
    """min over signs of || Lr -+ Lo ||; vanishes on the hyperbolic plane."""
    lr = image(ImageKind.RECT_LIGHTLIKE, f, threshold).constant_term()
    lo = image(ImageKind.OSC_LIGHTLIKE, f, threshold).constant_term()
    return float(min(np.max(np.abs((lr - lo).as_array())), np.max(np.abs((lr + lo).as_array()))))
