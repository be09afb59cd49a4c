"""Singular points of Darboux images and the numeric duality / constancy checks.

A zero of delta is a singular point of its image; a simple zero (delta' != 0)
is an ordinary cusp. Roots are bracketed on a parameter grid and refined by
bisection, then classified from the jet of delta at the root.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import optimize

from .config import MIN_CLASSIFY_ORDER
from .curveframe import FrameSample, frenet_residual, orthonormality_residual, unit_speed_residual
from .darboux import (
    GUARDS,
    delta,
    derivative_identity_residual,
    domain_predicate,
    image,
    sphere_residual,
)
from .exceptions import (
    DarbouxError,
    DomainViolationError,
    JetOrderError,
    VNotOnSphereError,
)
from .jets import JetVector, derivative
from .minkowski import (
    Causality,
    MinkPlane,
    MinkVector,
    causal_character,
    classify_section,
    norm,
    on_pseudo_sphere,
    pairing,
)
from .models import (
    CheckResult,
    ConstancyVerdict,
    DualityReport,
    ExcludedInterval,
    HeightEvaluation,
    ImageKind,
    PointClass,
    SingularityReport,
    SingularPoint,
    SliceReport,
    VerificationReport,
)
from .scene import Scene
from .utils import chunk_ranges, get_logger

logger = get_logger(__name__)

ROOT_XTOL = 1e-13
ZERO_TOL = 1e-9
CLASSIFY_SCALE = 1e-8

# statement -> (dual side, image, pairing constant)
DUALITY_STATEMENTS: Dict[int, Tuple[str, ImageKind, float]] = {
    1: ("n", ImageKind.OSC_SPACELIKE, 0.0),
    2: ("n", ImageKind.OSC_LIGHTLIKE, -1.0),
    3: ("b", ImageKind.RECT_TIMELIKE, 0.0),
    4: ("b", ImageKind.RECT_LIGHTLIKE, 1.0),
    5: ("b", ImageKind.RECT_SPACELIKE, 0.0),
}

# Causal type a cylinder director must have for each image.
DIRECTOR_CAUSALITY = {
    ImageKind.RECT_TIMELIKE: Causality.TIMELIKE,
    ImageKind.RECT_SPACELIKE: Causality.SPACELIKE,
    ImageKind.RECT_LIGHTLIKE: Causality.LIGHTLIKE,
    ImageKind.OSC_SPACELIKE: Causality.SPACELIKE,
    ImageKind.OSC_LIGHTLIKE: Causality.LIGHTLIKE,
}


def _dual(f: FrameSample, side: str) -> JetVector:
    return f.b if side == "b" else f.n


def _delta_at_t(scene: Scene, kind: ImageKind, t: float) -> Tuple[Optional[float], Optional[str]]:
    """delta at parameter t, or (None, reason) when undefined there."""
    try:
        f = scene.frame_at_t(t)
        return delta(kind, f, scene.domain_threshold).value, None
    except DomainViolationError as e:
        return None, e.guard
    except DarbouxError as e:
        return None, str(e)


def _classify(scene: Scene, kind: ImageKind, t0: float, bracket: Tuple[float, float]) -> SingularPoint:
    f = scene.frame_at_t(t0)
    d = delta(kind, f, scene.domain_threshold)
    delta0 = d.value
    delta1 = derivative(d, 1)
    delta2 = derivative(d, 2) if d.order >= 2 else 0.0
    cusp = abs(delta1) > CLASSIFY_SCALE * (1.0 + abs(delta2))
    s_lo, s_hi = (scene.arc_map.s_at(t) for t in bracket)
    return SingularPoint(
        kind=kind, s0=f.s, t0=t0,
        classification=PointClass.CUSP if cusp else PointClass.DEGENERATE,
        delta0=delta0, delta1=delta1, delta2=delta2,
        bracket=(s_lo, s_hi), residual=abs(delta0),
    )


def find_singularities(scene: Scene, kind: ImageKind, interval: Optional[Tuple[float, float]] = None,
                       grid_n: Optional[int] = None) -> SingularityReport:
    """Locate and classify the singular points of an image on an arc length interval.

    The delta invariant is sampled on a grid (uniform in the curve parameter,
    which is monotone in s), sign changes are refined by bisection and
    tangential zeros are reported as Degenerate.

    Args:
        scene: Scene to analyze
        kind: Image kind
        interval: Arc length sub-interval, defaults to the whole curve
        grid_n: Number of grid samples, defaults to the scene setting

    Returns:
        SingularityReport sorted by s0

    Raises:
        JetOrderError: If the scene's jet order is below 5
        DomainViolationError: If the image's guard fails on the whole interval
    """
    if scene.order < MIN_CLASSIFY_ORDER:
        raise JetOrderError(f"classification needs jet order >= {MIN_CLASSIFY_ORDER}, got {scene.order}")
    start_time = time.time()
    grid_n = grid_n or scene.grid_samples
    s_lo, s_hi = interval or scene.s_range
    t_lo, t_hi = scene.arc_map.t_at(s_lo), scene.arc_map.t_at(s_hi)
    t_grid = np.linspace(t_lo, t_hi, grid_n)
    logger.info(f"Scanning delta_{kind.value} on {grid_n} samples over s in [{s_lo:.6g}, {s_hi:.6g}]")

    with ThreadPoolExecutor(max_workers=scene.workers) as executor:
        results = list(executor.map(lambda t: _delta_at_t(scene, kind, float(t)), t_grid))
    values = [value for value, _ in results]
    defined = [value is not None for value in values]

    if not any(defined):
        logger.error(f"Guard of {kind.value} fails on the whole interval")
        raise DomainViolationError(kind.value, GUARDS[kind], None, "guard fails on the whole interval")

    excluded = []
    if not all(defined):
        for t_a, t_b in chunk_ranges([not d for d in defined], list(t_grid)):
            reason = next(r for (v, r), t in zip(results, t_grid) if v is None and t >= t_a)
            excluded.append(ExcludedInterval(s_lo=scene.arc_map.s_at(t_a), s_hi=scene.arc_map.s_at(t_b),
                                             guard=reason))
        logger.warning(f"{len(excluded)} sub-interval(s) excluded for {kind.value}")

    report = SingularityReport(kind=kind, interval=(s_lo, s_hi), grid_n=grid_n, excluded=excluded)
    finite = [abs(v) for v in values if v is not None]
    if max(finite) < ZERO_TOL:
        logger.info(f"delta_{kind.value} vanishes identically on the sampled interval")
        report.identically_zero = True
        return report

    def g(t: float) -> float:
        value, reason = _delta_at_t(scene, kind, t)
        if value is None:
            raise DomainViolationError(kind.value, reason, None, f"inside bracket at t={t}")
        return value

    points: List[SingularPoint] = []
    used = set()
    for i in range(grid_n - 1):
        a, b = values[i], values[i + 1]
        if a is None or b is None:
            continue
        if a == 0.0:
            points.append(_classify(scene, kind, float(t_grid[i]), (float(t_grid[i]), float(t_grid[i]))))
            used.add(i)
        elif a * b < 0:
            try:
                t0 = optimize.bisect(g, float(t_grid[i]), float(t_grid[i + 1]), xtol=ROOT_XTOL, maxiter=200)
            except DomainViolationError as e:
                # guard fails between two defined samples: drop the bracket
                s_a, s_b = scene.arc_map.s_at(float(t_grid[i])), scene.arc_map.s_at(float(t_grid[i + 1]))
                logger.warning(f"Skipping bracket s in [{s_a:.6g}, {s_b:.6g}] of {kind.value}: {e}")
                report.excluded.append(ExcludedInterval(s_lo=s_a, s_hi=s_b, guard=e.guard))
                used.update((i, i + 1))
                continue
            points.append(_classify(scene, kind, t0, (float(t_grid[i]), float(t_grid[i + 1]))))
            used.update((i, i + 1))
    if values[-1] == 0.0:
        points.append(_classify(scene, kind, float(t_grid[-1]), (float(t_grid[-1]), float(t_grid[-1]))))
        used.add(grid_n - 1)

    # Tangential zeros: small |delta| with no sign change nearby.
    for i, value in enumerate(values):
        if value is None or i in used or abs(value) >= ZERO_TOL:
            continue
        lo_ok = i == 0 or values[i - 1] is None or abs(values[i - 1]) >= abs(value)
        hi_ok = i == grid_n - 1 or values[i + 1] is None or abs(values[i + 1]) >= abs(value)
        if lo_ok and hi_ok:
            point = _classify(scene, kind, float(t_grid[i]), (float(t_grid[i]), float(t_grid[i])))
            points.append(point.model_copy(update={"classification": PointClass.DEGENERATE}))

    report.points = sorted(points, key=lambda p: p.s0)
    cusps = sum(p.classification is PointClass.CUSP for p in report.points)
    logger.info(f"✅ Found {len(report.points)} singular point(s) of {kind.value} ({cusps} cusp(s)) "
                f"in {time.time() - start_time:.2f}s")
    return report


def height_eval(scene: Scene, family: ImageKind, s: float, v: MinkVector,
                order: Optional[int] = None) -> HeightEvaluation:
    """Height function of ``family`` at (s, v) and its first three s-derivatives.

    <b, v> for Tr and Sr, <b, v> - 1 for Lr, <n, v> for So, <n, v> + 1 for Lo.

    Raises:
        VNotOnSphereError: If v is not on the family's pseudo-sphere
    """
    if not on_pseudo_sphere(v, family.sphere, scene.causal_tol):
        raise VNotOnSphereError(f"v = {tuple(v)} is not on {family.sphere.value} (<v,v> = {pairing(v, v):.3e})")
    f = scene.frame_at_s(s, order)
    w = _dual(f, family.dual_side)
    h = pairing(w, JetVector.constant(v, w.order)) - family.fibration_constant
    if h.order < 3:
        raise JetOrderError(f"height derivatives need frame order >= 3, got {h.order}")
    return HeightEvaluation(
        family=family, s=f.s, v=tuple(v),
        h=derivative(h, 0), h1=derivative(h, 1), h2=derivative(h, 2), h3=derivative(h, 3),
    )


def verify_duality(scene: Scene, statement: int, samples: Optional[int] = None,
                   frames: Optional[List[FrameSample]] = None) -> DualityReport:
    """Worst pairing and isotropy residuals of one duality statement.

    Samples where the image's guard fails are skipped and counted. Precomputed
    ``frames`` take the place of fresh samples.
    """
    if statement not in DUALITY_STATEMENTS:
        raise ValueError(f"duality statement must be 1..5, got {statement}")
    side, kind, constant = DUALITY_STATEMENTS[statement]
    pairing_worst: Optional[float] = None
    isotropy_worst: Optional[float] = None
    evaluated = skipped = 0
    for f in frames if frames is not None else scene.frames(samples):
        if not domain_predicate(kind, f, scene.domain_threshold).satisfied:
            skipped += 1
            continue
        w = image(kind, f, scene.domain_threshold).constant_term()
        v = _dual(f, side)
        pair = abs(pairing(v.constant_term(), w) - constant)
        iso = abs(pairing(v.deriv().constant_term(), w))
        pairing_worst = pair if pairing_worst is None else max(pairing_worst, pair)
        isotropy_worst = iso if isotropy_worst is None else max(isotropy_worst, iso)
        evaluated += 1
    if skipped:
        logger.debug(f"Duality statement {statement}: skipped {skipped} sample(s) outside the guard of {kind.value}")
    return DualityReport(statement=statement, image=kind, dual_side=side, pairing_constant=constant,
                         pairing_residual=pairing_worst, isotropy_residual=isotropy_worst,
                         evaluated=evaluated, skipped=skipped)


def constancy_check(scene: Scene, kind: ImageKind, interval: Optional[Tuple[float, float]] = None,
                    samples: Optional[int] = None, tol: float = 1e-8) -> ConstancyVerdict:
    """Measure whether an image is constant on an interval.

    Reports max ||w(s) - w(s_mid)||, max |delta| and the planarity residual
    max |<dual(s), w(s_mid)> - c| of the dual curve.

    Raises:
        DomainViolationError: If the guard fails at any sample
    """
    lo, hi = interval or scene.s_range
    s_mid = 0.5 * (lo + hi)
    f_mid = scene.frame_at_s(s_mid)
    center = image(kind, f_mid, scene.domain_threshold).constant_term()
    constant = kind.fibration_constant

    constancy = delta_max = planarity = 0.0
    frames = scene.frames(samples, (lo, hi))
    for f in frames:
        w = image(kind, f, scene.domain_threshold).constant_term()
        constancy = max(constancy, float(np.max(np.abs((w - center).as_array()))))
        delta_max = max(delta_max, abs(delta(kind, f, scene.domain_threshold).value))
        planarity = max(planarity, abs(pairing(_dual(f, kind.dual_side).constant_term(), center) - constant))

    locus = None
    try:
        locus = classify_section(kind.dual_sphere, MinkPlane(center, constant), scene.causal_tol)
    except DarbouxError:
        pass
    return ConstancyVerdict(kind=kind, interval=(lo, hi), samples=len(frames), value=tuple(center),
                            constancy_residual=constancy, delta_max=delta_max,
                            planarity_residual=planarity, locus=locus, constant=constancy < tol)


def constancy_equivalence(verdict: ConstancyVerdict, eps: float = 1e-8, factor: float = 100.0) -> bool:
    """Two-sided check: image constant within eps iff delta small within factor * eps."""
    forward = verdict.constancy_residual >= eps or verdict.delta_max < factor * eps
    backward = verdict.delta_max >= eps or verdict.constancy_residual < factor * eps
    return forward and backward


def slice_residual(scene: Scene, kind: ImageKind, director: MinkVector,
                   samples: Optional[int] = None) -> SliceReport:
    """Check that the dual curve is a slice <dual(s), v> = c of the cylinder with director v.

    Non-null directors are normalized onto their pseudo-sphere first; lightlike
    directors are used as given.
    """
    character = causal_character(director, scene.causal_tol)
    v = director if character.kind is Causality.LIGHTLIKE else director / norm(director)
    constant = kind.fibration_constant
    worst = 0.0
    for f in scene.frames(samples):
        worst = max(worst, abs(pairing(_dual(f, kind.dual_side).constant_term(), v) - constant))
    return SliceReport(kind=kind, director=tuple(v), director_causal=character.kind.value,
                       director_ok=character.kind is DIRECTOR_CAUSALITY[kind], residual=worst)


def director_alignment(scene: Scene, director: MinkVector, samples: Optional[int] = None) -> float:
    """Worst min over signs of || So(s) -+ v/|v| ||; zero when So is parallel to the director.

    Raises:
        ValueError: If the director is not spacelike
    """
    if causal_character(director, scene.causal_tol).kind is not Causality.SPACELIKE:
        raise ValueError(f"director {tuple(director)} must be spacelike")
    unit = (director / norm(director)).as_array()
    worst = 0.0
    for f in scene.frames(samples):
        w = image(ImageKind.OSC_SPACELIKE, f, scene.domain_threshold).constant_term().as_array()
        worst = max(worst, float(min(np.max(np.abs(w - unit)), np.max(np.abs(w + unit)))))
    return worst


def _check(name: str, values: List[float], tolerance: float, skipped: int = 0) -> CheckResult:
    worst = max(values) if values else None
    return CheckResult(name=name, worst=worst, tolerance=tolerance, evaluated=len(values), skipped=skipped,
                       passed=worst is None or worst < tolerance)


def verify_scene(scene: Scene, samples: Optional[int] = None) -> VerificationReport:
    """Run the residual suites on one scene.

    Frame orthonormality, unit speed, the Frenet system, sphere membership,
    duality statements 1..5 and the image derivative identities. Checks with
    no sample inside their guard are reported with ``worst = None`` and pass.
    """
    start_time = time.time()
    frames = scene.frames(samples)
    logger.info(f"🚀 Verifying '{scene.name}' on {len(frames)} samples")
    checks = [
        _check("frame_orthonormality", [orthonormality_residual(f) for f in frames], 1e-9),
        _check("unit_speed", [unit_speed_residual(f) for f in frames], 1e-8),
        _check("frenet_system", [frenet_residual(f) for f in frames], 1e-8),
    ]

    for kind in ImageKind:
        inside = [f for f in frames if domain_predicate(kind, f, scene.domain_threshold).satisfied]
        skipped = len(frames) - len(inside)
        checks.append(_check(f"sphere_{kind.value}", [sphere_residual(kind, f, scene.domain_threshold)
                                                       for f in inside], 1e-9, skipped))
        checks.append(_check(f"derivative_identity_{kind.value}",
                             [derivative_identity_residual(kind, f, scene.domain_threshold) for f in inside],
                             1e-7, skipped))

    for statement in DUALITY_STATEMENTS:
        report = verify_duality(scene, statement, frames=frames)
        for label, worst in (("pairing", report.pairing_residual), ("isotropy", report.isotropy_residual)):
            checks.append(CheckResult(name=f"duality_{statement}_{label}", worst=worst, tolerance=1e-8,
                                      evaluated=report.evaluated, skipped=report.skipped,
                                      passed=worst is None or worst < 1e-8))

    verification = VerificationReport(scene=scene.name, samples=len(frames), checks=checks)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.error(f"❌ Verification of '{scene.name}' failed: {', '.join(failed)}")
    else:
        logger.info(f"✅ Verification of '{scene.name}' passed in {time.time() - start_time:.2f}s")
    return verification
