"""CSV, JSON and SVG emitters.

Numbers are written with 17 significant digits and a lowercase exponent;
undefined values become empty CSV cells or JSON null, never NaN. Output depends
only on the inputs, so repeated runs are byte-identical.
"""

import csv
import io
import json
import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .darboux import GUARDS, delta, domain_predicate, image
from .curveframe import frenet_residual
from .exceptions import DarbouxError, DomainViolationError
from .models import ImageKind
from .scene import Scene
from .utils import get_logger

logger = get_logger(__name__)

SVG_SIZE = 800
SVG_MARGIN = 0.05
MARKER_RADIUS = 4


def format_number(value: Optional[float]) -> Optional[str]:
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return None
    return format(value, ".17g")


def _encode(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None or isinstance(value, bool):
        return json.dumps(value)
    if isinstance(value, (float, np.floating)):
        text = format_number(value)
        return "null" if text is None else text
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) or v is None for v in value):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in value) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def to_json(value: Any, indent: int = 2) -> str:
    """Serialize plain data (dicts, lists, numbers, strings) with 17-digit floats."""
    return _encode(value, indent, 0) + "\n"


def rows_to_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = []
        for column in columns:
            value = row.get(column)
            if isinstance(value, bool):
                cells.append("true" if value else "false")
            elif isinstance(value, (float, np.floating)):
                cells.append(format_number(value) or "")
            elif value is None:
                cells.append("")
            else:
                cells.append(str(value))
        writer.writerow(cells)
    return buffer.getvalue()


def analyze_rows(scene: Scene, samples: Optional[int] = None) -> Tuple[List[Dict[str, Any]], List[str]]:
    """One row per arc length sample with curvatures, deltas and guard flags."""
    columns = ["s", "t_param", "kappa_n", "kappa_g", "tau_g"]
    columns += [f"delta_{kind.value}" for kind in ImageKind]
    columns += [f"domain_{kind.value}" for kind in ImageKind]
    columns += [f"guard_{kind.value}" for kind in ImageKind]
    columns += ["frenet_residual"]

    rows = []
    for f in scene.frames(samples):
        row: Dict[str, Any] = {
            "s": f.s,
            "t_param": f.t_param,
            "kappa_n": f.kappa_n.value,
            "kappa_g": f.kappa_g.value,
            "tau_g": f.tau_g.value,
        }
        for kind in ImageKind:
            verdict = domain_predicate(kind, f, scene.domain_threshold)
            row[f"domain_{kind.value}"] = verdict.satisfied
            if verdict.satisfied:
                row[f"delta_{kind.value}"] = delta(kind, f, scene.domain_threshold).value
                row[f"guard_{kind.value}"] = None
            else:
                row[f"delta_{kind.value}"] = None
                row[f"guard_{kind.value}"] = verdict.guard
        row["frenet_residual"] = frenet_residual(f)
        rows.append(row)
    return rows, columns


def image_polyline(scene: Scene, kind: ImageKind, samples: Optional[int] = None) -> List[Dict[str, Any]]:
    """Points of an image curve; x0..x2 are None where the guard fails.

    Raises:
        DomainViolationError: If the guard fails at every sample
    """
    points = []
    defined = 0
    for f in scene.frames(samples):
        point: Dict[str, Any] = {"s": f.s, "x0": None, "x1": None, "x2": None}
        try:
            w = image(kind, f, scene.domain_threshold).constant_term()
            point.update(x0=w.x0, x1=w.x1, x2=w.x2)
            defined += 1
        except DomainViolationError:
            pass
        points.append(point)
    if not defined:
        raise DomainViolationError(kind.value, GUARDS[kind], None, "guard fails at every sample")
    return points


def _segments(points: Iterable[Dict[str, Any]]) -> List[List[Tuple[float, float]]]:
    segments, current = [], []
    for p in points:
        if p["x1"] is None:
            if current:
                segments.append(current)
            current = []
        else:
            current.append((p["x1"], p["x2"]))
    if current:
        segments.append(current)
    return segments


def polyline_to_svg(points: Sequence[Dict[str, Any]], markers: Sequence[Tuple[float, float]] = (),
                    title: str = "") -> str:
    """Orthographic projection onto the (x1, x2) plane, x2 pointing up.

    Args:
        points: Rows from ``image_polyline``
        markers: (x1, x2) positions drawn as circles
        title: Optional title element
    """
    segments = _segments(points)
    xy = [pt for seg in segments for pt in seg] + list(markers)
    xs = [p[0] for p in xy]
    ys = [p[1] for p in xy]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    span = max(x_max - x_min, y_max - y_min, 1e-12)
    scale = SVG_SIZE * (1.0 - 2.0 * SVG_MARGIN) / span
    x_off = SVG_SIZE / 2.0 - scale * (x_min + x_max) / 2.0
    y_off = SVG_SIZE / 2.0 + scale * (y_min + y_max) / 2.0

    def project(p: Tuple[float, float]) -> str:
        return f"{x_off + scale * p[0]:.3f},{y_off - scale * p[1]:.3f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
    ]
    if title:
        lines.append(f"  <title>{title}</title>")
    for seg in segments:
        coords = " ".join(project(p) for p in seg)
        lines.append(f'  <polyline fill="none" stroke="black" stroke-width="1" points="{coords}"/>')
    for m in markers:
        cx, cy = project(m).split(",")
        lines.append(f'  <circle cx="{cx}" cy="{cy}" r="{MARKER_RADIUS}" fill="red"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def singular_markers(scene: Scene, kind: ImageKind, report) -> List[Tuple[float, float]]:
    """(x1, x2) of the image at each reported singular point."""
    markers = []
    for point in report.points:
        try:
            w = image(kind, scene.frame_at_t(point.t0), scene.domain_threshold).constant_term()
            markers.append((w.x1, w.x2))
        except DarbouxError as e:
            logger.warning(f"Skipping marker at s={point.s0}: {e}")
    return markers
