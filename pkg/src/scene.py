"""Runtime scenes built from validated scene files."""

from __future__ import annotations

import json
import time
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from .catalog import get_entry
from .config import get_config
from .curveframe import ArcLengthMap, CurveOnSurface, FrameSample, frame_at, sample_frames
from .exceptions import ConfigError, NotSpacelikeHereError, SceneError
from .models import SceneFile, SpacelikeReport
from .surface import SurfacePatch
from .utils import get_logger

logger = get_logger(__name__)


class Scene:
    """A surface patch, a curve on it and the numerical settings to analyze them.

    Settings resolve as: explicit keyword > scene file options > environment.
    """

    def __init__(self, model: SceneFile, name: Optional[str] = None,
                 config: Optional[Dict[str, Any]] = None, jet_order: Optional[int] = None,
                 validate: Optional[str] = None):
        config = config or get_config()
        options = model.options
        self.model = model
        self.name = name or model.name or "scene"
        self.order = jet_order or options.jet_order or config["jet_order"]
        if self.order < 3:
            raise ConfigError(f"jet order must be >= 3, got {self.order}")
        self.causal_tol = options.tolerances.causal or config["causal_tol"]
        self.domain_threshold = options.tolerances.domain or config["domain_threshold"]
        self.quad_tol = options.tolerances.quadrature or config["quad_tol"]
        self.samples = options.samples
        self.grid_samples = options.grid_samples or config["grid_samples"]
        self.spacelike_grid = options.spacelike_grid or config["spacelike_grid"]
        self.workers = config["parallel_workers"]

        params = model.parameters
        spec = model.surface
        self.surface = SurfacePatch.from_strings(spec.x0, spec.x1, spec.x2, spec.domain, params)
        cspec = model.curve
        self.curve = CurveOnSurface.from_strings(cspec.u1, cspec.u2, cspec.interval, self.surface,
                                                 anchor=cspec.anchor, parameters=params)

        mode = validate or options.validate_on_load
        if mode != "off":
            self.check_spacelike(mode)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], **kwargs) -> Scene:
        return cls(SceneFile.model_validate(data), **kwargs)

    @classmethod
    def from_file(cls, path: Path, parameters: Optional[Mapping[str, float]] = None, **kwargs) -> Scene:
        """Load a scene JSON file.

        Raises:
            SceneError: If the file cannot be read or is not JSON
            ValidationError: If the document does not match the scene schema
        """
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise SceneError(f"cannot read scene file {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise SceneError(f"scene file {path} is not valid JSON: {e}") from e
        model = SceneFile.model_validate(data)
        if parameters:
            model = with_parameters(model, parameters)
        return cls(model, name=kwargs.pop("name", None) or path.stem, **kwargs)

    def check_spacelike(self, mode: str = "fail") -> SpacelikeReport:
        report = self.surface.validate_spacelike(self.spacelike_grid, self.causal_tol)
        if not report.passed:
            message = (f"Scene '{self.name}' is not spacelike at {report.failures} samples "
                       f"(worst margin {report.worst_margin} at {report.worst_at})")
            if mode == "fail":
                logger.error(message)
                raise NotSpacelikeHereError(message)
            logger.warning(message)
        return report

    @cached_property
    def arc_map(self) -> ArcLengthMap:
        start_time = time.time()
        arc_map = ArcLengthMap.build(self.curve, self.quad_tol)
        logger.info(f"Arc length map for '{self.name}' ready: s in [{arc_map.s_range[0]:.6g}, "
                    f"{arc_map.s_range[1]:.6g}] ({time.time() - start_time:.2f}s)")
        return arc_map

    @property
    def s_range(self) -> Tuple[float, float]:
        return self.arc_map.s_range

    def frame_at_t(self, t: float, order: Optional[int] = None) -> FrameSample:
        return frame_at(self.curve, t, order or self.order, self.arc_map)

    def frame_at_s(self, s: float, order: Optional[int] = None) -> FrameSample:
        return frame_at(self.curve, self.arc_map.t_at(s), order or self.order, self.arc_map)

    def s_grid(self, count: Optional[int] = None,
               interval: Optional[Tuple[float, float]] = None) -> np.ndarray:
        lo, hi = interval or self.s_range
        return np.linspace(lo, hi, count or self.samples)

    def frames(self, count: Optional[int] = None,
               interval: Optional[Tuple[float, float]] = None) -> List[FrameSample]:
        return sample_frames(self.curve, self.s_grid(count, interval), self.order, self.arc_map, self.workers)


def with_parameters(model: SceneFile, parameters: Mapping[str, float]) -> SceneFile:
    """Copy of ``model`` with parameter values overridden."""
    merged = {**model.parameters, **parameters}
    return model.model_copy(update={"parameters": merged})


def load_scene(ref: str, parameters: Optional[Mapping[str, float]] = None, **kwargs) -> Scene:
    """Resolve a scene argument: a path to a JSON file or a catalog id.

    Raises:
        SceneError: If ``ref`` is neither an existing file nor a catalog id
    """
    path = Path(ref)
    if path.is_file():
        return Scene.from_file(path, parameters, **kwargs)
    entry = get_entry(ref)
    model = with_parameters(entry.scene, parameters) if parameters else entry.scene
    return Scene(model, name=entry.id, **kwargs)
