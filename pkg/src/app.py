#!/usr/bin/env python3
"""
Lorentzian Darboux toolkit
Command-line runner: analyze, classify, verify, export and catalog.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .catalog import CUBIC_PARAMETERS, list_entries
from .config import MIN_CLASSIFY_ORDER, get_config
from .exceptions import ConfigError, DarbouxError, DomainViolationError, NotSpacelikeHereError, ParseError, SceneError
from .export import analyze_rows, image_polyline, polyline_to_svg, rows_to_csv, singular_markers, to_json
from .models import ImageKind
from .scene import Scene, load_scene
from .singular import find_singularities, verify_scene
from .utils import get_logger, parse_param_overrides, set_log_level

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2

INPUT_ERRORS = (ParseError, SceneError, ConfigError, NotSpacelikeHereError, ValidationError, ValueError)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(text)} bytes to {output}")
    else:
        sys.stdout.write(text)


def _scene(args) -> Scene:
    parameters = parse_param_overrides(args.param)
    return load_scene(args.scene, parameters, jet_order=getattr(args, "order", None))


def cmd_analyze(args) -> int:
    """Sample table of curvatures, delta invariants and guard flags."""
    scene = _scene(args)
    rows, columns = analyze_rows(scene, args.samples)
    text = rows_to_csv(rows, columns) if args.format == "csv" else to_json(rows)
    _emit(text, args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    """Singular points of one image as JSON."""
    scene = _scene(args)
    if scene.order < MIN_CLASSIFY_ORDER:
        raise ConfigError(f"classification needs --order >= {MIN_CLASSIFY_ORDER}")
    kind = ImageKind(args.image)
    try:
        report = find_singularities(scene, kind, grid_n=args.grid)
    except DomainViolationError as e:
        logger.error(f"❌ {e}")
        _emit(to_json({"kind": kind.value, "error": "DomainViolation", "guard": e.guard, "message": str(e)}),
              args.output)
        return EXIT_VERIFICATION_FAILED
    _emit(to_json(report.model_dump(mode="json")), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Residual report; exit 1 when any check fails."""
    scene = _scene(args)
    report = verify_scene(scene, args.samples)
    payload = report.model_dump(mode="json")
    payload["passed"] = report.passed
    _emit(to_json(payload), args.output)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def cmd_export(args) -> int:
    """Image polyline as CSV/JSON, or an SVG projection with singular points marked."""
    scene = _scene(args)
    kind = ImageKind(args.image)
    try:
        points = image_polyline(scene, kind, args.samples)
    except DomainViolationError as e:
        logger.error(f"❌ {e}")
        return EXIT_VERIFICATION_FAILED

    if args.format == "csv":
        text = rows_to_csv(points, ["s", "x0", "x1", "x2"])
    elif args.format == "json":
        text = to_json(points)
    else:
        markers = []
        if scene.order >= MIN_CLASSIFY_ORDER:
            try:
                report = find_singularities(scene, kind, grid_n=args.grid)
                markers = singular_markers(scene, kind, report)
            except DomainViolationError as e:
                logger.warning(f"No singular points marked: {e}")
        text = polyline_to_svg(points, markers, title=f"{scene.name} {kind.value}")
    _emit(text, args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    """List the built-in scenes."""
    entries = list_entries()
    if args.format == "json":
        _emit(to_json([entry.model_dump(mode="json") for entry in entries]), args.output)
        return EXIT_OK
    lines = []
    for entry in entries:
        params = entry.scene.parameters
        suffix = f"  [{', '.join(f'{k}={v:g}' for k, v in params.items())}]" if params else ""
        lines.append(f"{entry.id:<12} {entry.title}{suffix}")
        for expected in entry.expected:
            lines.append(f"    {expected.quantity} = {expected.value} ({expected.provenance})")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="Lorentzian Darboux frames, pseudo-spherical images and their singularities",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples:
  %(prog)s catalog                                   # List built-in scenes
  %(prog)s analyze hyperbolic --samples 16           # Curvature / delta table (CSV)
  %(prog)s classify cubic-graph --image Sr           # Cusps of the Sr image
  %(prog)s classify cubic-graph --image Sr --param a20=0.5
  %(prog)s verify scene.json                         # Residual report, exit 1 on failure
  %(prog)s export cylinder --image So --format csv   # Image polyline

Scenes are JSON files or catalog ids. Cubic-graph parameters: {', '.join(CUBIC_PARAMETERS)}.
Exit codes: 0 ok, 1 verification failure or guard violated everywhere, 2 input error.
        """
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable debug logging')

    subparsers = parser.add_subparsers(dest='command', required=True)

    def add_scene(sub):
        sub.add_argument('scene', help='Scene JSON file or catalog id')
        sub.add_argument('--param', action='append', default=[], metavar='NAME=VALUE',
                         help='Override a scene parameter (repeatable)')
        sub.add_argument('--order', type=int, default=None, help='Jet order (default from DARBOUX_JET_ORDER)')
        sub.add_argument('--output', '-o', default=None, help='Write to a file instead of stdout')

    analyze = subparsers.add_parser('analyze', help='Sample table of invariants')
    add_scene(analyze)
    analyze.add_argument('--samples', type=int, default=None, help='Number of arc length samples')
    analyze.add_argument('--format', choices=['csv', 'json'], default='csv')
    analyze.set_defaults(handler=cmd_analyze)

    classify = subparsers.add_parser('classify', help='Singular points of an image')
    add_scene(classify)
    classify.add_argument('--image', choices=[k.value for k in ImageKind], required=True)
    classify.add_argument('--grid', type=int, default=None, help='Grid samples (default from DARBOUX_GRID_SAMPLES)')
    classify.set_defaults(handler=cmd_classify)

    verify = subparsers.add_parser('verify', help='Residual report')
    add_scene(verify)
    verify.add_argument('--samples', type=int, default=None)
    verify.set_defaults(handler=cmd_verify)

    export = subparsers.add_parser('export', help='Export an image curve')
    add_scene(export)
    export.add_argument('--image', choices=[k.value for k in ImageKind], required=True)
    export.add_argument('--format', choices=['csv', 'json', 'svg'], default='csv')
    export.add_argument('--projection', choices=['xy'], default='xy',
                        help='SVG projection plane: xy is (x1, x2)')
    export.add_argument('--samples', type=int, default=None)
    export.add_argument('--grid', type=int, default=None)
    export.set_defaults(handler=cmd_export)

    catalog = subparsers.add_parser('catalog', help='List built-in scenes')
    catalog.add_argument('--format', choices=['text', 'json'], default='text')
    catalog.add_argument('--output', '-o', default=None)
    catalog.set_defaults(handler=cmd_catalog)

    args = parser.parse_args(argv)
    if getattr(args, 'samples', None) is not None and args.samples < 2:
        parser.error("--samples must be >= 2")
    return args


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI."""
    args = parse_args(argv)
    start_time = time.time()
    try:
        config = get_config()
        level = logging.DEBUG if args.verbose else getattr(logging, config["log_level"], logging.INFO)
        set_log_level(level)
        code = args.handler(args)
    except INPUT_ERRORS as e:
        logger.error(f"❌ Input error: {e}")
        return EXIT_INPUT_ERROR
    except DarbouxError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_VERIFICATION_FAILED
    logger.info(f"Done in {time.time() - start_time:.2f}s")
    return code


if __name__ == "__main__":
    sys.exit(main())
