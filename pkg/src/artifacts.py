"""
Artifact writers: CSV tables, JSON sidecars and SVG outlines.
"""

import json
import logging
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
SVG_SIZE = 480
SVG_BINS = 64


def artifact_name(kind: str, t: float, suffix: str = "csv") -> str:
    """`<kind>_t<t>.<suffix>`, with t written in its shortest round-trip form."""
    return f"{kind}_t{t!r}.{suffix}" if not float(t).is_integer() else f"{kind}_t{int(t)}.{suffix}"


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """UTF-8, LF line endings, header row, 17 significant digits."""
    path = _prepare(path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    logger.info(f"💾 Wrote {len(frame)} rows to {path}")
    return path


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "value") and not isinstance(value, (int, float, str, bool)):
        return value.value
    return value


def write_json(data: dict[str, Any], path: Path) -> Path:
    path = _prepare(path)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(_jsonable(data), handle, indent=2)
        handle.write("\n")
    logger.info(f"💾 Wrote {path}")
    return path


def write_svg_polyline(curves: Iterable[np.ndarray], path: Path, size: int = SVG_SIZE) -> Path:
    """Closed polylines through complex points, scaled to fit a square canvas."""
    curves = [np.asarray(c, dtype=np.complex128) for c in curves]
    points = np.concatenate(curves) if curves else np.zeros(1, dtype=np.complex128)
    extent = float(np.max(np.abs(np.concatenate([points.real, points.imag])))) or 1.0
    scale = 0.45 * size / extent
    centre = 0.5 * size

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for curve in curves:
        coords = " ".join(
            f"{centre + scale * z.real:.3f},{centre - scale * z.imag:.3f}" for z in curve
        )
        lines.append(f'<polygon points="{coords}" fill="none" stroke="black" stroke-width="1"/>')
    lines.append("</svg>")

    path = _prepare(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"🖼️  Wrote outline with {len(curves)} curves to {path}")
    return path


def histogram_outline(edges: np.ndarray, heights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Step outline of a histogram, starting and ending on the baseline."""
    edges = np.asarray(edges, dtype=float)
    heights = np.asarray(heights, dtype=float)
    if edges.size != heights.size + 1:
        raise ValueError(f"expected {heights.size + 1} bin edges, got {edges.size}")
    x = np.concatenate([[edges[0]], np.repeat(edges, 2)[1:-1], [edges[-1]]])
    y = np.concatenate([[0.0], np.repeat(heights, 2), [0.0]])
    return x, y


def write_svg_histogram(
    edges: np.ndarray,
    heights: np.ndarray,
    path: Path,
    reference: Optional[tuple[np.ndarray, np.ndarray]] = None,
    size: int = SVG_SIZE,
) -> Path:
    """Open polylines for a histogram outline and an optional (x, y) reference density."""
    curves = [histogram_outline(edges, heights)]
    if reference is not None:
        curves.append((np.asarray(reference[0], dtype=float), np.asarray(reference[1], dtype=float)))
    x_lo, x_hi = float(edges[0]), float(edges[-1])
    y_hi = max(float(np.max(y)) for _, y in curves) or 1.0
    margin = 0.05 * size
    x_scale = (size - 2 * margin) / ((x_hi - x_lo) or 1.0)
    y_scale = (size - 2 * margin) / y_hi

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for (x, y), colour in zip(curves, ("black", "red")):
        coords = " ".join(
            f"{margin + x_scale * (u - x_lo):.3f},{size - margin - y_scale * v:.3f}" for u, v in zip(x, y)
        )
        lines.append(f'<polyline points="{coords}" fill="none" stroke="{colour}" stroke-width="1"/>')
    lines.append("</svg>")

    path = _prepare(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"🖼️  Wrote histogram over {len(heights)} bins to {path}")
    return path
