"""Balls ``{y : ||y - x0, y - a1, y - a2|| < r}`` and their planar boundaries."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, TraceError
from .structures import Kind, StructureHandle, as_vector, require_kind, vector


@dataclass(frozen=True)
class BallSpec:
    center: np.ndarray
    anchor1: np.ndarray
    anchor2: np.ndarray
    radius: float
    closed: bool = False

    def __post_init__(self):
        c = as_vector(self.center)
        a1 = as_vector(self.anchor1, c.size)
        a2 = as_vector(self.anchor2, c.size)
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "anchor1", a1)
        object.__setattr__(self, "anchor2", a2)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def centroid(self) -> np.ndarray:
        return (self.center + self.anchor1 + self.anchor2) / 3.0


def figure_points():
    """Centre and anchors shared by both planar examples."""
    return vector(1, 1), vector(0, 0), vector(-1, -1)


def fig1a() -> BallSpec:
    return BallSpec(*figure_points(), radius=5.0)


def fig1b() -> BallSpec:
    return BallSpec(*figure_points(), radius=20.0)


def degenerate(radius: float = 3.0) -> BallSpec:
    o = vector(0, 0)
    return BallSpec(o, o, o, radius=radius)


def _check(s: StructureHandle, b: BallSpec):
    require_kind(s, Kind.SNORM, Kind.GNORM)
    if s.dim != b.dim:
        raise DimensionMismatchError(f"S-norm has dimension {s.dim}, ball has {b.dim}")


def ball_value(s: StructureHandle, b: BallSpec, y) -> float | np.ndarray:
    """``||y - x0, y - a1, y - a2||``; ``y`` may be a batch of points."""
    _check(s, b)
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != b.dim:
        raise DimensionMismatchError(f"point has dimension {y.shape[-1]}, ball has {b.dim}")
    return s(y - b.center, y - b.anchor1, y - b.anchor2)


def ball_contains(s: StructureHandle, b: BallSpec, y) -> bool:
    v = ball_value(s, b, as_vector(y))
    return v <= b.radius if b.closed else v < b.radius


@dataclass(frozen=True)
class Boundary:
    angles: np.ndarray
    points: np.ndarray  # (resolution, 2); the polyline closes from last back to first
    level: float

    def closed_polyline(self) -> np.ndarray:
        return np.vstack([self.points, self.points[:1]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["angle_rad", "x", "y"])
        for a, (x, y) in zip(self.angles, self.points):
            w.writerow([repr(float(a)), repr(float(x)), repr(float(y))])
        return buf.getvalue()

    def to_svg(self, stroke: str = "black") -> str:
        # SVG's y axis points down; flip so the picture matches the plane.
        pts = self.points * np.array([1.0, -1.0])
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        pad = 0.05 * np.maximum(hi - lo, 1e-12)
        lo, hi = lo - pad, hi + pad
        width, height = hi - lo
        d = "M " + " L ".join(f"{x:.10g} {y:.10g}" for x, y in pts) + " Z"
        stroke_w = 0.005 * max(width, height)
        return (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{lo[0]:.10g} {lo[1]:.10g} {width:.10g} {height:.10g}">\n'
            f'  <path d="{d}" fill="none" stroke="{stroke}" stroke-width="{stroke_w:.6g}"/>\n'
            "</svg>\n"
        )


def trace_boundary_2d(
    s: StructureHandle,
    b: BallSpec,
    resolution: int = 360,
    xtol: float = 1e-10,
    max_extent: float = 1e4,
) -> Boundary:
    """Trace the level set ``ball_value == r`` along rays from the anchor centroid.

    Each ray is bracketed by doubling outward from the centroid and the
    crossing is located by bisection until the bracket is narrower than
    ``xtol``. A ray that has not reached the level within ``max_extent * r``
    raises :class:`TraceError`.
    """
    _check(s, b)
    if b.dim != 2:
        raise DimensionMismatchError("boundary tracing is only defined in the plane")
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    c = b.centroid
    r = b.radius
    if not ball_value(s, b, c) < r:
        raise TraceError(f"anchor centroid {c.tolist()} is not inside the ball of radius {r}")

    angles = 2 * math.pi * np.arange(resolution) / resolution
    dirs = np.column_stack([np.cos(angles), np.sin(angles)])

    def f(t):
        return ball_value(s, b, c + t[:, None] * dirs)

    lo = np.zeros(resolution)
    hi = np.full(resolution, max(r, 1.0) * 1e-3)
    limit = max_extent * max(r, 1.0)
    while True:
        short = f(hi) < r
        if not short.any():
            break
        lo = np.where(short, hi, lo)
        hi = np.where(short, 2 * hi, hi)
        if np.any(hi[short] > limit):
            k = int(np.flatnonzero(short & (hi > limit))[0])
            raise TraceError(f"ray at angle {angles[k]:.6f} rad never reaches level {r}", angle=float(angles[k]))

    while np.max(hi - lo) > xtol:
        mid = 0.5 * (lo + hi)
        if np.all((mid == lo) | (mid == hi) | (hi - lo <= xtol)):
            break  # remaining brackets cannot shrink in floating point
        below = f(mid) < r
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    t = 0.5 * (lo + hi)
    return Boundary(angles, c + t[:, None] * dirs, r)
