"""S-diameter, S-radius and S-Chebyshev quantities of finite point sets.

All quantities are built from the pair value ``||0, x - y, y - x||``. Results
describe the finite set handed in; they say nothing about a continuum the
set may have been sampled from.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, MembershipError
from .structures import Kind, StructureHandle, as_vector, require_kind

DIAMETRAL_RTOL = 1e-12


class Diametral(str, enum.Enum):
    DIAMETRAL = "DIAMETRAL"
    NON_DIAMETRAL = "NON_DIAMETRAL"


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray  # (k, dim)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("a PointSet needs at least one point with a positive dimension")
        if not np.all(np.isfinite(pts)):
            raise ValueError("PointSet coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, *points) -> PointSet:
        return cls(np.array([as_vector(p) for p in points]))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def index_of(self, u) -> int | None:
        hits = np.flatnonzero(np.all(self.points == as_vector(u, self.dim), axis=1))
        return int(hits[0]) if hits.size else None


def _check(A: PointSet, s: StructureHandle):
    require_kind(s, Kind.SNORM, Kind.GNORM)
    if s.dim != A.dim:
        raise DimensionMismatchError(f"S-norm has dimension {s.dim}, point set has {A.dim}")


def pair_values(A: PointSet, s: StructureHandle) -> np.ndarray:
    """Matrix ``M[i, j] = ||0, p_i - p_j, p_j - p_i||``."""
    _check(A, s)
    diff = A.points[:, None, :] - A.points[None, :, :]
    return s(np.zeros_like(diff), diff, -diff)


def s_diameter(A: PointSet, s: StructureHandle) -> float:
    return float(pair_values(A, s).max())


def s_radius_at(A: PointSet, u, s: StructureHandle) -> float:
    _check(A, s)
    u = as_vector(u)
    if u.size != A.dim:
        raise DimensionMismatchError(f"u has dimension {u.size}, point set has {A.dim}")
    diff = u - A.points
    return float(np.max(s(np.zeros_like(diff), diff, -diff)))


def s_chebyshev(A: PointSet, s: StructureHandle) -> tuple[float, PointSet, list[int]]:
    """Return ``(radius, centre, centre_indices)``; the centre is restricted to A."""
    radii = pair_values(A, s).max(axis=1)
    radius = float(radii.min())
    idx = [int(i) for i in np.flatnonzero(radii == radius)]
    return radius, PointSet(A.points[idx]), idx


def _is_diametral(r_u: float, delta: float) -> bool:
    return r_u >= delta * (1 - DIAMETRAL_RTOL)


def classify_diametral(A: PointSet, u, s: StructureHandle) -> Diametral:
    if A.index_of(u) is None:
        raise MembershipError(f"{as_vector(u).tolist()} is not a point of the set")
    r_u = s_radius_at(A, u, s)
    delta = s_diameter(A, s)
    return Diametral.DIAMETRAL if _is_diametral(r_u, delta) else Diametral.NON_DIAMETRAL


@dataclass(frozen=True)
class NormalStructureResult:
    witness: np.ndarray | None
    index: int | None
    zero_diameter: bool

    @property
    def found(self) -> bool:
        return self.witness is not None


def normal_structure_witness(A: PointSet, s: StructureHandle) -> NormalStructureResult:
    """Find a non-diametral point of A (the finite-scale normal-structure check).

    No witness is returned when the diameter is zero or every point is
    diametral.
    """
    m = pair_values(A, s)
    delta = float(m.max())
    if delta == 0.0:
        return NormalStructureResult(None, None, zero_diameter=True)
    radii = m.max(axis=1)
    for i, r_u in enumerate(radii):
        if not _is_diametral(float(r_u), delta):
            return NormalStructureResult(as_vector(A.points[i]), i, zero_diameter=False)
    return NormalStructureResult(None, None, zero_diameter=False)


def set_report(A: PointSet, s: StructureHandle) -> dict:
    m = pair_values(A, s)
    delta = float(m.max())
    radii = m.max(axis=1)
    radius = float(radii.min())
    ns = normal_structure_witness(A, s)
    return {
        "diameter": delta,
        "chebyshev_radius": radius,
        "centre_indices": [int(i) for i in np.flatnonzero(radii == radius)],
        "diametral_flags": [bool(_is_diametral(float(r), delta)) for r in radii],
        "normal_structure_witness": ns.index,
        "zero_diameter": ns.zero_diameter,
    }
