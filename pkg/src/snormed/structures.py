"""Evaluable norm-like structures and the canonical instances.

Every structure is a :class:`StructureHandle`: an immutable record holding a
kind, a dimension and a pure evaluator. Evaluators take ``numpy`` arrays
whose trailing axis is the coordinate axis, so the same callable evaluates a
single point (shape ``(dim,)``) or a whole batch (shape ``(n, dim)``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import DimensionMismatchError, InvalidDimensionError, KindMismatchError

Evaluator = Callable[..., np.ndarray]


class Kind(str, enum.Enum):
    NORM = "norm"
    METRIC = "metric"
    SNORM = "snorm"
    SMETRIC = "smetric"
    GNORM = "gnorm"

    @property
    def arity(self) -> int:
        return {Kind.NORM: 1, Kind.METRIC: 2}.get(self, 3)


def vector(*coords) -> np.ndarray:
    """Build a read-only point of R^n from its coordinates."""
    return as_vector(coords)


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Coerce ``x`` to a finite 1-D float array (scalars become R^1 points)."""
    arr = np.array(x, dtype=float).reshape(-1) if np.ndim(x) == 0 else np.array(x, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidDimensionError(f"expected a non-empty 1-D coordinate list, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"vector coordinates must be finite, got {arr.tolist()}")
    if dim is not None and arr.size != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {arr.size}")
    arr.setflags(write=False)
    return arr


def _check_dim(dim) -> int:
    if not isinstance(dim, (int, np.integer)) or isinstance(dim, bool) or dim < 1:
        raise InvalidDimensionError(f"dimension must be a positive integer, got {dim!r}")
    return int(dim)


def euclid(v: np.ndarray) -> np.ndarray:
    # Same reduction for single points and batches, so both paths agree bitwise.
    return np.sqrt(np.sum(v * v, axis=-1))


@dataclass(frozen=True)
class StructureHandle:
    kind: Kind
    dim: int
    name: str
    evaluator: Evaluator = field(repr=False, compare=False)
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "dim", _check_dim(self.dim))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @property
    def arity(self) -> int:
        return self.kind.arity

    def __call__(self, *args):
        """Evaluate at one point tuple (returns float) or a batch (returns array)."""
        if len(args) != self.arity:
            raise TypeError(f"{self.kind.value} {self.name!r} takes {self.arity} arguments, got {len(args)}")
        arrays = []
        for a in args:
            arr = np.asarray(a, dtype=float)
            if arr.ndim == 0:
                arr = arr.reshape(1)
            if arr.shape[-1] != self.dim:
                raise DimensionMismatchError(
                    f"{self.name!r} expects dimension {self.dim}, got trailing axis {arr.shape[-1]}"
                )
            if not np.all(np.isfinite(arr)):
                raise ValueError("structure arguments must be finite")
            arrays.append(arr)
        out = self.evaluator(*arrays)
        if all(a.ndim == 1 for a in arrays):
            return float(out)
        return np.asarray(out, dtype=float)

    def as_kind(self, kind: Kind, note: str | None = None) -> StructureHandle:
        """Relabel the handle, e.g. to probe an S-norm for G-normhood."""
        kind = Kind(kind)
        if kind.arity != self.arity:
            raise KindMismatchError(f"cannot relabel a {self.kind.value} as {kind.value}: arity differs")
        steps = self.provenance + ((note,) if note else ())
        return replace(self, kind=kind, provenance=steps)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "dim": self.dim,
            "provenance": list(self.provenance),
        }


def require_kind(handle: StructureHandle, *kinds: Kind) -> None:
    if handle.kind not in kinds:
        wanted = " or ".join(k.value for k in kinds)
        raise KindMismatchError(f"{handle.name!r} is a {handle.kind.value}, expected {wanted}")


def make_euclidean_norm(dim: int) -> StructureHandle:
    dim = _check_dim(dim)
    return StructureHandle(Kind.NORM, dim, f"euclidean.d{dim}", euclid, ("euclidean",))


def make_metric_from_norm(norm: StructureHandle) -> StructureHandle:
    require_kind(norm, Kind.NORM)
    ev = norm.evaluator

    def metric(x, y):
        return ev(x - y)

    return StructureHandle(
        Kind.METRIC, norm.dim, f"d[{norm.name}]", metric, norm.provenance + ("metric_from_norm",)
    )


def make_sum_abs_snorm(dim: int) -> StructureHandle:
    """``||x,y,z|| = |x| + |y| + |z|`` with ``|.|`` the Euclidean norm."""
    dim = _check_dim(dim)

    def sum_abs(x, y, z):
        return euclid(x) + euclid(y) + euclid(z)

    return StructureHandle(Kind.SNORM, dim, f"sum_abs.d{dim}", sum_abs, ("sum_abs",))


def make_example6_snorm(dim: int) -> StructureHandle:
    """``|x-2y-2z| + |y-2x-2z| + |z-2y-2x|``; an S-norm not generated by any norm."""
    dim = _check_dim(dim)

    def example6(x, y, z):
        return euclid(x - 2 * y - 2 * z) + euclid(y - 2 * x - 2 * z) + euclid(z - 2 * y - 2 * x)

    return StructureHandle(Kind.SNORM, dim, f"example6.d{dim}", example6, ("example6",))


def make_discrete_smetric(dim: int) -> StructureHandle:
    dim = _check_dim(dim)

    def discrete(x, y, z):
        same = np.all((x == y) & (y == z), axis=-1)
        return np.where(same, 0.0, 1.0)

    return StructureHandle(Kind.SMETRIC, dim, f"discrete.d{dim}", discrete, ("discrete",))
