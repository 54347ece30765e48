"""Constructions turning one structure into another.

Each generator returns a fresh :class:`StructureHandle` whose provenance
records the chain of constructions, so "generated by" claims can be read
back from the handle.
"""
from __future__ import annotations

import numpy as np

from .axioms import DEFAULT_TOL, SampleSpec, check_gnorm
from .errors import NotAGNormError
from .structures import Kind, StructureHandle, require_kind


def smetric_from_snorm(s: StructureHandle) -> StructureHandle:
    """``S(x, y, z) = ||x-y, y-z, z-x||``."""
    require_kind(s, Kind.SNORM)
    ev = s.evaluator

    def generated(x, y, z):
        return ev(x - y, y - z, z - x)

    return StructureHandle(Kind.SMETRIC, s.dim, f"S[{s.name}]", generated,
                           s.provenance + ("smetric_from_snorm",))


def snorm_from_norm(n: StructureHandle) -> StructureHandle:
    """``||x, y, z|| = ||x|| + ||y|| + ||z||``."""
    require_kind(n, Kind.NORM)
    ev = n.evaluator

    def additive(x, y, z):
        return ev(x) + ev(y) + ev(z)

    return StructureHandle(Kind.SNORM, n.dim, f"additive[{n.name}]", additive,
                           n.provenance + ("snorm_from_norm",))


def norm_from_snorm(s: StructureHandle) -> StructureHandle:
    """``||x|| = ||0, x, 0|| + ||0, 0, x||``.

    Note that ``norm_from_snorm(snorm_from_norm(n))`` is ``2 * n``, not ``n``.
    """
    require_kind(s, Kind.SNORM)
    ev = s.evaluator

    def generated(x):
        zero = np.zeros_like(x)
        return ev(zero, x, zero) + ev(zero, zero, x)

    return StructureHandle(Kind.NORM, s.dim, f"N[{s.name}]", generated,
                           s.provenance + ("norm_from_snorm",))


def smetric_from_metric(m: StructureHandle) -> StructureHandle:
    """``S(x, y, z) = d(x, y) + d(x, z) + d(y, z)``."""
    require_kind(m, Kind.METRIC)
    ev = m.evaluator

    def summed(x, y, z):
        return ev(x, y) + ev(x, z) + ev(y, z)

    return StructureHandle(Kind.SMETRIC, m.dim, f"S[{m.name}]", summed,
                           m.provenance + ("smetric_from_metric",))


def snorm_from_gnorm(g: StructureHandle, spec: SampleSpec | None = None,
                     tol: float = DEFAULT_TOL) -> StructureHandle:
    """View a G-norm as an S-norm after a sampled NG1-NG5 check.

    Raises :class:`NotAGNormError` carrying the first failing report when
    the check finds a violation.
    """
    require_kind(g, Kind.GNORM)
    spec = spec or SampleSpec.cube(g.dim)
    for report in check_gnorm(g, spec, tol):
        if not report.passed:
            raise NotAGNormError(f"{g.name!r} fails {report.property_id}", report)
    return StructureHandle(Kind.SNORM, g.dim, g.name, g.evaluator,
                           g.provenance + ("snorm_from_gnorm",))
