"""Stable string ids for the canonical structures, e.g. ``snorm.example6.d1``."""
from __future__ import annotations

import re
from typing import Callable

from . import generators as gen
from .errors import UnknownStructureError
from .structures import (
    Kind,
    StructureHandle,
    make_discrete_smetric,
    make_euclidean_norm,
    make_example6_snorm,
    make_metric_from_norm,
    make_sum_abs_snorm,
)

FAMILIES: dict[str, Callable[[int], StructureHandle]] = {
    "norm.euclidean": make_euclidean_norm,
    "metric.euclidean": lambda d: make_metric_from_norm(make_euclidean_norm(d)),
    "snorm.sum_abs": make_sum_abs_snorm,
    "snorm.example6": make_example6_snorm,
    "snorm.from_euclidean": lambda d: gen.snorm_from_norm(make_euclidean_norm(d)),
    "smetric.discrete": make_discrete_smetric,
    "smetric.from_sum_abs": lambda d: gen.smetric_from_snorm(make_sum_abs_snorm(d)),
    "smetric.from_example6": lambda d: gen.smetric_from_snorm(make_example6_snorm(d)),
    "smetric.from_metric": lambda d: gen.smetric_from_metric(make_metric_from_norm(make_euclidean_norm(d))),
    "norm.from_sum_abs": lambda d: gen.norm_from_snorm(make_sum_abs_snorm(d)),
    "norm.from_example6": lambda d: gen.norm_from_snorm(make_example6_snorm(d)),
    "gnorm.additive": lambda d: gen.snorm_from_norm(make_euclidean_norm(d)).as_kind(Kind.GNORM, "as_gnorm"),
}

# S-metrics produced by a generator (as opposed to defined directly).
GENERATED_SMETRICS = ("smetric.from_sum_abs", "smetric.from_example6", "smetric.from_metric")

_ID = re.compile(r"^(?P<family>[a-z]+\.[a-z0-9_]+)\.d(?P<dim>[1-9][0-9]*)$")


def resolve(structure_id: str) -> StructureHandle:
    """Build the structure named by ``<family>.d<dim>``."""
    match = _ID.match(structure_id)
    if not match or match["family"] not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise UnknownStructureError(f"unknown structure id {structure_id!r}; families: {known} (suffix .d<dim>)")
    handle = FAMILIES[match["family"]](int(match["dim"]))
    return handle


def catalog_ids(dims=(1, 2, 3)) -> list[str]:
    return [f"{family}.d{d}" for family in FAMILIES for d in dims]
