"""Rhoades-type contractive conditions and a numerical fixed-point locator.

Four pointwise evaluators are provided, one per setting:

* ``nr25_at``  norm:      ||Tx-Ty|| < max{||x-y||, ||x-Tx||, ||y-Ty||, ||x-Ty||, ||y-Tx||}
* ``r25_at``   metric:    d(Tx,Ty) < max{d(x,y), d(x,Tx), d(y,Ty), d(x,Ty), d(y,Tx)}
* ``ns25_at``  S-norm:    ||0,Tx-Ty,Ty-Tx|| < max of the five analogous pair values
* ``s25_at``   S-metric:  S(Tx,Tx,Ty) < max{S(x,x,y), S(Tx,Tx,x), S(Ty,Ty,y), S(Ty,Ty,x), S(Tx,Tx,y)}

All comparisons are strict and exact. The term order is the same in all
four, so term ``k`` of one condition corresponds to term ``k`` of another.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .axioms import CheckReport, SampleSpec, Verdict
from .errors import DomainError, ExcludedPairError, NoConvergenceError
from .generators import smetric_from_snorm, snorm_from_norm
from .structures import Kind, StructureHandle, as_vector, require_kind


@dataclass(frozen=True)
class SelfMap:
    """A map ``T`` on the closed box ``[domain_low, domain_high]``.

    ``map`` must accept a single point ``(dim,)`` or a batch ``(n, dim)``.
    """
    map: Callable[[np.ndarray], np.ndarray]
    domain_low: np.ndarray
    domain_high: np.ndarray
    name: str = "T"

    def __post_init__(self):
        low, high = as_vector(self.domain_low), as_vector(self.domain_high, np.size(self.domain_low))
        if np.any(low > high):
            raise ValueError("domain_low must be <= domain_high")
        object.__setattr__(self, "domain_low", low)
        object.__setattr__(self, "domain_high", high)

    @property
    def dim(self) -> int:
        return self.domain_low.size

    def __call__(self, x):
        return np.asarray(self.map(np.asarray(x, dtype=float)), dtype=float)

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.all((x >= self.domain_low) & (x <= self.domain_high), axis=-1)

    def sample_spec(self, count: int = 10_000, seed: int = 42) -> SampleSpec:
        return SampleSpec(self.domain_low, self.domain_high, count=count, seed=seed)

    def check_self_map(self, count: int = 1000, seed: int = 42) -> bool:
        spec = self.sample_spec(count, seed)
        (x,) = spec.points(spec.rng(f"selfmap.{self.name}"), 1)
        corners = np.array(list(itertools.product(*zip(self.domain_low, self.domain_high))))
        pts = np.vstack([corners, x])
        return bool(np.all(self.contains(self(pts))))


# -- map corpus -------------------------------------------------------------------

def _box(dim, lo, hi):
    return np.full(dim, lo, dtype=float), np.full(dim, hi, dtype=float)


MAPS: dict[str, Callable[[int], SelfMap]] = {
    "half": lambda d: SelfMap(lambda x: x / 2, *_box(d, -1, 1), "half"),
    "shifted_half": lambda d: SelfMap(lambda x: (x + 0.5) / 2, *_box(d, -1, 1), "shifted_half"),
    "cosine": lambda d: SelfMap(np.cos, *_box(d, 0, 1), "cosine"),
    "identity": lambda d: SelfMap(lambda x: x.copy(), *_box(d, -1, 1), "identity"),
    "negation": lambda d: SelfMap(lambda x: -x, *_box(d, -1, 1), "negation"),
    "half_sine": lambda d: SelfMap(lambda x: x / 2 + 0.1 * np.sin(x), *_box(d, -1, 1), "half_sine"),
}

DEFAULT_DIMS = {"half": 2, "cosine": 1, "shifted_half": 1, "identity": 1, "negation": 1, "half_sine": 1}


def make_map(map_id: str, dim: int | None = None) -> SelfMap:
    if map_id not in MAPS:
        raise KeyError(f"unknown map {map_id!r}; known: {', '.join(MAPS)}")
    return MAPS[map_id](dim or DEFAULT_DIMS[map_id])


# -- condition evaluators ------------------------------------------------------------

@dataclass(frozen=True)
class ConditionVerdict:
    lhs: float
    rhs: float
    term_values: tuple[float, float, float, float, float]
    holds: bool
    margin: float

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "term_values": list(self.term_values),
                "holds": self.holds, "margin": self.margin}


def _pair_value(s: StructureHandle):
    def value(a, b):
        d = a - b
        return s(np.zeros_like(d), d, -d)
    return value


def ns25_terms(T: SelfMap, s: StructureHandle, x, y):
    """Return ``(lhs, [five terms])``; works for single points and batches."""
    p = _pair_value(s)
    tx, ty = T(x), T(y)
    return p(tx, ty), [p(x, y), p(tx, x), p(ty, y), p(ty, x), p(tx, y)]


def s25_terms(T: SelfMap, m: StructureHandle, x, y):
    tx, ty = T(x), T(y)
    return m(tx, tx, ty), [m(x, x, y), m(tx, tx, x), m(ty, ty, y), m(ty, ty, x), m(tx, tx, y)]


def nr25_terms(T: SelfMap, n: StructureHandle, x, y):
    tx, ty = T(x), T(y)
    return n(tx - ty), [n(x - y), n(x - tx), n(y - ty), n(x - ty), n(y - tx)]


def r25_terms(T: SelfMap, d: StructureHandle, x, y):
    tx, ty = T(x), T(y)
    return d(tx, ty), [d(x, y), d(x, tx), d(y, ty), d(x, ty), d(y, tx)]


def _verdict(T: SelfMap, h: StructureHandle, x, y, terms_fn) -> ConditionVerdict:
    x, y = as_vector(x, T.dim), as_vector(y, T.dim)
    if np.array_equal(x, y):
        raise ExcludedPairError("the conditions are only defined for x != y")
    if not (T.contains(x) and T.contains(y)):
        raise DomainError(f"{x.tolist()} or {y.tolist()} lies outside the domain of {T.name}")
    lhs, terms = terms_fn(T, h, x, y)
    rhs = max(terms)
    return ConditionVerdict(float(lhs), float(rhs), tuple(float(t) for t in terms),
                            bool(lhs < rhs), float(rhs - lhs))


def ns25_at(T: SelfMap, s: StructureHandle, x, y) -> ConditionVerdict:
    require_kind(s, Kind.SNORM, Kind.GNORM)
    return _verdict(T, s, x, y, ns25_terms)


def s25_at(T: SelfMap, m: StructureHandle, x, y) -> ConditionVerdict:
    require_kind(m, Kind.SMETRIC)
    return _verdict(T, m, x, y, s25_terms)


def nr25_at(T: SelfMap, n: StructureHandle, x, y) -> ConditionVerdict:
    require_kind(n, Kind.NORM)
    return _verdict(T, n, x, y, nr25_terms)


def r25_at(T: SelfMap, d: StructureHandle, x, y) -> ConditionVerdict:
    require_kind(d, Kind.METRIC)
    return _verdict(T, d, x, y, r25_terms)


CONDITIONS = {
    "ns25": (ns25_terms, (Kind.SNORM, Kind.GNORM)),
    "s25": (s25_terms, (Kind.SMETRIC,)),
    "nr25": (nr25_terms, (Kind.NORM,)),
    "r25": (r25_terms, (Kind.METRIC,)),
}


# -- sampled pair checks ---------------------------------------------------------------

def sample_pairs(T: SelfMap, spec: SampleSpec, stream: str) -> tuple[np.ndarray, np.ndarray]:
    """Uniform pairs in the spec box with ``x != y``; equal pairs are redrawn."""
    rng = spec.rng(stream)
    x, y = spec.points(rng, 2)
    same = np.all(x == y, axis=1)
    while same.any():
        y[same] = rng.uniform(spec.box_low, spec.box_high, size=(int(same.sum()), spec.dim))
        same = np.all(x == y, axis=1)
    return x, y


def condition_batch(T: SelfMap, h: StructureHandle, condition: str, x, y):
    terms_fn, kinds = CONDITIONS[condition]
    require_kind(h, *kinds)
    lhs, terms = terms_fn(T, h, x, y)
    rhs = np.max(np.stack(terms), axis=0)
    return lhs, rhs


def condition_pass_rate(T: SelfMap, h: StructureHandle, condition: str, spec: SampleSpec) -> dict:
    x, y = sample_pairs(T, spec, f"{condition}.{T.name}")
    lhs, rhs = condition_batch(T, h, condition, x, y)
    holds = lhs < rhs
    bad = np.flatnonzero(~holds)
    first = None
    if bad.size:
        i = int(bad[0])
        first = {"x": x[i].tolist(), "y": y[i].tolist(), "lhs": float(lhs[i]), "rhs": float(rhs[i])}
    return {
        "condition": condition,
        "map": T.name,
        "structure": h.name,
        "samples": spec.count,
        "seed": spec.seed,
        "condition_pass_rate": float(holds.mean()),
        "violations": int(bad.size),
        "first_violation": first,
    }


def _implication(property_id, T, spec, antecedent, consequent) -> CheckReport:
    x, y = sample_pairs(T, spec, property_id)
    a_lhs, a_rhs = antecedent(x, y)
    c_lhs, c_rhs = consequent(x, y)
    premise = a_lhs < a_rhs
    broken = premise & ~(c_lhs < c_rhs)
    slack = (c_rhs - c_lhs)[premise]
    worst = float(slack.min()) if slack.size else 0.0
    details = {"premise_rate": float(premise.mean()), "violations": int(broken.sum())}
    if broken.any():
        i = int(np.flatnonzero(broken)[0])
        return CheckReport(property_id, Verdict.FAIL, (as_vector(x[i]), as_vector(y[i])),
                           i + 1, spec.seed, worst, details)
    return CheckReport(property_id, Verdict.PASS, None, spec.count, spec.seed, worst, details)


def check_prop7(T: SelfMap, s: StructureHandle, spec: SampleSpec | None = None) -> CheckReport:
    """Wherever NS25 holds for ``s``, S25 must hold for the S-metric generated by ``s``."""
    require_kind(s, Kind.SNORM)
    spec = spec or T.sample_spec()
    m = smetric_from_snorm(s)
    return _implication("implication.ns25_to_s25", T, spec,
                        lambda x, y: condition_batch(T, s, "ns25", x, y),
                        lambda x, y: condition_batch(T, m, "s25", x, y))


def check_prop8(T: SelfMap, n: StructureHandle, spec: SampleSpec | None = None) -> CheckReport:
    """Wherever NR25 holds for ``n``, NS25 must hold for the S-norm generated by ``n``."""
    require_kind(n, Kind.NORM)
    spec = spec or T.sample_spec()
    s = snorm_from_norm(n)
    return _implication("implication.nr25_to_ns25", T, spec,
                        lambda x, y: condition_batch(T, n, "nr25", x, y),
                        lambda x, y: condition_batch(T, s, "ns25", x, y))


# -- fixed-point search -------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    starts: int = 16
    grid_points: int = 33
    max_cells: int = 100_000
    depth: int = 6
    keep: int = 4
    iterations: int = 200
    seed: int = 42


@dataclass
class UniquenessReport:
    basins: int
    unique: bool
    representatives: list[list[float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"basins": self.basins, "unique": self.unique, "representatives": self.representatives}


@dataclass
class FixedPointResult:
    point: np.ndarray
    residual: float
    uniqueness: UniquenessReport
    evaluations: int

    def to_dict(self) -> dict:
        return {
            "fixed_point": [float(c) for c in self.point],
            "residual": self.residual,
            "uniqueness": self.uniqueness.to_dict(),
            "evaluations": self.evaluations,
            "label": "demonstration",
        }


def residual(T: SelfMap, s: StructureHandle, x):
    """``||0, Tx - x, x - Tx||``; zero exactly at fixed points."""
    d = T(x) - np.asarray(x, dtype=float)
    return s(np.zeros_like(d), d, -d)


def _grid(low, high, per_axis):
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(low, high)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def _per_axis(dim, cfg: SearchConfig) -> int:
    n = cfg.grid_points
    while n > 2 and n**dim > cfg.max_cells:
        n -= 1
    return n


def _best(points, values, k):
    # lexicographic point order breaks ties so reductions are deterministic
    order = np.lexsort(tuple(points.T[::-1]) + (values,))
    return points[order[:k]], values[order[:k]]


class _Search:
    def __init__(self, T, s, tol, budget, cfg):
        self.T, self.s, self.tol, self.budget, self.cfg = T, s, tol, budget, cfg
        self.evals = 0
        self.best_x = None
        self.best_r = math.inf

    def _eval(self, pts):
        pts = np.atleast_2d(pts)
        if self.evals + len(pts) > self.budget:
            raise NoConvergenceError(
                f"budget of {self.budget} map evaluations exhausted; best residual {self.best_r:.3g}",
                self.best_x, self.best_r)
        self.evals += len(pts)
        r = np.atleast_1d(residual(self.T, self.s, pts))
        i = int(np.argmin(r))
        if r[i] < self.best_r or (r[i] == self.best_r and tuple(pts[i]) < tuple(self.best_x)):
            self.best_x, self.best_r = as_vector(pts[i]), float(r[i])
        return r

    def iterate(self, starts):
        """Picard iteration from every start, kept inside the box."""
        x = np.array(starts, dtype=float)
        r = self._eval(x)
        for _ in range(self.cfg.iterations):
            if r.min() <= self.tol:
                break
            x = np.clip(self.T(x), self.T.domain_low, self.T.domain_high)
            r = self._eval(x)
        return x, r

    def refine(self, centers, low, high):
        """Shrinking-box grid search around each centre."""
        n = _per_axis(self.T.dim, self.cfg)
        width = (high - low) / (n - 1)
        cand = np.atleast_2d(centers)
        for _ in range(self.cfg.depth):
            pts = []
            for c in cand:
                lo = np.maximum(c - width, self.T.domain_low)
                hi = np.minimum(c + width, self.T.domain_high)
                pts.append(_grid(lo, hi, n))
            pts = np.unique(np.vstack(pts), axis=0)
            r = self._eval(pts)
            if r.min() <= self.tol:
                break
            cand, _ = _best(pts, r, self.cfg.keep)
            width = width * 2 / (n - 1)
        return self.best_x, self.best_r

    def polish(self, x):
        """Drive one candidate to residual <= tol, returning (point, residual)."""
        xs, r = self.iterate(np.atleast_2d(x))
        if r[0] <= self.tol:
            return as_vector(xs[0]), float(r[0])
        width = (self.T.domain_high - self.T.domain_low) / (_per_axis(self.T.dim, self.cfg) - 1)
        local = _Search(self.T, self.s, self.tol, self.budget - self.evals, self.cfg)
        local.refine(xs[0], xs[0] - width, xs[0] + width)
        self.evals += local.evals
        return local.best_x, local.best_r


def find_fixed_point(T: SelfMap, s: StructureHandle, tol: float = 1e-6, budget: int = 1_000_000,
                     config: SearchConfig | None = None) -> FixedPointResult:
    """Locate ``x*`` with ``||0, Tx* - x*, x* - Tx*|| <= tol``.

    Multi-start iteration first; if that stalls, a coarse grid over the
    domain is refined around the best cells. A final scan seeds a local
    search from the best grid cells and counts distinct fixed points
    separated by more than ``10 * tol``. This demonstrates existence and
    uniqueness numerically; it certifies neither.
    """
    require_kind(s, Kind.SNORM, Kind.GNORM)
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not T.check_self_map(seed=(config or SearchConfig()).seed):
        raise DomainError(f"{T.name} does not map its domain into itself")
    cfg = config or SearchConfig()
    search = _Search(T, s, tol, budget, cfg)

    spec = T.sample_spec(count=cfg.starts, seed=cfg.seed)
    (starts,) = spec.points(spec.rng(f"starts.{T.name}"), 1)
    search.iterate(starts)
    # The coarse grid is always scanned: it may contain an exact fixed point
    # and it seeds the uniqueness scan.
    grid = _grid(T.domain_low, T.domain_high, _per_axis(T.dim, cfg))
    grid_r = search._eval(grid)
    if search.best_r > tol:
        centers, _ = _best(grid, grid_r, cfg.keep)
        search.refine(centers, T.domain_low, T.domain_high)
    if search.best_r > tol:
        raise NoConvergenceError(f"no point with residual <= {tol} found; best {search.best_r:.3g}",
                                 search.best_x, search.best_r)
    point = search.best_x
    uniq = _uniqueness_scan(search, point, grid, grid_r)
    return FixedPointResult(point, float(residual(T, s, point)), uniq, search.evals)


def _uniqueness_scan(search: _Search, found, grid, grid_r) -> UniquenessReport:
    cfg, tol = search.cfg, search.tol
    seeds, _ = _best(grid, grid_r, cfg.starts)
    reps = [found]
    for seed in seeds:
        x, rx = search.polish(seed)
        if rx > tol:
            continue
        if all(np.max(np.abs(x - p)) > 10 * tol for p in reps):
            reps.append(x)
    return UniquenessReport(len(reps), len(reps) == 1, [[float(c) for c in p] for p in reps])
