"""Sampling-based falsifiers for the S-norm, S-metric, norm and G-norm axioms.

A PASS verdict only means that no violation was found among the samples
drawn; a FAIL verdict always carries a witness that violates the property
when re-evaluated on its own.

Each property is a function returning ``(lhs, rhs, relation)`` where the
property demands ``lhs <= rhs`` (``"le"``) or ``lhs == rhs`` (``"eq"``). The
slack is normalised by ``max(|lhs|, |rhs|) + atol / tol`` so that a sample
violates the property exactly when its normalised slack drops below
``-tol``; i.e. the acceptance band is ``tol * scale + atol``.
"""
from __future__ import annotations

import enum
import itertools
import zlib
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .structures import Kind, StructureHandle, as_vector, require_kind

DEFAULT_TOL = 1e-9
ABS_FLOOR = 1e-12


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class SampleSpec:
    box_low: np.ndarray
    box_high: np.ndarray
    count: int = 10_000
    seed: int = 42
    scalar_range: float = 10.0

    def __post_init__(self):
        low, high = as_vector(self.box_low), as_vector(self.box_high)
        if low.size != high.size:
            raise ValueError("box corners must share one dimension")
        if np.any(low > high):
            raise ValueError("box_low must be <= box_high componentwise")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        object.__setattr__(self, "box_low", low)
        object.__setattr__(self, "box_high", high)

    @classmethod
    def cube(cls, dim: int, half_width: float = 10.0, **kwargs) -> SampleSpec:
        return cls(np.full(dim, -half_width), np.full(dim, half_width), **kwargs)

    @property
    def dim(self) -> int:
        return self.box_low.size

    def rng(self, stream: str) -> np.random.Generator:
        # One independent stream per property, so reports do not depend on call order.
        return np.random.default_rng([self.seed % 2**64, zlib.crc32(stream.encode())])

    def points(self, rng: np.random.Generator, k: int) -> list[np.ndarray]:
        return [rng.uniform(self.box_low, self.box_high, size=(self.count, self.dim)) for _ in range(k)]

    def scalars(self, rng: np.random.Generator, exclude_unit: bool = False) -> np.ndarray:
        lam = rng.uniform(-self.scalar_range, self.scalar_range, size=self.count)
        if exclude_unit:
            bad = np.isin(np.abs(lam), (0.0, 1.0))
            while bad.any():
                lam[bad] = rng.uniform(-self.scalar_range, self.scalar_range, size=int(bad.sum()))
                bad = np.isin(np.abs(lam), (0.0, 1.0))
        return lam


@dataclass
class CheckReport:
    property_id: str
    verdict: Verdict
    witness: tuple | None
    samples_used: int
    seed: int
    worst_margin: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        return {
            "property_id": self.property_id,
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else [_jsonable(w) for w in self.witness],
            "samples_used": self.samples_used,
            "seed": self.seed,
            "worst_margin": float(self.worst_margin),
            "note": "violation found" if self.witness is not None
            else f"no violation found in {self.samples_used} samples",
            "details": self.details,
        }


def _jsonable(w):
    if isinstance(w, np.ndarray):
        return [float(c) for c in w]
    return float(w)


def _normalized(lhs, rhs, relation, tol, atol=ABS_FLOOR):
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    slack = rhs - lhs if relation == "le" else -np.abs(lhs - rhs)
    return slack / (np.maximum(np.abs(lhs), np.abs(rhs)) + atol / tol)


def violates(lhs, rhs, relation, tol=DEFAULT_TOL) -> bool:
    """Single-point replay: does ``(lhs, rhs)`` break the relation beyond ``tol``?"""
    return bool(_normalized(lhs, rhs, relation, tol) < -tol)


PropertyFn = Callable[..., tuple]


def _unit(dim: int, scale: float = 1.0) -> np.ndarray:
    e = np.zeros(dim)
    e[0] = scale
    return e


def run_property(
    property_id: str,
    fn: PropertyFn,
    canned: Sequence[tuple],
    batch: tuple | None,
    spec: SampleSpec,
    tol: float,
) -> CheckReport:
    """Evaluate ``fn`` on canned witnesses first, then on the sampled batch.

    The first failing sample (canned ones first, then by batch index) whose
    single-point replay also fails becomes the witness.
    """
    worst = np.inf
    used = 0
    for args in canned:
        used += 1
        lhs, rhs, rel = fn(*args)
        margin = float(_normalized(lhs, rhs, rel, tol))
        worst = min(worst, margin)
        if margin < -tol:
            return CheckReport(property_id, Verdict.FAIL, tuple(args), used, spec.seed, worst,
                               {"lhs": float(lhs), "rhs": float(rhs), "relation": rel, "canned": True})
    if batch is not None:
        lhs, rhs, rel = fn(*batch)
        margins = _normalized(lhs, rhs, rel, tol)
        for idx in np.flatnonzero(margins < -tol):
            args = tuple(_row(a, idx) for a in batch)
            l1, r1, rel1 = fn(*args)
            if violates(l1, r1, rel1, tol):
                worst = min(worst, float(margins[: idx + 1].min()))
                return CheckReport(property_id, Verdict.FAIL, args, used + int(idx) + 1, spec.seed, worst,
                                   {"lhs": float(l1), "rhs": float(r1), "relation": rel1, "canned": False})
        used += spec.count
        worst = min(worst, float(margins.min()))
    return CheckReport(property_id, Verdict.PASS, None, used, spec.seed, worst)


def _row(a, idx):
    a = np.asarray(a)
    if a.ndim == 1:
        return float(a[idx])
    return as_vector(a[idx])


def _merge(property_id: str, parts: Sequence[CheckReport], spec: SampleSpec) -> CheckReport:
    """Combine sub-checks of one axiom into a single report (first failure wins)."""
    used = 0
    worst = np.inf
    for rep in parts:
        used += rep.samples_used
        worst = min(worst, rep.worst_margin)
        if not rep.passed:
            details = dict(rep.details, clause=rep.property_id)
            return CheckReport(property_id, Verdict.FAIL, rep.witness, used, spec.seed, worst, details)
    return CheckReport(property_id, Verdict.PASS, None, used, spec.seed, worst)


# --- positivity-type clauses -------------------------------------------------

def _zero_clause(property_id, h, zero_args, spec, tol):
    """Exact zero at the canonical zero point(s)."""
    def fn(*args):
        return h(*args), 0.0, "eq"
    # exact comparison: any nonzero value at the zero point is a failure
    for args in zero_args:
        v = fn(*args)[0]
        if v != 0.0:
            margin = -abs(v) / (abs(v) + ABS_FLOOR / tol)
            return CheckReport(property_id, Verdict.FAIL, tuple(args), 1, spec.seed, margin,
                               {"value": float(v), "required": 0.0})
    return CheckReport(property_id, Verdict.PASS, None, len(zero_args), spec.seed, 0.0)


def _zero_batch_clause(property_id, h, batch, spec, tol):
    """Exact zero on a sampled batch of points that must evaluate to zero."""
    vals = np.asarray(h(*batch))
    bad = np.flatnonzero(vals != 0.0)
    if bad.size:
        idx = int(bad[0])
        args = tuple(_row(a, idx) for a in batch)
        v = h(*args)
        margin = -abs(v) / (abs(v) + ABS_FLOOR / tol)
        return CheckReport(property_id, Verdict.FAIL, args, idx + 1, spec.seed, margin,
                           {"value": float(v), "required": 0.0})
    return CheckReport(property_id, Verdict.PASS, None, spec.count, spec.seed, 0.0)


def _positive_clause(property_id, h, batch, spec, tol):
    """Values on non-degenerate samples must exceed ``tol``."""
    vals = np.asarray(h(*batch))
    bad = np.flatnonzero(~(vals > tol))
    if bad.size:
        idx = int(bad[0])
        args = tuple(_row(a, idx) for a in batch)
        v = h(*args)
        return CheckReport(property_id, Verdict.FAIL, args, idx + 1, spec.seed, float(v) - tol,
                           {"value": float(v), "required": f"> {tol}"})
    return CheckReport(property_id, Verdict.PASS, None, spec.count, spec.seed, 0.0)


def _nonneg_clause(property_id, h, batch, spec, tol, canned=()):
    def fn(*args):
        return 0.0 * np.asarray(h(*args)), h(*args), "le"
    return run_property(property_id, fn, canned, batch, spec, tol)


def _zeros(spec):
    return np.zeros(spec.dim)


# --- S-norm -------------------------------------------------------------------

def _definiteness(prefix, h, spec, tol, arity):
    """Clause 1 of NS1/NG1/N1-N2 style axioms: >= 0 and zero exactly at the origin."""
    rng = spec.rng(prefix)
    pts = spec.points(rng, arity)
    z = _zeros(spec)
    return [
        _zero_clause(f"{prefix}.zero", h, [(z,) * arity], spec, tol),
        _nonneg_clause(f"{prefix}.nonneg", h, tuple(pts), spec, tol),
        _positive_clause(f"{prefix}.positive", h, tuple(pts), spec, tol),
    ]


def _homogeneity(property_id, h, spec, tol, arity, canned=(), exclude_unit=False):
    rng = spec.rng(property_id)
    pts = spec.points(rng, arity)
    lam = spec.scalars(rng, exclude_unit=exclude_unit)

    def fn(*args):
        *vs, l = args
        lcol = np.asarray(l)[..., None] if np.ndim(l) else l
        return h(*(lcol * v for v in vs)), np.abs(l) * h(*vs), "eq"

    return run_property(property_id, fn, canned, (*pts, lam), spec, tol)


def ns3_check(s: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> CheckReport:
    # ||x+x', y+y', z+z'|| <= ||0,x,z'|| + ||0,y,x'|| + ||0,z,y'||, rotation taken verbatim
    def fn(x, y, z, xp, yp, zp):
        zero = np.zeros_like(x)
        return s(x + xp, y + yp, z + zp), s(zero, x, zp) + s(zero, y, xp) + s(zero, z, yp), "le"

    rng = spec.rng("NS3")
    return run_property("NS3", fn, (), tuple(spec.points(rng, 6)), spec, tol)


def check_snorm(s: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> list[CheckReport]:
    require_kind(s, Kind.SNORM, Kind.GNORM)
    return [
        _merge("NS1", _definiteness("NS1", s, spec, tol, 3), spec),
        _homogeneity("NS2", s, spec, tol, 3),
        ns3_check(s, spec, tol),
    ]


# --- S-metric -----------------------------------------------------------------

def check_smetric(m: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> list[CheckReport]:
    require_kind(m, Kind.SMETRIC)
    rng = spec.rng("S1")
    x, y, z = spec.points(rng, 3)
    o = _zeros(spec)
    s1 = _merge("S1", [
        _zero_clause("S1.zero", m, [(o, o, o)], spec, tol),
        _zero_batch_clause("S1.diagonal", m, (x, x, x), spec, tol),
        _nonneg_clause("S1.nonneg", m, (x, y, z), spec, tol),
        _positive_clause("S1.distinct", m, (x, y, z), spec, tol),
        _positive_clause("S1.pair_xxz", m, (x, x, z), spec, tol),
        _positive_clause("S1.pair_xyy", m, (x, y, y), spec, tol),
    ], spec)

    def fn(x, y, z, a):
        return m(x, y, z), m(x, x, a) + m(y, y, a) + m(z, z, a), "le"

    rng = spec.rng("S2")
    s2 = run_property("S2", fn, (), tuple(spec.points(rng, 4)), spec, tol)
    return [s1, s2]


# --- norm ---------------------------------------------------------------------

def check_norm(n: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> list[CheckReport]:
    require_kind(n, Kind.NORM)
    rng = spec.rng("N1")
    (x,) = spec.points(rng, 1)
    e = _unit(spec.dim)
    n1 = _nonneg_clause("N1", n, (x,), spec, tol, canned=[(e,), (-e,)])
    o = _zeros(spec)
    n2 = _merge("N2", [
        _zero_clause("N2.zero", n, [(o,)], spec, tol),
        _positive_clause("N2.positive", n, (x,), spec, tol),
    ], spec)
    n3 = _homogeneity("N3", n, spec, tol, 1)

    def fn(x, y):
        return n(x + y), n(x) + n(y), "le"

    rng = spec.rng("N4")
    n4 = run_property("N4", fn, (), tuple(spec.points(rng, 2)), spec, tol)
    return [n1, n2, n3, n4]


# --- metric -------------------------------------------------------------------

def check_metric(d: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> list[CheckReport]:
    """Standard metric axioms M1 (identity), M2 (symmetry), M3 (triangle)."""
    require_kind(d, Kind.METRIC)
    rng = spec.rng("M1")
    x, y = spec.points(rng, 2)
    m1 = _merge("M1", [
        _zero_batch_clause("M1.diagonal", d, (x, x), spec, tol),
        _nonneg_clause("M1.nonneg", d, (x, y), spec, tol),
        _positive_clause("M1.distinct", d, (x, y), spec, tol),
    ], spec)

    def sym(x, y):
        return d(x, y), d(y, x), "eq"

    def tri(x, y, z):
        return d(x, z), d(x, y) + d(y, z), "le"

    m2 = run_property("M2", sym, (), tuple(spec.points(spec.rng("M2"), 2)), spec, tol)
    m3 = run_property("M3", tri, (), tuple(spec.points(spec.rng("M3"), 3)), spec, tol)
    return [m1, m2, m3]


# --- G-norm -------------------------------------------------------------------

_PERMUTATIONS = [p for p in itertools.permutations(range(3)) if p != (0, 1, 2)]


def check_gnorm(g: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> list[CheckReport]:
    require_kind(g, Kind.GNORM, Kind.SNORM)
    ng1 = _merge("NG1", _definiteness("NG1", g, spec, tol, 3), spec)

    rng = spec.rng("NG2")
    pts = tuple(spec.points(rng, 3))
    perm_reports = []
    for p in _PERMUTATIONS:
        def fn(x, y, z, p=p):
            args = (x, y, z)
            return g(x, y, z), g(*(args[i] for i in p)), "eq"
        perm_reports.append(run_property(f"NG2.perm{''.join(map(str, p))}", fn, (), pts, spec, tol))
    ng2 = _merge("NG2", perm_reports, spec)

    ng3 = _homogeneity("NG3", g, spec, tol, 3)

    def fn4(x, y, z, xp, yp, zp):
        return g(x + xp, y + yp, z + zp), g(x, y, z) + g(xp, yp, zp), "le"

    rng = spec.rng("NG4")
    ng4 = run_property("NG4", fn4, (), tuple(spec.points(rng, 6)), spec, tol)

    def fn5(x, y, z):
        return g(x + y, np.zeros_like(x), z), g(x, y, z), "le"

    rng = spec.rng("NG5")
    canned = [(_unit(spec.dim), _unit(spec.dim, 5.0), _zeros(spec))]
    ng5 = run_property("NG5", fn5, canned, tuple(spec.points(rng, 3)), spec, tol)
    return [ng1, ng2, ng3, ng4, ng5]


# --- lemmas and necessary conditions ---------------------------------------------

def check_lemma3_symmetry(s: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> CheckReport:
    """``||0, x-y, y-x|| == ||0, y-x, x-y||`` on sampled pairs.

    For an S-metric the same statement reads ``S(x, x, y) == S(y, y, x)``,
    which is what it becomes when the S-metric is generated by an S-norm.
    """
    require_kind(s, Kind.SNORM, Kind.GNORM, Kind.SMETRIC)

    def fn(x, y):
        if s.kind is Kind.SMETRIC:
            return s(x, x, y), s(y, y, x), "eq"
        zero = np.zeros_like(x)
        return s(zero, x - y, y - x), s(zero, y - x, x - y), "eq"

    rng = spec.rng("lemma.pair_symmetry")
    return run_property("lemma.pair_symmetry", fn, (), tuple(spec.points(rng, 2)), spec, tol)


def falsify_norm_generated(s: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> CheckReport:
    """Test the additive decomposition every norm-generated S-norm must satisfy.

    FAIL proves ``s`` is not generated by any norm; PASS is inconclusive.
    """
    require_kind(s, Kind.SNORM, Kind.GNORM)

    def parts(x, y, z):
        zero = np.zeros_like(x)
        return s(x, zero, zero), s(zero, y, zero), s(zero, zero, z)

    def fn(x, y, z):
        a, b, c = parts(x, y, z)
        return s(x, y, z), a + b + c, "eq"

    e = _unit(spec.dim)
    rng = spec.rng("norm_generated.decomposition")
    rep = run_property("norm_generated.decomposition", fn, [(e, e, _zeros(spec))],
                       tuple(spec.points(rng, 3)), spec, tol)
    if not rep.passed:
        a, b, c = parts(*rep.witness)
        value = s(*rep.witness)
        rep.details.update(value=value, parts=[a, b, c], gap=a + b + c - value)
    return rep


def falsify_snorm_generated(m: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> CheckReport:
    """Test homogeneity and translation invariance, both forced on any S-metric
    generated by an S-norm. FAIL proves ``m`` has no generating S-norm."""
    require_kind(m, Kind.SMETRIC)
    o, e = _zeros(spec), _unit(spec.dim)
    homog = _homogeneity("snorm_generated.homogeneity", m, spec, tol, 3,
                         canned=[(o, o, e, 2.0)], exclude_unit=True)
    if homog.witness is not None:
        homog.details.update(observed=homog.details["lhs"], required=homog.details["rhs"])

    def fn(x, y, z, a):
        return m(x + a, y + a, z + a), m(x, y, z), "eq"

    rng = spec.rng("snorm_generated.translation")
    trans = run_property("snorm_generated.translation", fn, (), tuple(spec.points(rng, 4)), spec, tol)
    return _merge("snorm_generated", [homog, trans], spec)


def check_structure(h: StructureHandle, spec: SampleSpec, tol: float = DEFAULT_TOL) -> list[CheckReport]:
    """Dispatch to the axiom system matching ``h.kind``."""
    if h.kind is Kind.SNORM:
        return check_snorm(h, spec, tol)
    if h.kind is Kind.SMETRIC:
        return check_smetric(h, spec, tol)
    if h.kind is Kind.NORM:
        return check_norm(h, spec, tol)
    if h.kind is Kind.GNORM:
        return check_gnorm(h, spec, tol)
    if h.kind is Kind.METRIC:
        return check_metric(h, spec, tol)
    raise ValueError(f"no axiom system for kind {h.kind.value}")
