"""Finite-horizon convergence and Cauchy checks in an S-normed space.

Verdicts are HOLDS (with the first index from which the bound held up to
the horizon) or INCONCLUSIVE. A HOLDS verdict is evidence over the indices
examined, never a proof that the sequence converges.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .structures import Kind, StructureHandle, as_vector, require_kind

# A HOLDS verdict needs its first index in the first half of the horizon,
# otherwise the trivial tail (N, N, N) would always "hold".
TAIL_FRACTION = 0.5


class SeqVerdict(str, enum.Enum):
    HOLDS = "HOLDS"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SequenceSpec:
    generator: Callable[[int], object]
    horizon: int = 10_000
    eps: float = 1e-3
    domain_predicate: Callable[[np.ndarray], bool] = field(default=lambda x: True)
    name: str = "sequence"

    def terms(self) -> np.ndarray:
        """Terms ``x_1 .. x_N`` stacked as an ``(N, dim)`` array."""
        return np.array([as_vector(self.generator(n)) for n in range(1, self.horizon + 1)])


@dataclass(frozen=True)
class SeqResult:
    verdict: SeqVerdict
    first_index: int | None
    worst_value: float

    @property
    def holds(self) -> bool:
        return self.verdict is SeqVerdict.HOLDS

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "first_index": self.first_index,
                "worst_value": self.worst_value}


def _latest_index(n_max: int) -> int:
    return max(1, int(TAIL_FRACTION * n_max))


def tail_values(seq: SequenceSpec, x, s: StructureHandle, terms: np.ndarray | None = None) -> np.ndarray:
    """``||0, x_n - x, x - x_n||`` for ``n = 1 .. N``."""
    require_kind(s, Kind.SNORM, Kind.GNORM)
    xs = seq.terms() if terms is None else terms
    diff = xs - as_vector(x, s.dim)
    return s(np.zeros_like(diff), diff, -diff)


def check_convergence(seq: SequenceSpec, x, s: StructureHandle, eps: float | None = None) -> SeqResult:
    eps = seq.eps if eps is None else eps
    vals = tail_values(seq, x, s)
    bad = np.flatnonzero(~(vals < eps))
    n0 = 1 if bad.size == 0 else int(bad[-1]) + 2  # 1-based index after the last miss
    tail_start = _latest_index(seq.horizon)
    if n0 <= tail_start:
        return SeqResult(SeqVerdict.HOLDS, n0, float(vals[n0 - 1:].max()))
    return SeqResult(SeqVerdict.INCONCLUSIVE, None, float(vals[tail_start - 1:].max()))


def index_grid(n_max: int, size: int = 40) -> np.ndarray:
    """Log-spaced 1-based indices, always containing 1, the tail cut-off and N."""
    grid = np.unique(np.round(np.logspace(0, math.log10(n_max), size)).astype(int))
    extra = [1, _latest_index(n_max), n_max]
    return np.unique(np.clip(np.concatenate([grid, extra]), 1, n_max))


def check_cauchy(seq: SequenceSpec, s: StructureHandle, eps: float | None = None,
                 grid_size: int = 40) -> SeqResult:
    """Check ``||x_n - x_m, x_m - x_l, x_l - x_n|| < eps`` for n, m, l >= n0.

    Ordered triples are drawn from a logarithmic index grid; the smallest
    grid index ``n0`` whose triples all satisfy the bound is reported.
    """
    require_kind(s, Kind.SNORM, Kind.GNORM)
    eps = seq.eps if eps is None else eps
    xs = seq.terms()
    grid = index_grid(seq.horizon, grid_size)
    g = len(grid)
    i, j, k = (a.ravel() for a in np.meshgrid(np.arange(g), np.arange(g), np.arange(g), indexing="ij"))
    xn, xm, xl = xs[grid[i] - 1], xs[grid[j] - 1], xs[grid[k] - 1]
    vals = s(xn - xm, xm - xl, xl - xn)
    lowest = np.minimum(np.minimum(i, j), k)
    # worst value over triples whose smallest grid position is >= p
    worst_from = np.full(g, -np.inf)
    np.maximum.at(worst_from, lowest, vals)
    worst_from = np.maximum.accumulate(worst_from[::-1])[::-1]
    tail_start = _latest_index(seq.horizon)
    for p in range(g):
        if grid[p] > tail_start:
            break
        if worst_from[p] < eps:
            return SeqResult(SeqVerdict.HOLDS, int(grid[p]), float(worst_from[p]))
    p_tail = int(np.searchsorted(grid, tail_start))
    return SeqResult(SeqVerdict.INCONCLUSIVE, None, float(worst_from[p_tail]))


def limit_candidate(terms: np.ndarray) -> np.ndarray:
    """Estimate the limit of a sequence from its tail.

    Uses Aitken extrapolation on the index-doubled terms ``x_{N/4}, x_{N/2},
    x_N`` coordinatewise, falling back to the Cesaro mean of the second half
    when the differences do not shrink geometrically. The result is snapped
    to a lattice of spacing ``1e-9 * scale`` to strip extrapolation roundoff.
    """
    n = len(terms)
    tail = terms[n // 2:]
    cesaro = tail.mean(axis=0)
    if np.all(tail == tail[0]):
        return as_vector(tail[0])
    a, b, c = terms[max(n // 4, 1) - 1], terms[max(n // 2, 1) - 1], terms[n - 1]
    d1, d2 = b - a, c - b
    est = np.array(c, dtype=float)
    for q in range(terms.shape[1]):
        if d1[q] == 0 or d2[q] == 0:
            continue
        ratio = d1[q] / d2[q]
        if not ratio > 1.0:
            est[q] = cesaro[q]
            continue
        est[q] = c[q] + d2[q] / (ratio - 1.0)
    spread = np.abs(tail - cesaro).max()
    if not np.all(np.isfinite(est)) or np.abs(est - c).max() > 10 * max(spread, np.abs(d1).max()):
        est = cesaro
    scale = max(1.0, float(np.abs(tail).max()))
    quantum = 1e-9 * scale
    return as_vector(np.round(est / quantum) * quantum + 0.0)


@dataclass(frozen=True)
class CompletenessReport:
    cauchy: SeqResult
    candidate: np.ndarray
    in_domain: bool
    convergence_to_candidate: SeqResult

    def to_dict(self) -> dict:
        return {
            "cauchy": self.cauchy.to_dict(),
            "candidate": [float(c) for c in self.candidate],
            "in_domain": self.in_domain,
            "convergence_to_candidate": self.convergence_to_candidate.to_dict(),
        }


def classify_completeness_witness(seq: SequenceSpec, s: StructureHandle) -> CompletenessReport:
    """Cauchy verdict, numeric limit candidate, and whether it lies in the domain.

    A Cauchy sequence whose candidate falls outside ``seq.domain_predicate``
    is numerical evidence that the domain is not complete.
    """
    cauchy = check_cauchy(seq, s)
    terms = seq.terms()
    cand = limit_candidate(terms)
    conv = check_convergence(seq, cand, s)
    return CompletenessReport(cauchy, cand, bool(seq.domain_predicate(cand)), conv)


def _scalar(f):
    return lambda n: (f(n),)


# name -> (SequenceSpec factory taking (eps, horizon), known limit or None)
BUILTIN = {
    "inv_n_open": (lambda eps, N: SequenceSpec(_scalar(lambda n: 1 / n), N, eps,
                                               lambda x: bool(0 < x[0] < 1), "1/n on (0,1)"), (0.0,)),
    "inv_n_closed": (lambda eps, N: SequenceSpec(_scalar(lambda n: 1 / n), N, eps,
                                                 lambda x: bool(0 <= x[0] <= 1), "1/n on [0,1]"), (0.0,)),
    "inv_n_sq": (lambda eps, N: SequenceSpec(_scalar(lambda n: 1 / n**2), N, eps, name="1/n^2"), (0.0,)),
    "geometric": (lambda eps, N: SequenceSpec(_scalar(lambda n: 0.5**n), N, eps, name="2^-n"), (0.0,)),
    "constant": (lambda eps, N: SequenceSpec(_scalar(lambda n: 0.3), N, eps, name="0.3"), (0.3,)),
    "alternating": (lambda eps, N: SequenceSpec(_scalar(lambda n: (-1.0) ** n), N, eps, name="(-1)^n"), (0.0,)),
    "linear": (lambda eps, N: SequenceSpec(_scalar(lambda n: float(n)), N, eps, name="n"), None),
}
