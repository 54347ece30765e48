import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from snormed.sequences import (
    BUILTIN,
    SequenceSpec,
    SeqVerdict,
    check_cauchy,
    check_convergence,
    classify_completeness_witness,
    index_grid,
    limit_candidate,
)
from snormed.structures import make_example6_snorm, make_sum_abs_snorm

S1 = make_sum_abs_snorm(1)
S6 = make_example6_snorm(1)


def builtin(name, eps=1e-3, horizon=10_000):
    make, _ = BUILTIN[name]
    return make(eps, horizon)


def test_inv_n_convergence_index():
    r = check_convergence(builtin("inv_n_open"), 0.0, S1)
    # frozen from oracles.first_convergence_index: 2/n < 1e-3 iff n > 2000
    assert (r.verdict, r.first_index) == (SeqVerdict.HOLDS, 2001)


def test_constant_and_alternating():
    assert check_convergence(builtin("constant"), 0.3, S1).first_index == 1
    alt = check_convergence(builtin("alternating"), 0.0, S1)
    assert alt.verdict is SeqVerdict.INCONCLUSIVE and alt.worst_value == 2.0


def test_cauchy_verdicts():
    assert check_cauchy(builtin("inv_n_open"), S1).holds
    assert check_cauchy(builtin("constant"), S1).first_index == 1
    assert check_cauchy(builtin("linear"), S1).verdict is SeqVerdict.INCONCLUSIVE


def test_late_convergence_is_inconclusive():
    # bound first met after the half-horizon cut-off
    seq = SequenceSpec(lambda n: (1 / n,), 3000, 1e-3)
    assert check_convergence(seq, 0.0, S1).verdict is SeqVerdict.INCONCLUSIVE


def test_cauchy_not_complete():
    rep = classify_completeness_witness(builtin("inv_n_open"), S1)
    assert rep.cauchy.holds
    assert abs(rep.candidate[0]) <= 1e-3
    assert rep.in_domain is False
    assert classify_completeness_witness(builtin("inv_n_closed"), S1).in_domain is True
    const = classify_completeness_witness(builtin("constant"), S1)
    assert const.cauchy.first_index == 1 and const.candidate.tolist() == [0.3] and const.in_domain


def test_index_grid_contains_anchors():
    g = index_grid(10_000)
    assert g[0] == 1 and 5000 in g and g[-1] == 10_000
    assert list(g) == sorted(set(g))


def test_limit_candidate_geometric():
    seq = builtin("geometric")
    assert limit_candidate(seq.terms()).tolist() == [0.0]


@given(st.floats(0.05, 0.95), st.sampled_from([1e-2, 1e-3, 1e-4]))
def test_convergence_index_matches_scan(ratio, eps):
    f = lambda n: ratio ** n
    seq = SequenceSpec(lambda n: (f(n),), 2000, eps)
    r = check_convergence(seq, 0.0, S1)
    assert r.first_index == oracles.first_convergence_index(f, 0.0, eps, 2000)


def _suite():
    seqs = [(f"geom{q}", lambda n, q=q: q ** n, 0.0) for q in (0.1, 0.3, 0.5, 0.7, 0.9)]
    seqs += [(f"inv{c}", lambda n, c=c: c / n, 0.0) for c in (0.5, 1, 2, 5)]
    seqs += [(f"invsq{c}", lambda n, c=c: c / n**2, 0.0) for c in (1, 3, 10)]
    seqs += [(f"const{c}", lambda n, c=c: c, c) for c in (-2.0, 0.0, 0.3, 7.0)]
    seqs += [
        ("shifted", lambda n: 2 + 1 / n, 2.0),
        ("damped", lambda n: 1 + (-1) ** n / n, 1.0),
        ("alt_geom", lambda n: (-0.5) ** n, 0.0),
        ("inv_sqrt", lambda n: 1 / math.sqrt(n), 0.0),
    ]
    return seqs


SUITE = _suite()


def test_suite_size():
    assert len(SUITE) == 20


@pytest.mark.parametrize("eps", [1e-2, 1e-4])
@pytest.mark.parametrize("s", [S1, S6], ids=["sum_abs", "example6"])
@pytest.mark.parametrize("name,f,limit", SUITE, ids=[n for n, _, _ in SUITE])
def test_convergent_implies_cauchy(name, f, limit, s, eps):
    seq = SequenceSpec(lambda n: (f(n),), 10_000, eps, name=name)
    if check_convergence(seq, limit, s, eps / 3).holds:
        assert check_cauchy(seq, s, eps).holds
