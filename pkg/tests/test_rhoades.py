import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from snormed.errors import DomainError, ExcludedPairError, KindMismatchError, NoConvergenceError
from snormed.generators import smetric_from_snorm, snorm_from_norm
from snormed.rhoades import (
    MAPS,
    SearchConfig,
    SelfMap,
    check_prop7,
    check_prop8,
    condition_pass_rate,
    find_fixed_point,
    make_map,
    nr25_at,
    nr25_terms,
    ns25_at,
    ns25_terms,
    r25_at,
    residual,
    s25_at,
    s25_terms,
)
from snormed.structures import (
    make_euclidean_norm,
    make_example6_snorm,
    make_metric_from_norm,
    make_sum_abs_snorm,
)

SQRT2 = math.sqrt(2)
COSINE_FIXED_POINT = 0.7390851332151607  # oracles.iterate_to_fixed_point(math.cos, 0.5)


def structures(dim):
    n = make_euclidean_norm(dim)
    s = make_sum_abs_snorm(dim)
    return {"ns25": s, "s25": smetric_from_snorm(s), "nr25": n, "r25": make_metric_from_norm(n)}


AT = {"ns25": ns25_at, "s25": s25_at, "nr25": nr25_at, "r25": r25_at}


def test_ns25_half_in_the_plane():
    v = ns25_at(make_map("half"), make_sum_abs_snorm(2), (1, 0), (0, 1))
    assert v.lhs == pytest.approx(SQRT2, rel=1e-15)
    assert v.term_values[0] == pytest.approx(2 * SQRT2, rel=1e-15)
    assert v.holds and v.rhs >= v.term_values[0]


def test_nr25_half_on_the_line():
    v = nr25_at(make_map("half", 1), make_euclidean_norm(1), 1, 0)
    assert (v.lhs, v.term_values, v.rhs, v.holds) == (0.5, (1.0, 0.5, 0.0, 1.0, 0.5), 1.0, True)


def test_s25_half_on_the_line():
    s = make_sum_abs_snorm(1)
    assert s25_at(make_map("half", 1), smetric_from_snorm(s), 1, 0).holds


@pytest.mark.parametrize("cond", sorted(AT))
def test_antipodal_map_is_not_strict(cond):
    v = AT[cond](make_map("negation"), structures(1)[cond], 1, -1)
    assert v.holds is False
    assert v.lhs == v.rhs


def test_antipodal_ns25_matches_oracle():
    v = ns25_at(make_map("negation"), make_sum_abs_snorm(1), 1, -1)
    lhs, terms = oracles.ns25_scalar(lambda t: -t, 1.0, -1.0)
    assert (v.lhs, list(v.term_values)) == (lhs, terms) == (4.0, [4.0, 4.0, 4.0, 0.0, 0.0])


@pytest.mark.parametrize("cond", sorted(AT))
def test_identity_never_satisfies_strict_domination(cond):
    # Tx - Ty = x - y, so the first max-term always equals the left side
    v = AT[cond](make_map("identity"), structures(1)[cond], 0.25, -0.5)
    assert v.lhs == v.term_values[0] == v.rhs and not v.holds


def test_excluded_and_outside_pairs():
    T, s = make_map("half", 1), make_sum_abs_snorm(1)
    with pytest.raises(ExcludedPairError):
        ns25_at(T, s, 0.5, 0.5)
    with pytest.raises(DomainError):
        ns25_at(T, s, 0.5, 3.0)
    with pytest.raises(KindMismatchError):
        ns25_at(T, make_euclidean_norm(1), 0.5, 0.0)


def test_pass_rate_report():
    T = make_map("half")
    rep = condition_pass_rate(T, make_sum_abs_snorm(2), "ns25", T.sample_spec(10_000))
    assert rep["condition_pass_rate"] == 1.0 and rep["violations"] == 0 and rep["first_violation"] is None
    neg = make_map("identity")
    bad = condition_pass_rate(neg, make_sum_abs_snorm(1), "ns25", neg.sample_spec(500))
    assert bad["violations"] > 0 and bad["first_violation"] is not None


@pytest.mark.parametrize("map_id", sorted(MAPS))
def test_implications_hold(map_id):
    T = make_map(map_id)
    spec = T.sample_spec(10_000)
    p7 = check_prop7(T, make_sum_abs_snorm(T.dim), spec)
    p8 = check_prop8(T, make_euclidean_norm(T.dim), spec)
    assert p7.passed and p8.passed
    assert p7.details["violations"] == p8.details["violations"] == 0


def test_implication_vacuous_for_identity():
    T = make_map("identity")
    assert check_prop7(T, make_sum_abs_snorm(1), T.sample_spec(1000)).details["premise_rate"] == 0.0


@st.composite
def pairs(draw):
    dim = draw(st.integers(1, 3))
    c = st.floats(-1, 1, allow_nan=False)
    x = np.array(draw(st.lists(c, min_size=dim, max_size=dim)))
    y = np.array(draw(st.lists(c, min_size=dim, max_size=dim)))
    return dim, x, y


@given(pairs(), st.sampled_from(sorted(MAPS)))
def test_scale_coherence(pxy, map_id):
    dim, x, y = pxy
    T = make_map(map_id, dim)
    n = make_euclidean_norm(dim)
    lhs_s, terms_s = ns25_terms(T, snorm_from_norm(n), x, y)
    lhs_n, terms_n = nr25_terms(T, n, x, y)
    assert lhs_s == pytest.approx(2 * lhs_n, rel=1e-12, abs=1e-12)
    for a, b in zip(terms_s, terms_n):
        assert a == pytest.approx(2 * b, rel=1e-12, abs=1e-12)


@given(pairs(), st.sampled_from(sorted(MAPS)), st.sampled_from(["sum_abs", "example6"]))
def test_generated_metric_coherence(pxy, map_id, which):
    dim, x, y = pxy
    T = make_map(map_id, dim)
    s = (make_sum_abs_snorm if which == "sum_abs" else make_example6_snorm)(dim)
    lhs_s, terms_s = ns25_terms(T, s, x, y)
    lhs_m, terms_m = s25_terms(T, smetric_from_snorm(s), x, y)
    assert lhs_m == pytest.approx(lhs_s, rel=1e-12, abs=1e-12)
    for a, b in zip(terms_m, terms_s):
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_fixed_point_half():
    res = find_fixed_point(make_map("half"), make_sum_abs_snorm(2), tol=1e-6)
    assert res.point.tolist() == [0.0, 0.0] and res.residual == 0.0
    assert res.uniqueness.unique and res.uniqueness.basins == 1
    assert res.to_dict()["label"] == "demonstration"


def test_fixed_point_shifted_half():
    res = find_fixed_point(make_map("shifted_half"), make_sum_abs_snorm(1), tol=1e-6)
    assert res.point[0] == pytest.approx(0.5, abs=1e-6)


def test_fixed_point_cosine_against_iteration_oracle():
    assert oracles.iterate_to_fixed_point(math.cos, 0.5) == COSINE_FIXED_POINT
    res = find_fixed_point(make_map("cosine"), make_sum_abs_snorm(1), tol=1e-6)
    assert abs(res.point[0] - COSINE_FIXED_POINT) <= 1e-6
    assert res.uniqueness.basins == 1


def test_identity_has_many_basins():
    res = find_fixed_point(make_map("identity"), make_sum_abs_snorm(1), tol=1e-6)
    assert res.residual == 0.0 and not res.uniqueness.unique


@pytest.mark.parametrize("map_id", sorted(MAPS))
def test_returned_residual_is_within_tol(map_id):
    T = make_map(map_id)
    s = make_example6_snorm(T.dim)
    res = find_fixed_point(T, s, tol=1e-6)
    assert residual(T, s, res.point) <= 1e-6
    assert T.contains(res.point)


def test_no_convergence_carries_best_candidate():
    # a discontinuous flip of [0,1] into itself with no fixed point
    T = SelfMap(lambda x: np.where(x < 0.5, 1.0, 0.0), [0.0], [1.0], "flip")
    with pytest.raises(NoConvergenceError) as info:
        find_fixed_point(T, make_sum_abs_snorm(1), tol=1e-9, budget=5000)
    assert info.value.best is not None and info.value.residual > 1e-9


def test_search_is_deterministic():
    T, s = make_map("cosine"), make_sum_abs_snorm(1)
    a = find_fixed_point(T, s, config=SearchConfig(seed=3)).to_dict()
    b = find_fixed_point(T, s, config=SearchConfig(seed=3)).to_dict()
    assert a == b


def test_non_self_map_rejected():
    T = SelfMap(lambda x: x + 5, [0.0], [1.0], "escape")
    with pytest.raises(DomainError):
        find_fixed_point(T, make_sum_abs_snorm(1))
