import numpy as np
import pytest
from hypothesis import given

from snormed import Kind, SampleSpec
from snormed.axioms import check_gnorm, check_norm, check_smetric
from snormed.catalog import FAMILIES, resolve
from snormed.errors import KindMismatchError, NotAGNormError
from snormed.generators import (
    norm_from_snorm,
    smetric_from_metric,
    smetric_from_snorm,
    snorm_from_gnorm,
    snorm_from_norm,
)
from snormed.structures import (
    make_euclidean_norm,
    make_example6_snorm,
    make_metric_from_norm,
    make_sum_abs_snorm,
)
from strategies import dims, points

SNORM_FAMILIES = [f for f in FAMILIES if f.startswith("snorm.")]


def test_snorm_from_norm_values():
    s1 = snorm_from_norm(make_euclidean_norm(1))
    assert s1(1, -2, 3) == 6.0
    assert s1(0, 0, 0) == 0.0
    assert snorm_from_norm(make_euclidean_norm(2))((3, 4), (0, 0), (0, 0)) == 5.0


def test_norm_from_snorm_values():
    assert norm_from_snorm(make_sum_abs_snorm(1))(3) == 6.0
    assert norm_from_snorm(make_sum_abs_snorm(1))(0) == 0.0
    assert norm_from_snorm(make_example6_snorm(1))(1) == 10.0


def test_smetric_from_metric_values():
    m = smetric_from_metric(make_metric_from_norm(make_euclidean_norm(1)))
    assert m(1, 2, 3) == 4.0
    assert m(7, 7, 7) == 0.0


def test_generated_smetric_vanishes_on_diagonal():
    for s in (make_sum_abs_snorm(2), make_example6_snorm(2)):
        assert smetric_from_snorm(s)((1.5, -2), (1.5, -2), (1.5, -2)) == 0.0


def test_provenance_records_each_step():
    h = norm_from_snorm(snorm_from_norm(make_euclidean_norm(2)))
    assert h.kind is Kind.NORM
    assert h.provenance == ("euclidean", "snorm_from_norm", "norm_from_snorm")


def test_kind_checked():
    with pytest.raises(KindMismatchError):
        smetric_from_snorm(make_euclidean_norm(1))
    with pytest.raises(KindMismatchError):
        snorm_from_norm(make_sum_abs_snorm(1))


def test_snorm_from_gnorm_accepts_additive_form(rng):
    g = snorm_from_norm(make_euclidean_norm(2)).as_kind(Kind.GNORM)
    s = snorm_from_gnorm(g, SampleSpec.cube(2, count=2000))
    assert s.kind is Kind.SNORM
    assert s((0, 0), (0, 0), (0, 0)) == 0.0
    x, y, z = rng.uniform(-10, 10, (3, 200, 2))
    assert np.array_equal(s(x, y, z), g(x, y, z))


def test_snorm_from_gnorm_rejects_example6():
    g = make_example6_snorm(1).as_kind(Kind.GNORM)
    with pytest.raises(NotAGNormError) as info:
        snorm_from_gnorm(g, SampleSpec.cube(1, count=2000))
    report = info.value.report
    assert report.property_id == "NG5"
    assert [w.tolist() for w in report.witness] == [[1.0], [5.0], [0.0]]


@pytest.mark.parametrize("family", SNORM_FAMILIES)
@pytest.mark.parametrize("dim", [1, 2])
def test_generated_structures_pass_their_axioms(family, dim):
    s = resolve(f"{family}.d{dim}")
    spec = SampleSpec.cube(dim, count=3000)
    assert all(r.passed for r in check_smetric(smetric_from_snorm(s), spec))
    assert all(r.passed for r in check_norm(norm_from_snorm(s), spec))


def test_additive_snorm_is_a_gnorm():
    g = resolve("gnorm.additive.d2")
    assert all(r.passed for r in check_gnorm(g, SampleSpec.cube(2, count=3000)))


@given(dims.flatmap(lambda d: points(d, 1)))
def test_round_trip_doubles_the_norm(x):
    (x,) = x
    n = make_euclidean_norm(len(x))
    back = norm_from_snorm(snorm_from_norm(n))
    assert back(x) == pytest.approx(2 * n(x), rel=1e-12, abs=1e-12)
