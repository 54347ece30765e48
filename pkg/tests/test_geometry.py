import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from snormed import Kind, StructureHandle
from snormed.errors import DimensionMismatchError, TraceError
from snormed.geometry import (
    BallSpec,
    ball_contains,
    ball_value,
    degenerate,
    fig1a,
    fig1b,
    trace_boundary_2d,
)
from snormed.structures import euclid, make_example6_snorm, make_sum_abs_snorm

S1 = make_sum_abs_snorm(2)
S6 = make_example6_snorm(2)
SQRT2 = math.sqrt(2)


@pytest.fixture(scope="module")
def traced():
    return {
        "fig1a": (fig1a(), S1, trace_boundary_2d(S1, fig1a())),
        "fig1b": (fig1b(), S6, trace_boundary_2d(S6, fig1b())),
    }


def test_ball_values():
    assert ball_value(S1, fig1a(), (0, 0)) == pytest.approx(2 * SQRT2, rel=1e-15)
    assert ball_value(S6, fig1b(), (0, 0)) == pytest.approx(6 * SQRT2, rel=1e-15)
    all_equal = BallSpec((2, 2), (2, 2), (2, 2), 1.0)
    assert ball_value(S1, all_equal, (2, 2)) == 0.0


def test_ball_value_batches():
    ys = np.array([[0.0, 0.0], [3.0, 3.0]])
    assert np.array_equal(ball_value(S1, fig1a(), ys),
                          [ball_value(S1, fig1a(), ys[0]), ball_value(S1, fig1a(), ys[1])])


def test_membership():
    assert ball_contains(S1, fig1a(), (0, 0))
    assert ball_contains(S6, fig1b(), (0, 0))
    assert not ball_contains(S1, fig1a(), (3, 3))
    assert not ball_contains(S6, fig1b(), (2, 2))
    # (2,2) under example6: 9*sqrt2 + 6*sqrt2 + 3*sqrt2
    assert ball_value(S6, fig1b(), (2, 2)) == pytest.approx(18 * SQRT2, rel=1e-14)


def test_open_and_closed_differ_only_on_the_level():
    open_ball = degenerate(radius=3)
    closed = BallSpec(open_ball.center, open_ball.anchor1, open_ball.anchor2, 3.0, closed=True)
    assert not ball_contains(S1, open_ball, (1, 0))
    assert ball_contains(S1, closed, (1, 0))
    assert ball_contains(S1, open_ball, (0.5, 0)) and ball_contains(S1, closed, (0.5, 0))


def test_ball_spec_validation():
    with pytest.raises(ValueError):
        BallSpec((0, 0), (0, 0), (0, 0), 0.0)
    with pytest.raises(DimensionMismatchError):
        BallSpec((0, 0), (0,), (0, 0), 1.0)


@pytest.mark.parametrize("name", ["fig1a", "fig1b"])
def test_trace_lies_on_level(traced, name):
    b, s, boundary = traced[name]
    assert boundary.points.shape == (360, 2)
    assert np.max(np.abs(ball_value(s, b, boundary.points) - b.radius)) <= 1e-8


def test_degenerate_ball_is_unit_circle():
    boundary = trace_boundary_2d(S1, degenerate(3.0))
    assert np.allclose(np.hypot(*boundary.points.T), 1.0, atol=1e-9)


def test_trace_rejects_unbounded_directions():
    capped = StructureHandle(Kind.SNORM, 2, "capped",
                             lambda x, y, z: np.minimum(euclid(x) + euclid(y) + euclid(z), 1.0))
    with pytest.raises(TraceError) as info:
        trace_boundary_2d(capped, degenerate(3.0))
    assert info.value.angle is not None


def test_trace_needs_centroid_inside():
    with pytest.raises(TraceError):
        trace_boundary_2d(S1, BallSpec((1, 1), (0, 0), (-1, -1), 1.0))


def test_csv_and_svg(traced):
    _, _, boundary = traced["fig1a"]
    lines = boundary.to_csv().splitlines()
    assert lines[0] == "angle_rad,x,y" and len(lines) == 361
    svg = boundary.to_svg()
    assert svg.count("<path") == 1 and 'fill="none"' in svg and " Z" in svg
    assert boundary.closed_polyline().shape == (361, 2)


@given(st.sampled_from(["fig1a", "fig1b"]), st.floats(-4, 4), st.floats(-4, 4))
def test_polygon_interior_is_inside_ball(traced, name, px, py):
    b, s, boundary = traced[name]
    poly = [tuple(p) for p in boundary.points]
    if oracles.even_odd_inside(poly, (px, py)):
        assert ball_value(s, b, (px, py)) < b.radius + 1e-8
