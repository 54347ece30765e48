from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False, width=64)


def points(dim, count=1):
    return st.tuples(*[arrays(float, dim, elements=coord) for _ in range(count)])


dims = st.integers(1, 3)
