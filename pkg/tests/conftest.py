import random

import pytest
from hypothesis import strategies as st

from svectcc.exactmat import Mat, Scalar
from svectcc.harness import InstanceGen, SampleGrid

small_ints = st.integers(-3, 3)
scalars = st.builds(Scalar, small_ints, small_ints)


def mats(rows=st.integers(0, 3), cols=st.integers(0, 3)):
    """Strategy for Gaussian-integer matrices, empty shapes included."""

    @st.composite
    def build(draw):
        p, q = draw(rows), draw(cols)
        return Mat.from_rows([[draw(scalars) for _ in range(q)] for _ in range(p)], (p, q))

    return build()


def M(*rows):
    return Mat.from_rows(rows)


@pytest.fixture
def gen():
    return InstanceGen(random.Random("tests"), SampleGrid(cap=2, extra_random=5), size_limit=16)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
