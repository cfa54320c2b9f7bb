from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from saletan import builtin
from saletan.linalg import matrix
from saletan.suite import instances

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def int_matrices(rows, cols=None, elements=small_ints):
    cols = rows if cols is None else cols
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(matrix)


def random_matrix(rng: np.random.Generator, m: int, low=-3, high=3) -> np.ndarray:
    return matrix(rng.integers(low, high + 1, size=(m, m)).tolist())


def random_rational_vector(rng: np.random.Generator, m: int) -> list[Fraction]:
    return [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-5, 6, m), rng.integers(1, 4, m))]


@pytest.fixture(scope="session")
def su2():
    return builtin("su2")


@pytest.fixture(scope="session")
def heis():
    return builtin("heisenberg3")


@pytest.fixture(scope="session")
def suite():
    return instances()


# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
