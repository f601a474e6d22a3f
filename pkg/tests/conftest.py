import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ckdual.intlinalg import IntMatrix
from ckdual.ktheory import check_admissible

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ALL_ONES_2 = [[1, 1], [1, 1]]
GOLDEN_MEAN = [[1, 1], [1, 0]]
ALL_ONES_3 = [[1] * 3 for _ in range(3)]
EXAMPLE3 = [
    [1, 1, 1, 1, 1],
    [0, 1, 1, 1, 0],
    [1, 1, 1, 1, 1],
    [0, 1, 1, 1, 0],
    [1, 1, 1, 1, 1],
]
EXAMPLE3_HAT = [
    [1, 1, 1, 1, 1],
    [0, 1, 1, 1, 0],
    [0, 0, 0, 0, 0],
    [0, 1, 1, 1, 0],
    [0, 0, 0, 0, 0],
]


def all_ones(n):
    return [[1] * n for _ in range(n)]


def admissible_from(rng: random.Random, n: int, density: float):
    """Random 0/1 matrix made irreducible by a Hamiltonian cycle and kept off permutations by one extra edge."""
    rows = [[int(rng.random() < density) for _ in range(n)] for _ in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    for a, b in zip(order, order[1:] + order[:1]):
        rows[a][b] = 1
    if sum(map(sum, rows)) == n:
        rows[order[0]][order[0]] = 1
    return check_admissible(rows)


@st.composite
def admissible_matrices(draw, max_n=7, min_n=2):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from([0.15, 0.35, 0.6, 0.85]))
    return admissible_from(random.Random(seed), n, density)


@st.composite
def int_matrices(draw, max_dim=6, bound=9):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=r * c, max_size=r * c))
    return IntMatrix(r, c, tuple(entries))


# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, tuple[str, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, secs, label = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  ({secs:6.2f} s)  {label}")


@pytest.fixture
def rng():
    return random.Random(20240601)
