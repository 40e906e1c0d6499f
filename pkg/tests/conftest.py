import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from ultratrop.trees import DissimilarityMap


def random_dissimilarity(rng: random.Random, n: int, lo: int = 1, hi: int = 100) -> DissimilarityMap:
    return DissimilarityMap.from_vector([rng.randint(lo, hi) for _ in combinations(range(n), 2)], n)


def minimax_paths(d: DissimilarityMap) -> list[list[Fraction]]:
    """Brute-force subdominant ultrametric: minimize the largest edge over all paths."""
    n = d.n
    m = [[d[i, j] for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = max(m[i][k], m[k][j])
                if via < m[i][j]:
                    m[i][j] = via
    return m


@st.composite
def dissimilarities(draw, min_n=3, max_n=5, hi=30):
    n = draw(st.integers(min_n, max_n))
    vals = draw(st.lists(st.integers(1, hi), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return DissimilarityMap.from_vector(vals, n)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: (int(k.rstrip("abc")), k)):
        ok, detail = mod.RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
