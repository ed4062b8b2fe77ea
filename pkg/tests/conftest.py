from pathlib import Path

import pytest
from hypothesis import strategies as st

from wfbench import Configuration, DistanceSpace, Instance, paper_instance

GOLDEN = Path(__file__).parent / "golden"

# rows of the published table, steps 0..6
PAPER_TABLE = {
    0: [0, 3, 9, 2, 10, 11, 5, 8, 11, 10],
    1: [16, 15, 9, 16, 10, 11, 14, 8, 11, 10],
    2: [18, 15, 13, 16, 14, 11, 14, 12, 11, 10],
    3: [18, 15, 13, 16, 14, 11, 17, 15, 12, 18],
    4: [18, 20, 18, 16, 14, 17, 17, 15, 18, 18],
    5: [18, 20, 18, 18, 16, 19, 17, 15, 18, 17],
    6: [20, 20, 21, 18, 22, 19, 17, 19, 18, 17],
}
PAPER_COLUMNS = ["abc", "abd", "abe", "acd", "ace", "ade", "bcd", "bce", "bde", "cde"]


@pytest.fixture
def paper():
    return paper_instance()


def labels(n):
    return [chr(ord("a") + i) for i in range(n)]


@st.composite
def spaces(draw, min_n=2, max_n=5, max_weight=10):
    n = draw(st.integers(min_n, max_n))
    pts = labels(n)
    matrix = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i][j] = matrix[j][i] = draw(st.integers(0, max_weight))
    return DistanceSpace(pts, matrix)


@st.composite
def instances(draw, max_n=5, max_k=3, max_t=6, min_n=1):
    space = draw(spaces(min_n=max(min_n, 1), max_n=max_n))
    pts = list(space.labels)
    k = draw(st.integers(1, min(max_k, len(pts))))
    initial = draw(st.permutations(pts))[:k]
    requests = draw(st.lists(st.sampled_from(pts), max_size=max_t))
    return Instance(space, k, Configuration(initial), tuple(requests))


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


class _Criterion:
    def __init__(self, name):
        self.name = name
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.detail if ok else f"{exc_type.__name__}: {exc}".splitlines()[0]
        ACCEPTANCE_RESULTS.append((self.name, ok, detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {self.name} {detail}")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
