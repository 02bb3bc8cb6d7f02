from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dstoch import reference
from dstoch.partitions import SetPartition
from dstoch.ratmat import Matrix, random_doubly_stochastic


def catalog_matrix(n, label):
    return Matrix(reference.CATALOGS[n][label])


@pytest.fixture
def d3():
    return {lab: Matrix(g) for lab, g in reference.D3_CATALOG.items()}


@pytest.fixture
def d4():
    return {lab: Matrix(g) for lab, g in reference.D4_CATALOG.items()}


def naive_product(a, b):
    # textbook triple loop, kept separate from ratmat.multiply
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((Fraction(a[i][t]) * Fraction(b[t][j]) for t in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


@st.composite
def set_partitions(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    rgs, top = [], -1
    for _ in range(n):
        label = draw(st.integers(0, top + 1))
        top = max(top, label)
        rgs.append(label)
    return SetPartition.from_rgs(rgs)


@st.composite
def partition_pairs(draw, max_n=7):
    p = draw(set_partitions(max_n=max_n))
    q = draw(set_partitions(min_n=p.n, max_n=p.n))
    return p, q


@st.composite
def doubly_stochastic(draw, n=None, max_n=5):
    size = n or draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 10**6))
    terms = draw(st.integers(1, 4))
    return random_doubly_stochastic(size, seed, terms)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
