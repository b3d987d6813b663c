from __future__ import annotations

import random

import pytest

from hypercomm.exact_matrix import Mat, elementary
from hypercomm.field import make_field


@pytest.fixture(scope="session")
def gf5():
    return make_field("gf 5")


@pytest.fixture(scope="session")
def gf4():
    return make_field("gf 2 2")


@pytest.fixture(scope="session")
def gf9():
    return make_field("gf 3 2")


@pytest.fixture(scope="session")
def qq():
    return make_field("q")


def E(F, n, i, j):
    return elementary(F, n, i, j)


def trace_zero(F, n, rng):
    flat = [F.random_element(rng) for _ in range(n * n - 1)]
    flat.append(F.neg(F.sum(flat[k * n + k] for k in range(n - 1))))
    return Mat.from_flat(F, n, flat)


def nonzero(F, n, rng, trace_free=False):
    while True:
        M = trace_zero(F, n, rng) if trace_free else Mat.random(F, n, rng)
        if not M.is_zero():
            return M


def rng_for(*parts):
    return random.Random(":".join(map(str, parts)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
