import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from seqrel import instances  # noqa: E402
from seqrel.model import make_instance  # noqa: E402

BETAS = (0.1, 0.3, 0.5, 0.7, 0.9)

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def random_corpus(count, seed=2024, max_types=6, max_categories=6, max_products=2):
    """Seeded random instances with N, H <= 6 and L_j <= max_products."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_types + 1))
        h = int(rng.integers(1, max_categories + 1))
        q = rng.integers(0, 2, size=(n, h))
        p = rng.random(n) + 0.05
        p /= p.sum()
        L = rng.integers(1, max_products + 1, size=h)
        out.append(make_instance(q, p, L, beta=0.5))
    return out


@pytest.fixture
def identity2():
    return instances.identity(2)


@pytest.fixture
def triangular4():
    return instances.triangular(4)


@pytest.fixture
def fig1():
    return instances.fig1()


@pytest.fixture
def diag3():
    return instances.identity(3, prior=[0.5, 0.3, 0.2], products=[2, 1, 3])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")
