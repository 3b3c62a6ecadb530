import numpy as np
import pytest

from hartnet import BarrierSpec, BranchSpec, NetworkSpec

ACCEPTANCE_LINES = []


def random_instance(rng, n_max=12, free_prob=0.2):
    """One draw from the randomized validation ensemble."""
    E = rng.uniform(0.2, 5.0)
    N = int(rng.integers(1, n_max + 1))
    branches = []
    for _ in range(N):
        if rng.random() < free_prob:
            branches.append(BranchSpec())
            continue
        while True:
            V = rng.uniform(0.1, 20.0)
            if abs(V - E) > 1e-3:
                break
        branches.append(BranchSpec(BarrierSpec(V, rng.uniform(0, 200), rng.uniform(0, 10))))
    return NetworkSpec(tuple(branches)), E


def ensemble(size=1000, seed=20240611):
    rng = np.random.default_rng(seed)
    return [random_instance(rng) for _ in range(size)]


@pytest.fixture(scope="session")
def random_ensemble():
    return ensemble()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
