import random

import pytest

from compact_merkle import build_tree


def random_instance(rng, max_leaves=256, max_k=None):
    n = rng.randint(1, max_leaves)
    k = rng.randint(1, min(n, max_k or n))
    elements = [rng.randbytes(rng.randint(0, 12)) for _ in range(n)]
    subset = sorted(rng.sample(range(n), k))
    return elements, subset


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def fig5_elements():
    return [f"T{i}".encode() for i in range(16)]


@pytest.fixture(scope="session")
def fig5_tree(fig5_elements):
    return build_tree(fig5_elements)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)
