import random

import pytest
from hypothesis import settings

from arboreal.automorphism import random_automorphism
from arboreal.tree_index import TreeShape

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE = []


def record_acceptance(outcome):
    _ACCEPTANCE.append(outcome)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def sampler(rng):
    def draw(d, n, count):
        return [random_automorphism(TreeShape(d, n), rng) for _ in range(count)]
    return draw


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for out in _ACCEPTANCE:
        terminalreporter.write_line(out.headline)
        for line in out.lines:
            terminalreporter.write_line(f"    {line}")
