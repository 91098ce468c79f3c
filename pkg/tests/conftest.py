import numpy as np
import pytest
from hypothesis import settings, strategies as st

from seqeffect.instances import boolean_instance, fuzzy_instance, quantum_instance
from seqeffect.verify import example_2_3_matrices, gen_random_element, gen_random_partition

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SEAS = [boolean_instance(4), fuzzy_instance(3), quantum_instance(3)]

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def elements_of(sea):
    return seeds.map(lambda s: gen_random_element(sea, np.random.default_rng(s)))


def partitions_of(sea, sizes=st.integers(1, 3)):
    return st.tuples(seeds, sizes).map(
        lambda t: gen_random_partition(sea, min(t[1], sea.n), np.random.default_rng(t[0]))
    )


@pytest.fixture(params=SEAS, ids=lambda s: s.kind)
def sea(request):
    return request.param


@pytest.fixture
def ex23():
    """Projections P1, P2 (coordinate axes) and Q1, Q2 (diagonals) as effects on C^2."""
    Q = quantum_instance(2)
    m = example_2_3_matrices()
    return Q, {k: Q.element(v) for k, v in m.items()}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
