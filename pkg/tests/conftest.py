import random
import sys

import pytest
from hypothesis import strategies as st

from latrepr.core import boolean_lattice, chain, direct_product, m3, n5
from latrepr.generate import random_closure_lattice, random_poset_lattice


@pytest.fixture
def ba4():
    return boolean_lattice(2)


@pytest.fixture
def grid6():
    return direct_product([chain(2), chain(3)])


@st.composite
def lattices(draw, max_n=9):
    """Random small lattices from both generators, seeded by hypothesis."""
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = random.Random(seed)
    if draw(st.booleans()):
        return random_closure_lattice(rng, max_n=max_n)
    return random_poset_lattice(rng, max_n=max_n)


NAMED = {"chain2": chain(2), "chain3": chain(3), "ba4": boolean_lattice(2), "m3": m3(), "n5": n5()}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
