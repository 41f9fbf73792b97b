import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from extalg import ExtensionAlgebra, ExteriorElement, RatMatrix, monomial_basis

FIXTURES = Path(__file__).parent / "fixtures"

# Filled by tests/test_acceptance.py, printed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def session_2_4():
    with open(FIXTURES / "session_2_4.json") as fh:
        data = json.load(fh)
    return {
        "killing": RatMatrix([[Fraction(v) for v in row] for row in data["o15_killing_2_4"]]),
        "ad_x": RatMatrix([[Fraction(v) for v in row] for row in data["o18_ad_e01_plus_e23"]]),
        "block_table": "\n".join(data["o21_block_table"]),
    }


@pytest.fixture(scope="session")
def alg24():
    return ExtensionAlgebra(2, 4)


@pytest.fixture(scope="session")
def alg39():
    return ExtensionAlgebra(3, 9)


@pytest.fixture(scope="session")
def killing24(alg24):
    return alg24.killing_matrix()


def small_fraction():
    return st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))


@st.composite
def rat_matrices(draw, rows, cols=None, elements=None):
    cols = rows if cols is None else cols
    elements = small_fraction() if elements is None else elements
    return RatMatrix([[draw(elements) for _ in range(cols)] for _ in range(rows)])


@st.composite
def exterior_elements(draw, n, degree, max_terms=4):
    keys = monomial_basis(degree, n)
    chosen = draw(st.lists(st.sampled_from(keys), min_size=0, max_size=min(max_terms, len(keys))))
    return ExteriorElement(n, degree, {k: draw(small_fraction()) for k in chosen})


def seeded_rng(*parts) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))
