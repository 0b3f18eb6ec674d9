import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def gadget_drawings():
    from kplane.enumeration import enumerate_drawings
    from kplane.graphs import gen_gadget_x

    return enumerate_drawings(gen_gadget_x(), 2)


@pytest.fixture(scope="session")
def gadget_drawing(gadget_drawings):
    return gadget_drawings[0]


@pytest.fixture(scope="session")
def g2_drawing(gadget_drawing):
    from kplane.constructions import canonical_gk_drawing

    return canonical_gk_drawing(2, gadget_drawing)


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
