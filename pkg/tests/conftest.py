import sys

import pytest

from forklat import CoveringSquare, Lattice, build, grid, insert_fork


@pytest.fixture
def square_2x2():
    return grid(2, 2), CoveringSquare(0, 1, 2, 3)


@pytest.fixture
def s7(square_2x2):
    L, S = square_2x2
    return insert_fork(L, S)


@pytest.fixture
def no_extension_lattice():
    """Nine-element lattice whose covering square (3, 7, 6, 8) carries a
    protrusion at the head of its right track (element 6 covers three base
    elements): the right coatom congruence of that square has no extension
    through the fork insertion.  Frozen as the minimal witness for the
    flagged congruence-extension behaviour."""
    covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5),
              (3, 7), (3, 6), (4, 6), (5, 6), (7, 8), (6, 8)]
    left = [(1, 2), (3, 4), (4, 5), (7, 6), (6,), (6,), (8,), (8,), ()]
    return build(9, covers, left_order=left), CoveringSquare(3, 7, 6, 8)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = next((m for name, m in sys.modules.items()
                if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
