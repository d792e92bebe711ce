import pytest

from latdist import BCC, CUBIC, FCC, compute_voronoi_cell, sample_rotations


@pytest.fixture(scope="session")
def cells():
    return {
        "cubic": compute_voronoi_cell(CUBIC),
        "bcc": compute_voronoi_cell(BCC),
        "fcc": compute_voronoi_cell(FCC),
    }


@pytest.fixture(scope="session")
def grid3():
    return sample_rotations(3)


@pytest.fixture(scope="session")
def grid1():
    return sample_rotations(1)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
