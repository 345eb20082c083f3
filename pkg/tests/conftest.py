import pytest

from quandlehom.quandles import make_alexander, make_dihedral, make_s3_conjugation, make_trivial


@pytest.fixture(scope="session")
def R3():
    return make_dihedral(3)


@pytest.fixture(scope="session")
def R4():
    return make_dihedral(4)


@pytest.fixture(scope="session")
def T3():
    return make_trivial(3)


@pytest.fixture(scope="session")
def S4():
    return make_alexander(2, "T^2+T+1")


@pytest.fixture(scope="session")
def QS5():
    return make_s3_conjugation()


SMALL_QUANDLES = {
    "T1": lambda: make_trivial(1),
    "T2": lambda: make_trivial(2),
    "T3": lambda: make_trivial(3),
    "R3": lambda: make_dihedral(3),
    "R4": lambda: make_dihedral(4),
    "R5": lambda: make_dihedral(5),
    "S4": lambda: make_alexander(2, "T^2+T+1"),
    "QS5": make_s3_conjugation,
}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
