import pytest

from deligne_kit.artin import make_truncated_polynomial, parse_artin
from deligne_kit.fields import GF, QQ
from deligne_kit.library import acyclic, abelian, heisenberg, obstruction, random_dgla

ACCEPTANCE_LINES = []


@pytest.fixture
def F5():
    return GF(5)


@pytest.fixture
def F7():
    return GF(7)


@pytest.fixture
def Q():
    return QQ


@pytest.fixture
def dual5():
    return make_truncated_polynomial(GF(5), ["e"], 2)


@pytest.fixture
def t3_5():
    return make_truncated_polynomial(GF(5), ["t"], 3)


@pytest.fixture
def xy5():
    return parse_artin("F5[x,y]/m^2")


@pytest.fixture
def ob5():
    return obstruction(GF(5))


@pytest.fixture
def ac5():
    return acyclic(GF(5))


@pytest.fixture
def ab5():
    return abelian(GF(5))


@pytest.fixture
def heis5():
    return heisenberg(GF(5))


@pytest.fixture
def rnd5():
    return random_dgla(GF(5), 0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
