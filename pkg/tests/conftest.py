"""Shared fixtures: small fields with their character groups, built once per session."""
import pytest

from jacobsthal.verify import group

SMALL_FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2)]


@pytest.fixture(scope="session")
def G7():
    return group(7, 1)


@pytest.fixture(scope="session")
def G9():
    return group(3, 2)


@pytest.fixture(scope="session")
def G13():
    return group(13, 1)


@pytest.fixture(scope="session", params=SMALL_FIELDS, ids=lambda pe: f"q{pe[0] ** pe[1]}")
def G(request):
    return group(*request.param)


def euler_phi(x: int, p: int) -> int:
    """Quadratic character of a prime field by Euler's criterion (oracle)."""
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
