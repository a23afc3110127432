import pytest

from kvquad import canonical_solution


@pytest.fixture(scope="session")
def sol6():
    return canonical_solution(6)


@pytest.fixture(scope="session")
def sol8():
    return canonical_solution(8)
