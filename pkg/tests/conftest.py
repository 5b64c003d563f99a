import pytest

from nttkit import DEFAULT_PRIME, FieldParams


@pytest.fixture(scope="session")
def params17():
    return FieldParams(17, 3)


@pytest.fixture(scope="session")
def params_big():
    return FieldParams(DEFAULT_PRIME, 5)
