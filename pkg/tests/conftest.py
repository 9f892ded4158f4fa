import pytest

from multivis.fixtures import build_b1


@pytest.fixture
def b1():
    return build_b1()


@pytest.fixture
def fixed_clock():
    return lambda: "2026-01-01T00:00:00"
