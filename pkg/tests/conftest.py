"""Shared group fixtures.

Session-scoped: groups are immutable, and reusing them lets the resolution
cache in modcoh.resolutions amortize work across test modules.
"""

import pytest

from modcoh import catalog


@pytest.fixture(scope="session")
def Z2():
    return catalog.get_group("Z2")


@pytest.fixture(scope="session")
def Z3():
    return catalog.get_group("Z3")


@pytest.fixture(scope="session")
def Z4():
    return catalog.get_group("Z4")


@pytest.fixture(scope="session")
def V4():
    return catalog.get_group("Z2xZ2")


@pytest.fixture(scope="session")
def D8():
    return catalog.get_group("D8")


@pytest.fixture(scope="session")
def Q8():
    return catalog.get_group("Q8")


@pytest.fixture(scope="session")
def A4():
    return catalog.get_group("A4")


@pytest.fixture(scope="session")
def S4():
    return catalog.get_group("S4")
