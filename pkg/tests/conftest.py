import json

import pytest

from curvecount import load_fixture, load_surface

SURFACES = ["s11", "s12", "s12_hexagon", "sphere3", "genus2"]


def surface(name: str):
    return load_surface(load_fixture(f"{name}.json"))


def fixture_doc(name: str) -> dict:
    return json.loads(load_fixture(f"{name}.json"))


@pytest.fixture(scope="session")
def s11():
    return surface("s11")


@pytest.fixture(scope="session")
def s12():
    return surface("s12")


@pytest.fixture(scope="session")
def sphere3():
    return surface("sphere3")


@pytest.fixture(scope="session")
def genus2():
    return surface("genus2")


@pytest.fixture(scope="session", params=SURFACES)
def any_surface(request):
    return surface(request.param)
