import json

import pytest

from skeinlab.backends import load_category


def _data(name):
    from skeinlab import data_path

    return data_path(name)


@pytest.fixture(scope="session")
def z2():
    return load_category(_data("z2"))


@pytest.fixture(scope="session")
def sweedler():
    return load_category(_data("sweedler"))


@pytest.fixture(scope="session")
def trivial():
    return load_category(_data("trivial"))


@pytest.fixture(scope="session")
def z4():
    return load_category(_data("z4"))


@pytest.fixture(scope="session")
def vec_z2():
    return load_category(_data("vec_z2"))


@pytest.fixture(scope="session")
def fib():
    return load_category(_data("fib"))


@pytest.fixture(scope="session")
def sweedler_dict():
    with open(_data("sweedler")) as fh:
        return json.load(fh)
