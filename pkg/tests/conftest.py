import pathlib

import pytest

from syncreact import sls

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str):
    return sls.load(FIXTURES / name)


@pytest.fixture(scope="session")
def const_sys():
    return load_fixture("const.sls")


@pytest.fixture(scope="session")
def toggle_sys():
    return load_fixture("toggle.sls")


@pytest.fixture(scope="session")
def delay1_sys():
    return load_fixture("delay1.sls")


@pytest.fixture(scope="session")
def receiver_sys():
    return load_fixture("receiver.sls")


@pytest.fixture(scope="session")
def p1_sys():
    return load_fixture("p1.sls")


@pytest.fixture(scope="session")
def p2_sys():
    return load_fixture("p2_n4.sls")


@pytest.fixture(scope="session")
def union1_sys():
    return load_fixture("union1.sls")


@pytest.fixture(scope="session")
def union2_sys():
    return load_fixture("union2.sls")


@pytest.fixture(scope="session")
def union_sys():
    return load_fixture("union.sls")


@pytest.fixture(scope="session")
def disap_f_sys():
    return load_fixture("disap_f.sls")


@pytest.fixture(scope="session")
def disap_g_sys():
    return load_fixture("disap_g.sls")


ALL_SYSTEM_FIXTURES = [
    "const.sls",
    "toggle.sls",
    "delay1.sls",
    "receiver.sls",
    "p1.sls",
    "p2_n4.sls",
    "union1.sls",
    "union2.sls",
    "union.sls",
    "disap_f.sls",
    "disap_g.sls",
]
