import pytest

import util


@pytest.fixture
def m1():
    return util.m1()


@pytest.fixture
def id2():
    return util.id2()


@pytest.fixture
def and_or():
    return util.and_or()


@pytest.fixture
def const2():
    return util.const2()


@pytest.fixture
def sel1():
    return util.sel1()
