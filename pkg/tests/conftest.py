import pytest

from dstar.algebra import builtin, validate_algebra


@pytest.fixture(scope="session")
def dual():
    return validate_algebra(builtin("dual"))


@pytest.fixture(scope="session")
def fields2():
    return validate_algebra(builtin("fields", 2))


@pytest.fixture(scope="session")
def hs2():
    return validate_algebra(builtin("truncated_hs", 2))


@pytest.fixture(scope="session")
def dd11():
    return validate_algebra(builtin("diff_difference", 1, 1))


@pytest.fixture(scope="session")
def all_builtins(dual, fields2, hs2, dd11):
    return {"dual": dual, "fields:2": fields2, "hs:2": hs2, "dd:1,1": dd11}
