import pytest

from tkk.algebra import matrix_algebra, special_linear
from tkk.jordan import triple_from_associative, universal_tkk
from tkk.specio import builtin_base
from tkk.uce import build_uce

# bases exercised by the rank-2 and rank-4 verification suites
SL2_BASES = ("scalar", "dual", "double", "grassmann2", "mat2", "free2d2")
SL4_BASES = ("scalar", "double", "dual", "grassmann2")


@pytest.fixture(scope="session")
def base_of():
    return builtin_base


@pytest.fixture(scope="session")
def sl2_uce_of():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_uce(special_linear(builtin_base(name), 2))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def sl4_uce_of():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_uce(special_linear(builtin_base(name), 4))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def tkk_of():
    """Universal graded algebra of the special triple of a builtin base."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = universal_tkk(
                triple_from_associative(builtin_base(name)))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def tkk_m2_of():
    """Universal graded algebra of the 2x2-matrix triple over a builtin base."""
    cache = {}

    def get(name):
        if name not in cache:
            t = triple_from_associative(matrix_algebra(builtin_base(name), 2))
            cache[name] = universal_tkk(t)
        return cache[name]

    return get
