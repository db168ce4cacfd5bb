import pytest

from siegelfactors.cache import build_cache, cache_path
from siegelfactors.siegel.eigen import eigenforms
from siegelfactors.siegel.ring import cusp_subspace, igusa_generators

WINDOW = 61  # det bound large enough for T(9) at the index [1,1,1]


@pytest.fixture(scope="session")
def window():
    return WINDOW


@pytest.fixture(scope="session")
def generators():
    return igusa_generators(WINDOW)


@pytest.fixture(scope="session")
def chi10():
    (F,) = cusp_subspace(10, WINDOW)
    return F


@pytest.fixture(scope="session")
def chi12():
    (F,) = cusp_subspace(12, WINDOW)
    return F


@pytest.fixture(scope="session")
def records():
    cache = {}

    def get(weight):
        if weight not in cache:
            cache[weight] = eigenforms(weight, det_bound=WINDOW)
        return cache[weight]

    return get


@pytest.fixture(scope="session")
def cache_directory(tmp_path_factory):
    directory = tmp_path_factory.mktemp("caches")
    for weight, bound in ((4, 10), (10, WINDOW), (12, WINDOW), (20, WINDOW)):
        build_cache(weight, bound).write(cache_path(weight, bound, directory))
    return directory
