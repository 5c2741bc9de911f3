# tests/test_parallel.py

import pytest

from homfin.algebra.resolutions import check_exactness
from homfin.utils.parallel import degreewise, set_default_workers


@pytest.fixture
def two_workers():
    set_default_workers(2)
    yield
    set_default_workers(1)


@pytest.mark.parametrize("workers", [1, 4])
def test_results_come_back_in_degree_order(workers):
    result = degreewise(lambda d: d * d, [3, 0, 2, 1], workers=workers)
    assert list(result) == [0, 1, 2, 3]
    assert list(result.values()) == [0, 1, 4, 9]


def test_nested_calls_run_inline():
    result = degreewise(lambda d: sum(degreewise(lambda e: e, range(d), workers=2).values()), range(4), workers=2)
    assert result == {0: 0, 1: 0, 2: 1, 3: 3}


def test_checks_agree_on_a_thread_pool(poly2_resolution, two_workers):
    report = check_exactness(poly2_resolution)
    assert report.ok
