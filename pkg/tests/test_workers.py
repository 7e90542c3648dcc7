import pytest

from opk.workers import run_cells


def square(x):
    return x * x


def test_serial_keeps_order():
    assert run_cells(square, [3, 1, 2]) == [9, 1, 4]


def test_pool_keeps_order():
    assert run_cells(square, list(range(6)), jobs=2) == [x * x for x in range(6)]


def test_empty():
    assert run_cells(square, [], jobs=4) == []


def test_jobs_validated():
    with pytest.raises(ValueError):
        run_cells(square, [1], jobs=0)
