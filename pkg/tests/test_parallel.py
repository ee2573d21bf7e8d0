"""
This file tests the order fan-out helper.
"""

import math

import pytest

from pleijel.parallel import map_orders, run_task


@pytest.mark.parametrize("num_workers", [1, 2])
def test_results_keep_input_order(num_workers):
    args = [(i, 2) for i in range(20)]
    assert map_orders(pow, args, num_workers=num_workers) == [i * i for i in range(20)]


def test_progress_bar():
    assert map_orders(pow, [(2, 3)], desc="orders") == [8]


@pytest.mark.parametrize("num_workers", [1, 2])
def test_first_failure_is_raised(num_workers):
    args = [(4.0,), (-1.0,), (9.0,)]
    with pytest.raises(ValueError):
        map_orders(math.sqrt, args, num_workers=num_workers)


def test_run_task():
    assert run_task(3, pow, (2, 5)) == (3, 32, None)
    index, value, exc = run_task(1, math.sqrt, (-1.0,))
    assert (index, value) == (1, None)
    assert isinstance(exc, ValueError)
