"""
This file tests the search for annuli with a double eigenvalue.
"""

import pytest

from pleijel import cross_zero, degeneracy_scan


def test_degenerate_annulus():
    found = degeneracy_scan((3, 1), (0, 2), 0.01, 0.1)
    assert found is not None
    assert found.r0 == pytest.approx(0.044951, abs=1e-4)
    assert found.lam == pytest.approx(40.7064, abs=1e-2)
    assert found.a == pytest.approx(cross_zero(0, 2, found.r0).a, rel=1e-8)
    assert found.gap <= 1e-8 * found.a


def test_degeneracy_is_symmetric():
    forward = degeneracy_scan((3, 1), (0, 2), 0.01, 0.1)
    backward = degeneracy_scan((0, 2), (3, 1), 0.01, 0.1)
    assert forward.r0 == backward.r0
    assert forward.lam == backward.lam
    assert backward.pair_a == (0.0, 2)


def test_no_sign_change():
    # a_{0,1}(r) < a_{0,2}(r) for every r
    assert degeneracy_scan((0, 1), (0, 2), 0.1, 0.5) is None


def test_invalid_scans():
    with pytest.raises(ValueError):
        degeneracy_scan((3, 1), (3, 1), 0.01, 0.1)

    with pytest.raises(ValueError):
        degeneracy_scan((3, 1), (0, 2), 0.1, 0.01)

    with pytest.raises(ValueError):
        degeneracy_scan((3, 0), (0, 2), 0.01, 0.1)

    with pytest.raises(ValueError):
        degeneracy_scan((3, 1), (0, 2), 0.0, 0.1)
