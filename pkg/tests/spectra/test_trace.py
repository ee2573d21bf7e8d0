"""
This file tests ratio traces, the Weyl law and near-degeneracy reports.
"""

import math

import pytest

from pleijel import (
    Annulus,
    BoundaryCondition,
    Disk,
    Orthotope,
    Sector,
    counting_function,
    near_degeneracies,
    ratio_trace,
    weyl_count,
)

GAMMA_2 = 0.6916602


def check_trace_invariants(trace):
    rows = trace.rows
    assert all(b.n > a.n for a, b in zip(rows, rows[1:]))
    assert all(b.lam >= a.lam for a, b in zip(rows, rows[1:]))
    assert all(b.running_sup >= a.running_sup for a, b in zip(rows, rows[1:]))
    assert all(row.ratio <= row.running_sup for row in rows)
    assert all(row.ratio == pytest.approx(row.mu / row.n) for row in rows)


def test_disk_trace_start():
    trace = ratio_trace(Disk(), 100)
    check_trace_invariants(trace)
    first, second, third = trace.rows[:3]
    assert (first.n, first.mu, first.ratio, first.running_sup) == (1, 1, 1.0, 1.0)
    assert (second.n, second.mu) == (2, 2)
    assert (third.n, third.mu) == (3, 2)
    assert second.lam == third.lam
    assert [row.n for row in trace.rows] == list(range(1, len(trace.rows) + 1))

    # Courant-sharp rows cannot estimate the constant
    with pytest.raises(ValueError):
        trace.estimate()


def test_window_keeps_indices():
    full = ratio_trace(Disk(), 400)
    window = ratio_trace(Disk(), 400, lambda_min=200)
    assert window.rows[0].lam >= 200
    assert window.rows[0].n > 1
    assert window.rows == [
        row.model_copy(update={"running_sup": window.rows[i].running_sup})
        for i, row in enumerate(r for r in full.rows if r.lam >= 200)
    ]
    check_trace_invariants(window)

    estimate = window.estimate()
    assert estimate.method == "empirical_trace"
    assert estimate.value == window.running_sup
    assert window.argmax_row().ratio == window.running_sup

    with pytest.raises(ValueError):
        ratio_trace(Disk(), 400, lambda_min=401)


def test_neumann_trace():
    trace = ratio_trace(Disk(), 50, BoundaryCondition.NEUMANN)
    assert trace.rows[0].lam == 0
    assert trace.rows[0].mu == 1
    assert trace.rows[1].mu == 2
    assert trace.bc == BoundaryCondition.NEUMANN


def test_orthotope_regime_label():
    square = ratio_trace(Orthotope(lengths=[1, 1]), 200)
    assert square.merges > 0
    assert not square.prop_regime

    box = ratio_trace(Orthotope(lengths=[1, 2**0.25]), 1000)
    assert box.merges == 0
    assert box.prop_regime
    assert not ratio_trace(Disk(), 100).prop_regime


@pytest.mark.slow
@pytest.mark.timeout(120)
def test_disk_trace_converges():
    lambda_max = 1e5
    trace = ratio_trace(Disk(), lambda_max, lambda_min=0.9 * lambda_max)
    check_trace_invariants(trace)
    assert 0.43 <= trace.running_sup <= 0.4613019 + 0.01
    assert all(row.ratio <= GAMMA_2 + 1e-6 for row in trace.rows)


@pytest.mark.slow
@pytest.mark.timeout(60)
def test_rectangle_trace_converges():
    lengths = [1, 2**0.25]
    lambda_max = 1e5
    trace = ratio_trace(Orthotope(lengths=lengths), lambda_max, lambda_min=0.9 * lambda_max)
    check_trace_invariants(trace)
    assert 0.60 <= trace.running_sup <= 2 / math.pi + 0.01

    # The maximizing lattice point lies along m_i proportional to a_i
    m1, m2 = trace.argmax_row().mode
    assert abs((m1 / lengths[0]) / (m2 / lengths[1]) - 1) <= 0.1


def test_weyl_leading_term():
    assert weyl_count(Disk(), 1000) == pytest.approx(250)
    assert weyl_count(Annulus(r=0.5), 1000) == pytest.approx(187.5)
    assert weyl_count(Orthotope(lengths=[1, 1]), 100) == pytest.approx(100 / (4 * math.pi))
    assert weyl_count(Sector(alpha=1.0), 100) == pytest.approx(100 / (8 * math.pi))
    # Unit cube: (2 pi)^-3 (4 pi / 3) lam^(3/2)
    assert weyl_count(Orthotope(lengths=[1, 1, 1]), 100) == pytest.approx(
        1000 / (6 * math.pi**2)
    )


def test_weyl_boundary_term():
    lam = 1000
    assert weyl_count(Disk(), lam, boundary_term=True) == pytest.approx(
        250 - math.sqrt(lam) / 2
    )
    assert weyl_count(Disk(), lam, boundary_term=True, bc="neumann") == pytest.approx(
        250 + math.sqrt(lam) / 2
    )

    with pytest.raises(ValueError):
        weyl_count(Disk(), 0)


@pytest.mark.slow
@pytest.mark.timeout(120)
@pytest.mark.parametrize("domain", [Disk(), Annulus(r=0.5)])
def test_weyl_consistency(domain):
    lam = 1e4
    count = counting_function(domain, lam)
    assert abs(count / weyl_count(domain, lam) - 1) <= 0.05
    assert abs(count / weyl_count(domain, lam, boundary_term=True) - 1) <= 0.02


def test_degenerate_annulus_report():
    report = near_degeneracies(Annulus(r=0.044951), 50, 1e-3)
    pairs = {(p.mode_a, p.mode_b) for p in report.pairs}
    assert ((0, 2), (3, 1)) in pairs or ((3, 1), (0, 2)) in pairs
    pair = [p for p in report.pairs if {p.mode_a, p.mode_b} == {(0, 2), (3, 1)}][0]
    assert pair.lam_a == pytest.approx(40.7064, abs=1e-2)
    assert all(p.gap <= 1e-3 for p in report.pairs)


def test_quarter_disk_is_simple():
    report = near_degeneracies(Sector(alpha=math.pi / 2), 200, 1e-9)
    assert report.pairs == []


def test_square_is_degenerate():
    report = near_degeneracies(Orthotope(lengths=[1, 1]), 50, 1e-9)
    assert len(report.pairs) == 1
    assert {report.pairs[0].mode_a, report.pairs[0].mode_b} == {(1, 2), (2, 1)}
    assert report.pairs[0].gap == 0

    with pytest.raises(ValueError):
        near_degeneracies(Disk(), 50, -1.0)
