"""
This file tests eigenvalue enumeration and nodal counts.
"""

import math

import pytest

from pleijel import (
    AnnularSector,
    Annulus,
    BoundaryCondition,
    Disk,
    Orthotope,
    Sector,
    bessel_zeros,
    bessel_zeros_prime,
    counting_function,
    cross_zero,
    enumerate_spectrum,
    nodal_count,
    split_records,
)
from pleijel.domains import parse_domain
from pleijel.spectra import enumerate_modes


def test_disk_low_spectrum():
    records = enumerate_spectrum(Disk(), 50)
    assert [rec.lam for rec in records] == pytest.approx(
        [5.783185962946784, 14.681970642123893, 26.374616427163390,
         30.471262343662087, 40.706465818200314, 49.218456321694600],
        rel=1e-10,
    )
    assert [rec.multiplicity for rec in records] == [1, 2, 2, 1, 2, 2]
    assert [rec.modes for rec in records] == [
        [(0, 1)], [(1, 1)], [(2, 1)], [(0, 2)], [(3, 1)], [(1, 2)]
    ]
    assert [rec.mu for rec in records] == [1, 2, 4, 2, 6, 4]


def test_disk_matches_brute_force():
    lambda_max = 300.0
    brute = []
    for nu in range(21):
        for k, z in enumerate(bessel_zeros(nu, 10), start=1):
            if z * z <= lambda_max:
                brute.append((z * z, (nu, k)))
    brute.sort()

    entries = enumerate_modes(Disk(), lambda_max)
    assert [e.mode for e in entries] == [mode for _, mode in brute]
    assert [e.lam for e in entries] == pytest.approx([lam for lam, _ in brute], rel=1e-12)


def test_square_merges():
    records = enumerate_spectrum(Orthotope(lengths=[1, 1]), 50)
    assert len(records) == 2
    assert records[0].lam == pytest.approx(2 * math.pi**2)
    assert records[1].lam == pytest.approx(5 * math.pi**2)
    assert records[1].modes == [(1, 2), (2, 1)]
    assert records[1].multiplicity == 2
    assert records[1].mus == [2, 2]
    assert records[1].merged


def test_half_disk_is_odd_part():
    records = enumerate_spectrum(Sector(alpha=math.pi), 40)
    assert [rec.modes for rec in records] == [[(1, 1)], [(2, 1)]]
    assert [rec.multiplicity for rec in records] == [1, 1]
    assert [rec.mu for rec in records] == [1, 2]
    disk = {rec.modes[0]: rec.lam for rec in enumerate_spectrum(Disk(), 40)}
    for rec in records:
        assert rec.lam == disk[rec.modes[0]]


@pytest.mark.parametrize("m", [2, 3])
def test_sector_is_disk_subset(m):
    lambda_max = 1000.0
    sector = enumerate_modes(Sector(alpha=math.pi / m), lambda_max)
    disk = enumerate_modes(Disk(), lambda_max)
    expected = [e.lam for e in disk if e.mode[0] > 0 and e.mode[0] % m == 0]
    assert [e.lam for e in sector] == pytest.approx(sorted(expected), rel=1e-12)
    # Sector index nu carries disk order m nu
    for e in sector:
        nu, k = e.mode
        assert e.lam == pytest.approx(bessel_zeros(m * nu, k)[-1] ** 2, rel=1e-12)


def test_annulus_and_annular_sector():
    r = 0.3
    records = enumerate_spectrum(Annulus(r=r), 200)
    assert records[0].modes == [(0, 1)]
    assert records[0].lam == pytest.approx(cross_zero(0, 1, r).lam, rel=1e-12)
    for rec in records:
        nu = rec.modes[0][0]
        assert rec.multiplicity == (2 if nu > 0 else 1)

    sector = enumerate_modes(AnnularSector(r=r, alpha=math.pi / 2), 400)
    for e in sector:
        nu, k = e.mode
        assert e.lam == pytest.approx(cross_zero(2 * nu, k, r).lam, rel=1e-12)
        assert e.mu == nu * k


def test_neumann_disk():
    records = enumerate_spectrum(Disk(), 30, BoundaryCondition.NEUMANN)
    assert records[0].lam == 0
    assert records[0].modes == [(0, 0)]
    assert records[0].mu == 1
    assert records[1].modes == [(1, 1)]
    assert records[1].lam == pytest.approx(1.8411837813406593**2, rel=1e-10)
    assert records[1].multiplicity == 2

    lams = [e.lam for e in enumerate_modes(Disk(), 30, "neumann") if e.mode[0] == 0][1:]
    assert lams == pytest.approx([z * z for z in bessel_zeros_prime(0, len(lams))])


def test_neumann_only_on_disk():
    with pytest.raises(ValueError):
        enumerate_spectrum(Annulus(r=0.5), 100, "neumann")

    with pytest.raises(ValueError):
        enumerate_spectrum(Disk(), 100, "robin")


def test_nodal_counts():
    assert nodal_count(Disk(), (0, 3)) == 3
    assert nodal_count(Disk(), (4, 2)) == 16
    assert nodal_count(Orthotope(lengths=[1, 2, 3]), (2, 3, 5)) == 30
    assert nodal_count(Disk(), (0, 2), BoundaryCondition.NEUMANN) == 3
    assert nodal_count(Disk(), (0, 0), "neumann") == 1
    assert nodal_count(Sector(alpha=1.0), (3, 2)) == 6
    assert nodal_count(Annulus(r=0.5), (2, 2)) == 8


@pytest.mark.parametrize(
    "domain, mode",
    [
        (Disk(), (0, 0)),
        (Disk(), (1,)),
        (Disk(), (1.5, 2)),
        (Sector(alpha=1.0), (0, 1)),
        (Orthotope(lengths=[1, 1]), (1, 0)),
        (Orthotope(lengths=[1, 1]), (1, 1, 1)),
    ],
)
def test_invalid_modes(domain, mode):
    with pytest.raises(ValueError):
        nodal_count(domain, mode)


def test_merging_is_reversible():
    for domain in [Orthotope(lengths=[1, 1]), Disk(), Sector(alpha=math.pi / 2)]:
        records = enumerate_spectrum(domain, 400)
        assert split_records(records) == enumerate_modes(domain, 400)


def test_parallel_enumeration_is_deterministic():
    serial = enumerate_spectrum(Disk(), 500, num_workers=1)
    pooled = enumerate_spectrum(Disk(), 500, num_workers=2)
    assert serial == pooled


def test_counting_function():
    assert counting_function(Disk(), 40) == 6
    assert counting_function(Orthotope(lengths=[1, 1]), 50) == 3


def test_invalid_windows():
    with pytest.raises(ValueError):
        enumerate_spectrum(Disk(), 0)

    with pytest.raises(ValueError):
        enumerate_spectrum(Disk(), 5.0)


def test_domain_models():
    assert Annulus(r=0.5).area == pytest.approx(math.pi * 0.75)
    assert Sector(alpha=1.0).area == pytest.approx(0.5)
    assert AnnularSector(r=0.5, alpha=2.0).area == pytest.approx(0.75)
    assert Orthotope(lengths=[2, 3]).perimeter == pytest.approx(10)
    assert parse_domain({"kind": "sector", "alpha": 1.0}) == Sector(alpha=1.0)

    with pytest.raises(ValueError):
        Sector(alpha=7.0)

    with pytest.raises(ValueError):
        Orthotope(lengths=[1])

    with pytest.raises(ValueError):
        Orthotope(lengths=[1, -1])
