"""
Eigenvalues, multiplicities and nodal counts of the separable domains, the
Weyl law, and empirical Pleijel ratio traces mu(phi_n) / n.
"""

import logging
import math
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from pleijel.boundary import BoundaryCondition, validate_boundary
from pleijel.constants import PleijelEstimate
from pleijel.crossprod import cross_zeros
from pleijel.domains import (
    AnnularSector,
    Annulus,
    Disk,
    Domain,
    Orthotope,
    Sector,
    angular_scale,
    inner_radius,
    unit_ball_volume,
)
from pleijel.parallel import map_orders
from pleijel.special import bessel_zeros, bessel_zeros_prime, mccann_bound
from pleijel.utils import SolverParams, get_solver_params

logger = logging.getLogger(__name__)

Mode = Tuple[int, ...]
BC = Union[str, BoundaryCondition]


class ModeEntry(BaseModel, frozen=True):
    """One separated eigenfunction family: a mode tuple and its eigenvalue."""

    mode: Mode = Field(..., description="(m_1, ..., m_N) or (nu, k).")
    lam: float = Field(..., ge=0, description="Eigenvalue.")
    multiplicity: int = Field(..., gt=0, description="2 for cos/sin pairs.")
    mu: int = Field(..., gt=0, description="Nodal domains of the basis function.")


class EigenRecord(BaseModel, frozen=True):
    """An eigenvalue with every mode that attains it (after merging)."""

    lam: float = Field(..., ge=0, description="Eigenvalue.")
    modes: List[Mode] = Field(..., description="Modes sharing this eigenvalue.")
    multiplicity: int = Field(..., gt=0, description="Summed multiplicity.")
    mu: int = Field(..., gt=0, description="Largest nodal count among the modes.")
    entries: List[ModeEntry] = Field(..., description="The merged modes.")

    @classmethod
    def from_entries(cls, entries: Sequence[ModeEntry]) -> "EigenRecord":
        entries = sorted(entries, key=lambda e: e.mode)
        return cls(
            lam=min(e.lam for e in entries),
            modes=[e.mode for e in entries],
            multiplicity=sum(e.multiplicity for e in entries),
            mu=max(e.mu for e in entries),
            entries=entries,
        )

    @property
    def mus(self) -> List[int]:
        return [e.mu for e in self.entries]

    @property
    def merged(self) -> bool:
        return len(self.entries) > 1


def _kind(domain: Domain) -> str:
    return domain.kind


def _validate_lambda(lambda_max: float) -> float:
    lambda_max = float(lambda_max)
    if not (math.isfinite(lambda_max) and lambda_max > 0):
        raise ValueError(f"lambda_max must be a finite real > 0, got {lambda_max!r}.")
    return lambda_max


def _validate_mode(domain: Domain, mode: Sequence[int]) -> Mode:
    mode = tuple(mode)
    if any(isinstance(m, bool) or not float(m).is_integer() for m in mode):
        raise ValueError(f"Mode {mode!r} must consist of integers.")
    mode = tuple(int(m) for m in mode)
    if isinstance(domain, Orthotope):
        if len(mode) != domain.dimension or min(mode) < 1:
            raise ValueError(
                f"Orthotope mode must be {domain.dimension} integers >= 1, got {mode!r}."
            )
        return mode
    if len(mode) != 2:
        raise ValueError(f"Radial mode must be (nu, k), got {mode!r}.")
    return mode


def nodal_count(
    domain: Domain, mode: Sequence[int], bc: BC = BoundaryCondition.DIRICHLET
) -> int:
    """mu of the basis eigenfunction labeled by `mode`.

    Orthotope: m_1 ... m_N. Disk and annulus: k for nu = 0, 2 nu k otherwise.
    Sectors: nu k. Neumann disk: 1 for the constant (0, 0), k + 1 for
    (0, k), 2 nu k otherwise.

    Raises:
        ValueError: If the mode is not valid for the domain.
    """
    bc = validate_boundary(_kind(domain), bc)
    mode = _validate_mode(domain, mode)
    if isinstance(domain, Orthotope):
        return math.prod(mode)

    nu, k = mode
    if isinstance(domain, (Sector, AnnularSector)):
        if nu < 1 or k < 1:
            raise ValueError(f"Sector mode needs nu >= 1 and k >= 1, got {mode!r}.")
        return nu * k

    if bc == BoundaryCondition.NEUMANN:
        if mode == (0, 0):
            return 1
        if nu < 0 or k < 1:
            raise ValueError(f"Neumann disk mode needs nu >= 0 and k >= 1, got {mode!r}.")
        return k + 1 if nu == 0 else 2 * nu * k

    if nu < 0 or k < 1:
        raise ValueError(f"Mode needs nu >= 0 and k >= 1, got {mode!r}.")
    return k if nu == 0 else 2 * nu * k


def _mode_multiplicity(domain: Domain, nu: int) -> int:
    if isinstance(domain, (Disk, Annulus)) and nu > 0:
        return 2
    return 1


def _orthotope_modes(
    lengths: Sequence[float], lambda_max: float
) -> Iterator[Tuple[Mode, float]]:
    # Recurse over axes with the remaining budget sum (m_i / a_i)^2
    budget = lambda_max / math.pi**2

    def walk(axis: int, prefix: Mode, used: float) -> Iterator[Tuple[Mode, float]]:
        if axis == len(lengths):
            yield prefix, math.pi**2 * used
            return
        a = lengths[axis]
        m = 1
        while used + (m / a) ** 2 <= budget:
            yield from walk(axis + 1, prefix + (m,), used + (m / a) ** 2)
            m += 1

    yield from walk(0, (), 0.0)


def angular_indices(domain: Domain, lambda_max: float, bc: BC) -> List[int]:
    """Angular indices nu that can carry an eigenvalue <= lambda_max.

    Disk and sector (Dirichlet) stop once McCann's bound on j_{c nu,1}
    exceeds sqrt(lambda_max); the annulus and the Neumann disk stop once
    (c nu)^2 > lambda_max, since a_{nu,1}, j'_{nu,1} > nu.
    """
    bc = validate_boundary(_kind(domain), bc)
    c = angular_scale(domain)
    r = inner_radius(domain)
    nu = 1 if isinstance(domain, (Sector, AnnularSector)) else 0
    indices = []
    while True:
        order = c * nu
        if r > 0 or bc == BoundaryCondition.NEUMANN:
            stop = order**2 > lambda_max
        else:
            stop = mccann_bound(order, 1) ** 2 > lambda_max
        if stop:
            break
        indices.append(nu)
        nu += 1
    return indices


def radial_zeros(
    order: float, r: float, neumann: bool, limit: float, params: SolverParams
) -> List[float]:
    """Radial eigenvalue roots <= limit for one angular order."""
    reach = math.sqrt(max(limit**2 - order**2, 0.0))
    k_max = max(1, int(reach * (1 - r) / math.pi) + 2)
    while True:
        if r > 0:
            zeros = [z.a for z in cross_zeros(order, r, k_max, params)]
        elif neumann:
            zeros = bessel_zeros_prime(order, k_max, params)
        else:
            zeros = bessel_zeros(order, k_max, params)
        if zeros[-1] > limit:
            return [z for z in zeros if z <= limit]
        k_max *= 2


def enumerate_modes(
    domain: Domain,
    lambda_max: float,
    bc: BC = BoundaryCondition.DIRICHLET,
    params: Optional[SolverParams] = None,
    num_workers: int = 1,
) -> List[ModeEntry]:
    """Every mode with eigenvalue <= lambda_max, unmerged, sorted by (lam, mode)."""
    lambda_max = _validate_lambda(lambda_max)
    bc = validate_boundary(_kind(domain), bc)
    params = get_solver_params(params)

    entries: List[ModeEntry] = []
    if isinstance(domain, Orthotope):
        for mode, lam in _orthotope_modes(domain.lengths, lambda_max):
            entries.append(
                ModeEntry(mode=mode, lam=lam, multiplicity=1, mu=math.prod(mode))
            )
    else:
        neumann = bc == BoundaryCondition.NEUMANN
        c = angular_scale(domain)
        r = inner_radius(domain)
        indices = angular_indices(domain, lambda_max, bc)
        logger.debug(f"{len(indices)} angular indices for {domain!r}")
        args_list = [(c * nu, r, neumann, math.sqrt(lambda_max), params) for nu in indices]
        desc = f"Zeros for {domain.kind}" if num_workers > 1 else None
        zero_lists = map_orders(radial_zeros, args_list, num_workers, desc)

        if neumann:
            entries.append(ModeEntry(mode=(0, 0), lam=0.0, multiplicity=1, mu=1))
        for nu, zeros in zip(indices, zero_lists):
            for k, z in enumerate(zeros, start=1):
                entries.append(
                    ModeEntry(
                        mode=(nu, k),
                        lam=z * z,
                        multiplicity=_mode_multiplicity(domain, nu),
                        mu=nodal_count(domain, (nu, k), bc),
                    )
                )

    entries.sort(key=lambda e: (e.lam, e.mode))
    return entries


def merge_entries(entries: Sequence[ModeEntry], rtol: float) -> List[EigenRecord]:
    """Merges sorted entries whose eigenvalues agree within `rtol` relative."""
    records: List[EigenRecord] = []
    group: List[ModeEntry] = []
    for entry in entries:
        if group and entry.lam - group[0].lam <= rtol * group[0].lam:
            group.append(entry)
            continue
        if group:
            records.append(EigenRecord.from_entries(group))
        group = [entry]
    if group:
        records.append(EigenRecord.from_entries(group))
    records.sort(key=lambda rec: (rec.lam, rec.modes[0]))
    return records


def split_records(records: Sequence[EigenRecord]) -> List[ModeEntry]:
    """Undoes the merge: the raw mode entries, sorted by (lam, mode)."""
    entries = [entry for record in records for entry in record.entries]
    entries.sort(key=lambda e: (e.lam, e.mode))
    return entries


def enumerate_spectrum(
    domain: Domain,
    lambda_max: float,
    bc: BC = BoundaryCondition.DIRICHLET,
    params: Optional[SolverParams] = None,
    num_workers: int = 1,
) -> List[EigenRecord]:
    """Lists every eigenvalue <= lambda_max with its modes and multiplicity.

    Radial domains are enumerated one angular index at a time (in a process
    pool when num_workers > 1); for each index k runs until the root
    exceeds sqrt(lambda_max), and the indices stop at a proven lower bound
    on the first root. Eigenvalues within `params.merge_rtol` relative are
    merged into one record.

    Args:
        domain (Domain): The domain.
        lambda_max (float): Upper end of the spectrum window.
        bc (BoundaryCondition, optional): Defaults to Dirichlet. Neumann
            is supported on the disk only.
        params (SolverParams, optional): Caps and tolerances.
        num_workers (int, optional): Worker processes. Defaults to 1.

    Raises:
        ValueError: If lambda_max is invalid or holds no eigenvalue.
        CapExceededError: If an order or zero cap is exceeded.
        ConvergenceError: If a zero cannot be found; carries the mode.

    Returns:
        List[EigenRecord]: Ascending eigenvalues.
    """
    params = get_solver_params(params)
    entries = enumerate_modes(domain, lambda_max, bc, params, num_workers)
    if not entries:
        raise ValueError(
            f"No eigenvalue of {domain!r} lies below lambda_max={lambda_max!r}."
        )

    records = merge_entries(entries, params.merge_rtol)
    merges = [rec for rec in records if rec.merged]
    logger.info(
        f"Enumerated {len(entries)} modes, {len(records)} eigenvalues of "
        + f"{domain!r} up to {lambda_max!r}"
    )
    if merges and isinstance(domain, Orthotope):
        logger.warning(
            f"{len(merges)} coincident eigenvalues in {domain!r}, e.g. modes "
            + f"{merges[0].modes} at lambda={merges[0].lam!r}"
        )
    return records


def counting_function(
    domain: Domain,
    lam: float,
    bc: BC = BoundaryCondition.DIRICHLET,
    params: Optional[SolverParams] = None,
) -> int:
    """Number of eigenvalues <= lam, counted with multiplicity."""
    entries = enumerate_modes(domain, lam, bc, params)
    return sum(e.multiplicity for e in entries)


def weyl_count(
    domain: Domain,
    lam: float,
    boundary_term: bool = False,
    bc: BC = BoundaryCondition.DIRICHLET,
) -> float:
    """(2 pi)^-N omega_N |Omega| lam^(N/2), optionally with the boundary term.

    The boundary term (1/4) (2 pi)^(1-N) omega_{N-1} |dOmega| lam^((N-1)/2)
    is subtracted for Dirichlet and added for Neumann.
    """
    lam = float(lam)
    if not (math.isfinite(lam) and lam > 0):
        raise ValueError(f"lambda must be a finite real > 0, got {lam!r}.")
    N = domain.dimension
    count = (2 * math.pi) ** (-N) * unit_ball_volume(N) * domain.area * lam ** (N / 2)
    if boundary_term:
        bc = validate_boundary(_kind(domain), bc)
        sign = -1 if bc == BoundaryCondition.DIRICHLET else 1
        count += (
            sign
            * 0.25
            * (2 * math.pi) ** (1 - N)
            * unit_ball_volume(N - 1)
            * domain.perimeter
            * lam ** ((N - 1) / 2)
        )
    return count


class TraceRow(BaseModel, frozen=True):
    n: int = Field(..., gt=0, description="Eigenfunction index.")
    lam: float = Field(..., ge=0, description="Eigenvalue lambda_n.")
    mu: int = Field(..., gt=0, description="Nodal count of phi_n.")
    ratio: float = Field(..., gt=0, description="mu / n.")
    running_sup: float = Field(..., gt=0, description="Max of ratio so far.")
    mode: Mode = Field(..., description="Mode of phi_n.")


TRACE_COLUMNS = ["n", "lambda", "mu", "ratio", "running_sup"]


class RatioTrace(BaseModel):
    """Empirical Pleijel ratios mu(phi_n) / n along the spectrum."""

    rows: List[TraceRow]
    domain: Domain = Field(..., discriminator="kind")
    lambda_max: float
    lambda_min: float = 0.0
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET
    merges: int = Field(0, description="Number of merged eigenvalue records.")

    @property
    def running_sup(self) -> float:
        return self.rows[-1].running_sup

    @property
    def prop_regime(self) -> bool:
        """True for an orthotope trace in which no eigenvalue was merged."""
        return isinstance(self.domain, Orthotope) and self.merges == 0

    def argmax_row(self) -> TraceRow:
        best = self.running_sup
        return next(row for row in self.rows if row.ratio == best)

    def table(self) -> List[List[float]]:
        return [[r.n, r.lam, r.mu, r.ratio, r.running_sup] for r in self.rows]

    def estimate(self) -> PleijelEstimate:
        if self.running_sup >= 1:
            raise ValueError(
                "Trace contains Courant-sharp eigenfunctions (ratio 1); "
                + "raise lambda_min to estimate the Pleijel constant."
            )
        row = self.argmax_row()
        flags = []
        if isinstance(self.domain, Orthotope) and self.merges:
            flags.append(
                f"{self.merges} merged eigenvalues; the box spectrum is not simple"
            )
        return PleijelEstimate(
            value=self.running_sup,
            method="empirical_trace",
            flags=flags,
            notes=[
                f"finite trace on [{self.lambda_min!r}, {self.lambda_max!r}], "
                + f"attained at n={row.n}, mode={row.mode}"
            ],
        )


def ratio_trace(
    domain: Domain,
    lambda_max: float,
    bc: BC = BoundaryCondition.DIRICHLET,
    lambda_min: float = 0.0,
    params: Optional[SolverParams] = None,
    num_workers: int = 1,
) -> RatioTrace:
    """The trace n -> mu(phi_n) / n for eigenvalues up to lambda_max.

    Each record contributes one row per eigenfunction copy: n advances by
    the multiplicity and every copy of a mode carries that mode's mu.
    Merged modes are expanded in lexicographic order. Rows with
    lambda < lambda_min are counted in n but not emitted, and the running
    sup covers emitted rows only.

    Raises:
        ValueError: If the window holds no eigenvalue.
    """
    bc = validate_boundary(_kind(domain), bc)
    records = enumerate_spectrum(domain, lambda_max, bc, params, num_workers)

    rows: List[TraceRow] = []
    n = 0
    sup = 0.0
    for record in records:
        for entry in record.entries:
            for _ in range(entry.multiplicity):
                n += 1
                if record.lam < lambda_min:
                    continue
                ratio = entry.mu / n
                sup = max(sup, ratio)
                rows.append(
                    TraceRow(
                        n=n,
                        lam=record.lam,
                        mu=entry.mu,
                        ratio=ratio,
                        running_sup=sup,
                        mode=entry.mode,
                    )
                )
    if not rows:
        raise ValueError(
            f"No eigenvalue in [{lambda_min!r}, {lambda_max!r}] for {domain!r}."
        )

    return RatioTrace(
        rows=rows,
        domain=domain,
        lambda_max=lambda_max,
        lambda_min=lambda_min,
        bc=bc,
        merges=sum(1 for rec in records if rec.merged),
    )


class NearDegeneracy(BaseModel, frozen=True):
    mode_a: Mode
    mode_b: Mode
    lam_a: float
    lam_b: float
    gap: float = Field(..., ge=0, description="Relative gap (lam_b - lam_a) / lam_a.")


class NearDegeneracyReport(BaseModel):
    pairs: List[NearDegeneracy]
    gap_tol: float
    lambda_max: float


def near_degeneracies(
    domain: Domain,
    lambda_max: float,
    gap_tol: float,
    bc: BC = BoundaryCondition.DIRICHLET,
    params: Optional[SolverParams] = None,
) -> NearDegeneracyReport:
    """Pairs of distinct modes whose eigenvalues lie within gap_tol relative.

    Lists the coincidences that break the simplicity assumptions behind the
    sector and annulus constants.
    """
    if not (gap_tol >= 0 and math.isfinite(gap_tol)):
        raise ValueError(f"gap_tol must be a finite real >= 0, got {gap_tol!r}.")
    entries = enumerate_modes(domain, lambda_max, bc, params)

    pairs = []
    for i, a in enumerate(entries):
        for b in entries[i + 1 :]:
            if a.lam > 0:
                gap = (b.lam - a.lam) / a.lam
            else:
                gap = 0.0 if b.lam == 0 else math.inf
            if gap > gap_tol:
                break
            if a.mode != b.mode:
                pairs.append(
                    NearDegeneracy(
                        mode_a=a.mode, mode_b=b.mode, lam_a=a.lam, lam_b=b.lam, gap=gap
                    )
                )
    logger.info(f"{len(pairs)} mode pairs within relative gap {gap_tol!r}")
    return NearDegeneracyReport(pairs=pairs, gap_tol=gap_tol, lambda_max=lambda_max)
