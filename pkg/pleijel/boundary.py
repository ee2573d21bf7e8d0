"""
This file contains the boundary conditions eigenvalue problems can carry.
"""

from enum import Enum
from typing import Union


class BoundaryCondition(Enum):
    """
    Defines the boundary condition imposed on the Laplacian eigenvalue
    problem -Δφ = λφ in a domain Ω. Every enumerator, counting function and
    ratio trace takes one; the default everywhere is Dirichlet.

    Attributes:
        DIRICHLET: φ = 0 on ∂Ω. Supported on every domain family.
        NEUMANN: ∂φ/∂n = 0 on ∂Ω. Supported on the disk only. The radial
            factors are J_ν(j'_{ν,k} ρ), the constant function is the first
            eigenfunction (λ = 0), and the nodal counts become
            μ(φ_{0,k}) = k + 1 and μ(φ_{ν,k}) = 2νk.

    Example Usage:
    ```python
    from pleijel import BoundaryCondition, Disk, ratio_trace

    trace = ratio_trace(Disk(), 1000.0, BoundaryCondition.NEUMANN)
    print(trace.rows[0]) # (1)!
    ```

    1. The first row is the constant eigenfunction: n = 1, λ = 0, μ = 1.
    """

    DIRICHLET = "dirichlet"
    """ Vanishing values on the boundary. """

    NEUMANN = "neumann"
    """ Vanishing normal derivative on the boundary (disk only). """


def parse_boundary(bc: Union[str, BoundaryCondition]) -> BoundaryCondition:
    if isinstance(bc, BoundaryCondition):
        return bc
    try:
        return BoundaryCondition(str(bc).lower())
    except ValueError:
        raise ValueError(
            f"Unknown boundary condition {bc!r}; use 'dirichlet' or 'neumann'."
        )


def validate_boundary(kind: str, bc: Union[str, BoundaryCondition]) -> BoundaryCondition:
    bc = parse_boundary(bc)
    if bc == BoundaryCondition.NEUMANN and kind != "disk":
        raise ValueError(f"Neumann boundary condition is supported on the disk only, not {kind}.")
    return bc
