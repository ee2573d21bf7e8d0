"""
Separable domains: the orthotope (0,a_1) x ... x (0,a_N), the unit disk B,
the sector of angle alpha, the annulus r < |x| < 1 and the annular sector.
"""

import logging
import math
from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, Field, TypeAdapter, field_validator
from scipy.special import gamma

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


def unit_ball_volume(N: int) -> float:
    """omega_N = pi^(N/2) / Gamma(N/2 + 1)."""
    return math.pi ** (N / 2) / float(gamma(N / 2 + 1))


class Orthotope(BaseModel, frozen=True):
    kind: Literal["orthotope"] = "orthotope"
    lengths: List[float] = Field(
        ..., min_length=2, description="Side lengths a_1, ..., a_N."
    )

    @field_validator("lengths")
    @classmethod
    def _positive(cls, lengths: List[float]) -> List[float]:
        if any(not (math.isfinite(a) and a > 0) for a in lengths):
            raise ValueError("Every side length must be a finite real > 0.")
        return lengths

    @property
    def dimension(self) -> int:
        return len(self.lengths)

    @property
    def area(self) -> float:
        return math.prod(self.lengths)

    @property
    def perimeter(self) -> float:
        # Sum over the 2N faces of the product of the other N - 1 sides
        volume = self.area
        return 2 * sum(volume / a for a in self.lengths)


class Disk(BaseModel, frozen=True):
    kind: Literal["disk"] = "disk"

    @property
    def dimension(self) -> int:
        return 2

    @property
    def area(self) -> float:
        return math.pi

    @property
    def perimeter(self) -> float:
        return TWO_PI


class Sector(BaseModel, frozen=True):
    kind: Literal["sector"] = "sector"
    alpha: float = Field(..., gt=0, le=TWO_PI, description="Opening angle.")

    @property
    def dimension(self) -> int:
        return 2

    @property
    def area(self) -> float:
        return self.alpha / 2

    @property
    def perimeter(self) -> float:
        return self.alpha + 2


class Annulus(BaseModel, frozen=True):
    kind: Literal["annulus"] = "annulus"
    r: float = Field(..., gt=0, lt=1, description="Inner radius.")

    @property
    def dimension(self) -> int:
        return 2

    @property
    def area(self) -> float:
        return math.pi * (1 - self.r**2)

    @property
    def perimeter(self) -> float:
        return TWO_PI * (1 + self.r)


class AnnularSector(BaseModel, frozen=True):
    kind: Literal["annular_sector"] = "annular_sector"
    r: float = Field(..., gt=0, lt=1, description="Inner radius.")
    alpha: float = Field(..., gt=0, le=TWO_PI, description="Opening angle.")

    @property
    def dimension(self) -> int:
        return 2

    @property
    def area(self) -> float:
        return self.alpha / 2 * (1 - self.r**2)

    @property
    def perimeter(self) -> float:
        return self.alpha * (1 + self.r) + 2 * (1 - self.r)


Domain = Union[Orthotope, Disk, Sector, Annulus, AnnularSector]

DomainSpec = Annotated[
    Domain,
    Field(discriminator="kind"),
]

_domain_adapter: TypeAdapter = TypeAdapter(DomainSpec)


def parse_domain(data: dict) -> Domain:
    """Builds a domain from its JSON descriptor, e.g. {"kind": "sector", "alpha": 1.0}."""
    return _domain_adapter.validate_python(data)


def angular_scale(domain: Domain) -> float:
    """Factor c such that angular index nu carries Bessel order c * nu."""
    if isinstance(domain, (Sector, AnnularSector)):
        return math.pi / domain.alpha
    return 1.0


def inner_radius(domain: Domain) -> float:
    if isinstance(domain, (Annulus, AnnularSector)):
        return domain.r
    return 0.0
