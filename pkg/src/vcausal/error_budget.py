"""Optical path-mismatch budget: the rho that feeds the speed bound.

The bound scales as 1/rho, so every length uncertainty that enters the
path-equalization budget matters. Independent contributions combine in
quadrature; the coherence length of the down-converted photons is one such
contribution, computed from the Gaussian closed form for filtered
spontaneous parametric down-conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .units import parse_length


@dataclass(frozen=True)
class OpticalBudget:
    """Apparatus lengths entering the path-mismatch ratio.

    extra_terms holds labeled additional uncertainty contributions in
    meters; include_coherence drops the coherence-length term when False so
    the bare equalization uncertainty can be reproduced.
    """

    delta_d: float
    distance: float
    lambda_d: float
    dlambda_d: float
    dlambda_F: float
    extra_terms: tuple[tuple[str, float], ...] = ()
    include_coherence: bool = True

    def __post_init__(self):
        for name in ("delta_d", "distance", "lambda_d", "dlambda_d", "dlambda_F"):
            if not (getattr(self, name) > 0.0):
                raise DomainError(f"budget field {name} must be > 0 m, got {getattr(self, name)}")
        terms = tuple((str(label), float(value)) for label, value in self.extra_terms)
        if any(value < 0.0 for _, value in terms):
            raise DomainError("extra budget terms must be >= 0 m")
        object.__setattr__(self, "extra_terms", terms)

    @property
    def filter_limited(self) -> bool:
        """True when the filter bandwidth, not the intrinsic width, sets the coherence."""
        return self.dlambda_F <= self.dlambda_d

    def coherence_term(self) -> float:
        return coherence_length(self.lambda_d, self.dlambda_F)

    def combined_delta_d(self) -> float:
        terms = [self.delta_d]
        if self.include_coherence:
            terms.append(self.coherence_term())
        terms.extend(value for _, value in self.extra_terms)
        return combine_quadrature(terms)

    def to_dict(self) -> dict:
        return {
            "delta_d": self.delta_d,
            "distance": self.distance,
            "lambda_d": self.lambda_d,
            "dlambda_d": self.dlambda_d,
            "dlambda_F": self.dlambda_F,
            "extra_terms": [[label, value] for label, value in self.extra_terms],
            "include_coherence": self.include_coherence,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OpticalBudget":
        extras = tuple(
            (str(label), parse_length(value)) for label, value in data.get("extra_terms", [])
        )
        return cls(
            delta_d=parse_length(data["delta_d"]),
            distance=parse_length(data["distance"]),
            lambda_d=parse_length(data["lambda_d"]),
            dlambda_d=parse_length(data["dlambda_d"]),
            dlambda_F=parse_length(data["dlambda_F"]),
            extra_terms=extras,
            include_coherence=bool(data.get("include_coherence", True)),
        )


def rho(delta_d: float, d: float) -> float:
    """Path-mismatch ratio delta_d / d."""
    if not (delta_d > 0.0 and d > 0.0):
        raise DomainError(f"lengths must be > 0 m, got delta_d={delta_d}, d={d}")
    if not (delta_d < d):
        raise DomainError(f"delta_d must be smaller than d, got {delta_d} >= {d}")
    return delta_d / d


def coherence_length(lambda_d: float, dlambda_F: float) -> float:
    """Gaussian coherence length 2 ln(2) lambda^2 / (pi dlambda) of filtered photons."""
    if not (lambda_d > 0.0 and dlambda_F > 0.0):
        raise DomainError(
            f"wavelengths must be > 0 m, got lambda_d={lambda_d}, dlambda_F={dlambda_F}"
        )
    return 2.0 * math.log(2.0) * lambda_d**2 / (math.pi * dlambda_F)


def combine_quadrature(terms: list[float]) -> float:
    """Euclidean norm of independent uncertainty contributions."""
    if any(term < 0.0 for term in terms):
        raise DomainError("quadrature terms must be >= 0")
    return math.hypot(*terms)


def effective_rho(budget: OpticalBudget) -> float:
    """Mismatch ratio from the full budget: quadrature sum over distance."""
    return rho(budget.combined_delta_d(), budget.distance)
