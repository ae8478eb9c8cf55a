"""Closed-form baselines, long-coherence limits, and regime predicates.

The regime predicates compare integer squares rather than floating square
roots: the crossover thresholds land exactly on integers (e.g. n1 = n2 = 4),
where a rounded square root could flip the verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .asc_codec import asc_r, rate_asc
from .csc_codec import csc_r, rate_csc
from .tot_codec import rate_tot, tot_levels

INFINITE = math.inf

SCHEMES = ("hd", "fd-ideal", "tot", "csc", "asc")


def hd_rate_exact(n1: int, n2: int) -> Fraction:
    """Best half-duplex time-sharing rate, exactly: n1*n2/(n1+n2)."""
    if n1 + n2 <= 0:
        raise ValueError("at least one link must have positive strength")
    return Fraction(n1 * n2, n1 + n2)


def rate_hd(n1: int, n2: int) -> tuple[float, float]:
    """(best half-duplex rate, optimal source-phase share alpha*)."""
    rate = hd_rate_exact(n1, n2)
    return float(rate), n2 / (n1 + n2)


def rate_fd_ideal(n1: int, n2: int) -> float:
    """Full-duplex rate with no self-interference at all: min(n1, n2)."""
    return float(min(n1, n2))


def lim_rate_csc(n1: int, n2: int) -> int:
    """Long-coherence limit of the conservative scheme: min((n1-2)^+, n2)."""
    return min(max(n1 - 2, 0), n2)


def lim_rate_asc(n1: int, n2: int) -> int:
    """Long-coherence limit of the aggressive scheme: min((n1-1)^+, n2)."""
    return min(max(n1 - 1, 0), n2)


def csc_beats_hd_limit(n1: int, n2: int) -> bool:
    """True iff n1 >= 1 + sqrt(1 + 2*n2), evaluated in exact integer arithmetic."""
    if n1 < 0 or n2 < 0:
        raise ValueError("link strengths must be >= 0")
    return n1 >= 1 and (n1 - 1) ** 2 >= 1 + 2 * n2


def asc_beats_hd_limit(n1: int, n2: int) -> bool:
    """True iff n1 >= 1/2 + sqrt(1 + 4*n2)/2, evaluated in exact integer arithmetic."""
    if n1 < 0 or n2 < 0:
        raise ValueError("link strengths must be >= 0")
    return n1 >= 1 and (2 * n1 - 1) ** 2 >= 1 + 4 * n2


def scheme_rate(scheme: str, n1: int, n2: int, T: int | float) -> float:
    """Rate of one scheme at coherence time ``T`` (math.inf for the limit)."""
    if scheme == "hd":
        return rate_hd(n1, n2)[0]
    if scheme == "fd-ideal":
        return rate_fd_ideal(n1, n2)
    infinite = isinstance(T, float) and math.isinf(T)
    if not infinite and (not isinstance(T, int) or T < 1):
        raise ValueError(f"coherence time must be a positive integer or infinite, got {T!r}")
    if scheme == "tot":
        return float(tot_levels(n1, n2)) if infinite else rate_tot(n1, n2, T)
    if scheme == "csc":
        return float(lim_rate_csc(n1, n2)) if infinite else rate_csc(n1, n2, T)
    if scheme == "asc":
        return float(lim_rate_asc(n1, n2)) if infinite else rate_asc(n1, n2, T)
    raise ValueError(f"unknown scheme {scheme!r}")


@dataclass(frozen=True)
class RateReport:
    """All scheme rates and regime verdicts for one (n1, n2, T) grid point."""

    n1: int
    n2: int
    T: int | float
    hd: float
    fd_ideal: float
    tot: float
    csc: float
    asc: float
    alpha_star: float
    csc_beats_hd_limit: bool
    asc_beats_hd_limit: bool

    @property
    def rates(self) -> dict[str, float]:
        return {
            "hd": self.hd,
            "fd-ideal": self.fd_ideal,
            "tot": self.tot,
            "csc": self.csc,
            "asc": self.asc,
        }


def rate_report(n1: int, n2: int, T: int | float) -> RateReport:
    hd, alpha = rate_hd(n1, n2)
    return RateReport(
        n1=n1,
        n2=n2,
        T=T,
        hd=hd,
        fd_ideal=rate_fd_ideal(n1, n2),
        tot=scheme_rate("tot", n1, n2, T),
        csc=scheme_rate("csc", n1, n2, T),
        asc=scheme_rate("asc", n1, n2, T),
        alpha_star=alpha,
        csc_beats_hd_limit=csc_beats_hd_limit(n1, n2),
        asc_beats_hd_limit=asc_beats_hd_limit(n1, n2),
    )


# Re-exported so rate consumers get the level counts from one place.
__all__ = [
    "INFINITE",
    "SCHEMES",
    "RateReport",
    "asc_beats_hd_limit",
    "asc_r",
    "csc_beats_hd_limit",
    "csc_r",
    "hd_rate_exact",
    "lim_rate_asc",
    "lim_rate_csc",
    "rate_asc",
    "rate_csc",
    "rate_fd_ideal",
    "rate_hd",
    "rate_report",
    "rate_tot",
    "scheme_rate",
]
