"""Genus of the generic fiber of ``t*f(x) - g(y)``.

For a configuration of bidegree ``(rm, rn)`` over base curves of genus
``genus_C`` and ``genus_D``::

    genus = rm*genus_D + rn*genus_C + (rm-1)(rn-1) - delta0 - deltaInf

where ``delta0`` (resp. ``deltaInf``) sums :func:`~tfg.divisor.delta` over
pairs of zeros (resp. poles) of f and g.  On P^1 x P^1 either sum is at most
``delta_max(r, m, n)``, and the genus equals ``1 - r + defect0 + defectInf``
with ``defect = delta_max - delta``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd
from typing import Optional

from .divisor import SurfaceConfig, delta_pairsum

__all__ = [
    "GenusReport",
    "arithmetic_genus",
    "geometric_genus",
    "delta_max",
    "genus_report",
]


def arithmetic_genus(cfg: SurfaceConfig) -> int:
    rm, rn = cfg.rm, cfg.rn
    return rm * cfg.genus_D + rn * cfg.genus_C + (rm - 1) * (rn - 1)


def geometric_genus(cfg: SurfaceConfig) -> int:
    """Genus of the smooth model; may be negative for a reducible (unvalidated) input."""
    return (arithmetic_genus(cfg)
            - delta_pairsum(cfg.f.zeros, cfg.g.zeros)
            - delta_pairsum(cfg.f.poles, cfg.g.poles))


def delta_max(r: int, m: int, n: int) -> int:
    """Largest value of ``delta_pairsum`` over partitions of ``(rm, rn)``.

    Takes the factored bidegree ``(r, m, n)`` with ``gcd(m, n) = 1``.
    """
    if r < 1 or m < 1 or n < 1:
        raise ValueError("r, m, n must be positive")
    if gcd(m, n) != 1:
        raise ValueError(f"m={m} and n={n} must be coprime")
    return (r * r * m * n - r * m - r * n + r) // 2


@dataclass(frozen=True)
class GenusReport:
    rm: int
    rn: int
    r: int
    m: int
    n: int
    arithmetic_genus: int
    delta0: int
    deltaInf: int
    delta_max: int
    defect0: Optional[int]
    defectInf: Optional[int]
    geometric_genus: int

    def to_dict(self) -> dict:
        return asdict(self)


def genus_report(cfg: SurfaceConfig) -> GenusReport:
    """All genus invariants of ``cfg``.

    Defects are reported only over P^1 x P^1 and are ``None`` otherwise.
    """
    d0 = delta_pairsum(cfg.f.zeros, cfg.g.zeros)
    dinf = delta_pairsum(cfg.f.poles, cfg.g.poles)
    ga = arithmetic_genus(cfg)
    dmax = delta_max(cfg.r, cfg.m, cfg.n)
    rational = cfg.genus_C == 0 and cfg.genus_D == 0
    return GenusReport(
        rm=cfg.rm, rn=cfg.rn, r=cfg.r, m=cfg.m, n=cfg.n,
        arithmetic_genus=ga,
        delta0=d0,
        deltaInf=dinf,
        delta_max=dmax,
        defect0=dmax - d0 if rational else None,
        defectInf=dmax - dinf if rational else None,
        geometric_genus=ga - d0 - dinf,
    )
