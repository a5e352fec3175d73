"""Rank invariants of the curve over the tower ``k(t^(1/d))``, k algebraically closed.

The Mordell-Weil rank over ``k(t^(1/d))`` is::

    rank = RankHom(J_C'_d, J_D'_d)^mu - c1(d) + c2(d)

Only ``c2(d)`` is computed in general.  The Hom term and ``c1(d)`` are known
(to vanish) only when f has exactly one zero and one pole; otherwise they are
reported as unknown (``None``), and so is the rank.

``e_{d,f}`` is the number of components of ``w^d = f(x)``, namely the gcd of
d with all zero and pole orders of f.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm
from typing import Optional

from .divisor import FunctionDatum, SurfaceConfig, validate_config

__all__ = [
    "RankReport",
    "NotOneZeroOnePole",
    "component_count",
    "c2_general",
    "c2_onepole",
    "c1",
    "hom_rank",
    "mw_rank",
    "c2_period",
    "c2_sweep",
    "render_status",
]


class NotOneZeroOnePole(ValueError):
    """The operation needs f with exactly one zero and one pole."""


def component_count(d: int, fd: FunctionDatum) -> int:
    if d < 1:
        raise ValueError("d must be positive")
    return reduce(gcd, fd.all_parts(), d)


def _require(cfg: SurfaceConfig, d: Optional[int] = None) -> SurfaceConfig:
    if not cfg.validated:
        cfg = validate_config(cfg)
    if cfg.genus_C or cfg.genus_D:
        raise ValueError("rank invariants are implemented for rational base curves only")
    if d is not None:
        if d < 1:
            raise ValueError("d must be a positive integer")
        p = cfg.characteristic
        if p and gcd(d, p) != 1:
            raise ValueError(f"d={d} is not prime to the characteristic {p}")
    return cfg


def c2_general(cfg: SurfaceConfig, d: int) -> int:
    """``c2(d)`` from the multiplicities of zeros and poles of f and g.

    The last correction sum pairs the poles of g with ``e_{d,f}``; pairing
    them with ``e_{d,g}`` breaks agreement with :func:`c2_onepole`.
    """
    cfg = _require(cfg, d)
    mz, mp = cfg.f.zeros.parts, cfg.f.poles.parts
    nz, np_ = cfg.g.zeros.parts, cfg.g.poles.parts
    e_f = component_count(d, cfg.f)
    e_g = component_count(d, cfg.g)
    return (sum(gcd(a, b, d) for a in mz for b in nz)
            + sum(gcd(a, b, d) for a in mp for b in np_)
            - sum(gcd(a, e_g) for a in mz)
            - sum(gcd(b, e_f) for b in nz)
            - sum(gcd(a, e_g) for a in mp)
            - sum(gcd(b, e_f) for b in np_)
            + 2)


def c2_onepole(cfg: SurfaceConfig, d: int) -> int:
    """``c2(d)`` written out for f with one zero and one pole, both of order rm."""
    cfg = _require(cfg, d)
    if len(cfg.f.zeros) != 1 or len(cfg.f.poles) != 1:
        raise NotOneZeroOnePole(f"f = {cfg.f} must have one zero and one pole")
    rm = cfg.rm
    nz, np_ = cfg.g.zeros.parts, cfg.g.poles.parts
    all_g = reduce(gcd, nz + np_, gcd(d, rm))
    return (sum(gcd(rm, b, d) for b in nz)
            + sum(gcd(rm, b, d) for b in np_)
            - (sum(gcd(d, b, rm) for b in nz) + all_g)
            - (sum(gcd(d, b, rm) for b in np_) + all_g)
            + 2)


def _one_zero_one_pole(cfg: SurfaceConfig) -> bool:
    return len(cfg.f.zeros) == 1 and len(cfg.f.poles) == 1


def c1(cfg: SurfaceConfig) -> Optional[int]:
    """0 when f has one zero and one pole, ``None`` (unknown) otherwise."""
    cfg = _require(cfg)
    return 0 if _one_zero_one_pole(cfg) else None


def hom_rank(cfg: SurfaceConfig, d: int) -> Optional[int]:
    """Rank of the mu-equivariant Hom term; 0 when C'_d is rational, else unknown."""
    cfg = _require(cfg, d)
    return 0 if _one_zero_one_pole(cfg) else None


@dataclass(frozen=True)
class RankReport:
    d: int
    e_df: int
    e_dg: int
    c2: int
    c1: Optional[int]
    hom_rank: Optional[int]
    mw_rank: Optional[int]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "e_df": self.e_df,
            "e_dg": self.e_dg,
            "c2": self.c2,
            "c1": render_status(self.c1),
            "hom_rank": render_status(self.hom_rank),
            "mw_rank": render_status(self.mw_rank),
        }


def render_status(value: Optional[int]) -> dict:
    return {"status": "unknown"} if value is None else {"status": "known", "value": value}


def mw_rank(cfg: SurfaceConfig, d: int) -> RankReport:
    """Assemble the rank formula over ``k(t^(1/d))``."""
    from .genus import geometric_genus

    cfg = _require(cfg, d)
    genus = geometric_genus(cfg)
    if genus != 1:
        warnings.warn(f"{cfg} has geometric genus {genus}, not an elliptic curve",
                      stacklevel=2)
    c2 = c2_general(cfg, d)
    first = c1(cfg)
    hom = hom_rank(cfg, d)
    rank = None if first is None or hom is None else hom - first + c2
    return RankReport(d=d, e_df=component_count(d, cfg.f), e_dg=component_count(d, cfg.g),
                      c2=c2, c1=first, hom_rank=hom, mw_rank=rank)


def c2_sweep(cfg: SurfaceConfig, start: int, stop: int) -> list[RankReport]:
    """Reports for ``d = start, ..., stop`` (inclusive)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return [mw_rank(cfg, d) for d in range(start, stop + 1)]


def c2_period(cfg: SurfaceConfig) -> int:
    """Minimal period of ``d -> c2(d)``.

    Every term depends on d only through ``gcd(d, L)`` with L the lcm of all
    multiplicities, so L is a period; the minimal one is the least divisor of
    L under which one full period of values is invariant.
    """
    cfg = _require(cfg)
    L = lcm(*cfg.all_parts())
    values = [c2_general(cfg, d) for d in range(1, L + 1)]
    for p in range(1, L + 1):
        if L % p == 0 and all(values[i] == values[(i + p) % L] for i in range(L)):
            return p
    return L
