"""Parametric families of genus-one classes and matching against them.

Two kinds of family are recognised.

*Exceptional rows* are the nine explicit families in which f has more than
one zero or pole.  A displayed family may degenerate (parameters colliding)
into several partition types, so a class matches a row when it has the row's
bidegree and each of its four partitions is a coarsening of the row's.

*Residue families* have ``f = [rm]/[rm]``.  All parts of the g-partitions
are multiples of ``rm`` except a few *special* parts with prescribed
residues; e.g. for ``(2, n)``, n odd, the zeros of g are
``[2r_1, ..., 2r_{l-1}, 2r_l + 1]`` and the poles carry three odd parts.
Some printed rows list only one of two residue patterns related by
``q -> -q``; the mirrored pattern is also matched and flagged in the tag.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import gcd
from typing import Optional

from .classifier import GenusOneClass, is_exceptional, symmetry_orbit
from .divisor import FunctionDatum, Partition, SurfaceConfig, partitions_of, delta_pairsum

__all__ = [
    "FamilyTag",
    "ResidueFamily",
    "RESIDUE_FAMILIES",
    "EXCEPTIONAL_ROWS",
    "UNMATCHED",
    "match_family",
    "exceptional_row_configs",
    "is_coarsening",
    "side_matches",
    "admissible_degrees",
    "instantiate",
]


@dataclass(frozen=True)
class FamilyTag:
    source: str
    parameters: dict = field(default_factory=dict, compare=False, hash=False)

    def to_dict(self) -> dict:
        return {"source": self.source, "parameters": dict(self.parameters)}

    def __str__(self) -> str:
        if not self.parameters:
            return self.source
        inner = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        return f"{self.source} ({inner})"


UNMATCHED = FamilyTag("Unmatched")


# Each special part is (residue, modulus): the part is = residue mod modulus.
@dataclass(frozen=True)
class ResidueFamily:
    source: str
    rm: int
    rn_modulus: int
    rn_residue: int
    zero_specials: tuple[tuple[int, int], ...]
    pole_specials: tuple[tuple[int, int], ...]
    min_rn: int = 1

    def admits(self, rm: int, rn: int) -> bool:
        return (rm == self.rm and rn >= max(rm, self.min_rn)
                and rn % self.rn_modulus == self.rn_residue)

    def mirrored(self) -> "ResidueFamily":
        flip = lambda specials: tuple((-a % mod, mod) for a, mod in specials)
        return ResidueFamily(self.source, self.rm, self.rn_modulus,
                             -self.rn_residue % self.rn_modulus,
                             flip(self.zero_specials), flip(self.pole_specials),
                             self.min_rn)

    def parameters(self, rn: int, mirrored: bool = False) -> dict:
        out = {"rn": rn, "rn mod %d" % self.rn_modulus: rn % self.rn_modulus}
        if mirrored:
            out["mirrored"] = True
        return out


def _odd(k):
    return ((1, 2),) * k


# Order is the matching priority: the r > 1 families (tags Prop2.4-* and Prop2.15-*) first,
# then the r = 1 families.
RESIDUE_FAMILIES: tuple[ResidueFamily, ...] = (
    ResidueFamily("Prop2.4-(2,2n)", 2, 2, 0, _odd(2), _odd(2)),
    ResidueFamily("Prop2.15-(2,2n)", 2, 2, 0, (), _odd(4)),
    ResidueFamily("Prop2.15-(3,3n)", 3, 3, 0, (), ((1, 3),) * 3),
    ResidueFamily("Prop2.15-(4,4n)", 4, 4, 0, (), ((2, 4),) + _odd(2)),
    ResidueFamily("Prop2.15-(6,6n)", 6, 6, 0, (), ((3, 6), (2, 6), (1, 6))),
    ResidueFamily("Prop2.15-(6,6s+2)", 6, 6, 2, ((2, 6),), ((3, 6), (5, 6)), min_rn=8),
    ResidueFamily("Prop2.15-(6,6s+3)", 6, 6, 3, ((3, 6),), ((2, 6), (1, 6)), min_rn=9),
    ResidueFamily("Prop2.15-(6,6s+4)", 6, 6, 4, ((4, 6),), ((3, 6), (1, 6)), min_rn=10),
    ResidueFamily("Prop2.15-(4,4s+2)", 4, 4, 2, ((2, 4),), _odd(2), min_rn=6),
    ResidueFamily("§2.14-(2,n)", 2, 2, 1, ((1, 2),), _odd(3)),
    ResidueFamily("§2.14-(3,n)", 3, 3, 1, ((1, 3),), ((2, 3), (2, 3))),
    ResidueFamily("§2.14-(3,n)", 3, 3, 2, ((2, 3),), ((1, 3), (1, 3))),
    ResidueFamily("§2.14-(4,n)", 4, 4, 1, ((1, 4),), ((2, 4), (3, 4))),
    ResidueFamily("§2.14-(4,n)", 4, 4, 3, ((3, 4),), ((2, 4), (1, 4))),
    ResidueFamily("§2.14-(6,n)", 6, 6, 1, ((1, 6),), ((3, 6), (4, 6))),
    ResidueFamily("§2.14-(6,n)", 6, 6, 5, ((5, 6),), ((3, 6), (2, 6))),
)


# Equations as printed, with their side conditions (label, excluded values).
EXCEPTIONAL_ROWS: tuple[tuple[str, tuple[tuple[str, tuple[str, ...]], ...]], ...] = (
    ("tx(x-1)(y+1)(y-b)=(x+1)(x-a)y(y-1)",
     (("a", ("0", "1")), ("b", ("0", "1")))),
    ("tx^2(y-1)(y-a)(y-b)(y-c) = y^2 (y-d)^2 (x-1)(x+1)",
     (("a", ("0",)), ("b", ("0",)), ("c", ("0",)), ("d", ("1", "a", "b", "c")))),
    ("tx^2 (y-1)(y-a)(y-b) = y^2(y-d) (x-1)(x+1)",
     (("a", ("0",)), ("b", ("0",)), ("d", ("a", "b", "1")))),
    ("tx^3(y-1)(y+1)(y-a) = y^3(x-1)(x+1)(x - b)",
     (("a", ("0", "1", "-1")), ("b", ("0", "1", "-1")))),
    ("tx^3 (y-1)^2 (y-a)^2 = y^3(y-b) (x-1)(x+1)^2",
     (("a", ("0", "b")), ("b", ("1",)))),
    ("t(y-a)^2(y-b)^2(y-1)^2 x^3 = y^3(y-d)^3 (x-1)^2(x+1)",
     (("a", ("0",)), ("b", ("0",)), ("d", ("a", "b", "1")))),
    ("t(y-1)^2(y+1)(y-a)x^4 = y^4 (x-1)^2(x+1)^2",
     (("a", ("-1", "0")),)),
    ("tx^4 (y-1)^3(y-a)^3= y^4(y-b)^2 (x-1)^3(x+1)",
     (("a", ("0", "b")), ("b", ("1",)))),
    ("tx^5 (y-1)^6 = (x-1)^3(x+1)^2 y^5 (y-a)",
     (("a", ("1",)),)),
)


@lru_cache(maxsize=None)
def exceptional_row_configs() -> tuple[SurfaceConfig, ...]:
    """Partition data read off the printed exceptional equations."""
    from .models import parse_equation

    return tuple(parse_equation(eq)[0] for eq, _ in EXCEPTIONAL_ROWS)


def is_coarsening(fine: Partition, coarse: Partition) -> bool:
    """Whether ``coarse`` arises from ``fine`` by merging parts."""
    if fine.total != coarse.total:
        return False

    def place(items, bins):
        if not items:
            return all(b == 0 for b in bins)
        x, rest = items[0], items[1:]
        seen = set()
        for i, room in enumerate(bins):
            if room >= x and room not in seen:
                seen.add(room)
                bins[i] -= x
                if place(rest, bins):
                    bins[i] += x
                    return True
                bins[i] += x
        return False

    return place(list(fine.parts), list(coarse.parts))


def _degenerates(row: SurfaceConfig, cfg: SurfaceConfig) -> bool:
    return (row.rm == cfg.rm and row.rn == cfg.rn
            and is_coarsening(row.f.zeros, cfg.f.zeros)
            and is_coarsening(row.f.poles, cfg.f.poles)
            and is_coarsening(row.g.zeros, cfg.g.zeros)
            and is_coarsening(row.g.poles, cfg.g.poles))


def side_matches(parts: Partition, rm: int, specials) -> bool:
    """Parts off multiples of ``rm`` correspond one-to-one to ``specials``."""
    off = [q for q in parts if q % rm]
    if len(off) != len(specials):
        return False
    return any(all(q % mod == a % mod for q, (a, mod) in zip(off, perm))
               for perm in set(permutations(specials)))


def _oriented(cls: GenusOneClass) -> list[SurfaceConfig]:
    """Orbit members with deg f <= deg g and delta0 >= deltaInf."""
    out = []
    for c in symmetry_orbit(cls.config()):
        if c.rm <= c.rn and (delta_pairsum(c.f.zeros, c.g.zeros)
                             >= delta_pairsum(c.f.poles, c.g.poles)):
            out.append(c)
    return out


def _match_residue(fam: ResidueFamily, cfg: SurfaceConfig) -> bool:
    rm = cfg.rm
    single = Partition((rm,))
    return (fam.admits(rm, cfg.rn)
            and cfg.f.zeros == single and cfg.f.poles == single
            and side_matches(cfg.g.zeros, rm, fam.zero_specials)
            and side_matches(cfg.g.poles, rm, fam.pole_specials))


def match_family(cls: GenusOneClass) -> FamilyTag:
    """First family matching ``cls``: exceptional rows, then r > 1, then r = 1.

    A degenerate class may match several exceptional rows; only the first
    is reported.
    """
    oriented = _oriented(cls)
    if is_exceptional(cls):
        for i, row in enumerate(exceptional_row_configs(), start=1):
            if any(_degenerates(row, c) for c in oriented):
                return FamilyTag(f"Exceptional-§2.16-row-{i}", {"row": i})
        return UNMATCHED
    for mirrored in (False, True):
        for fam in RESIDUE_FAMILIES:
            f = fam.mirrored() if mirrored else fam
            if any(_match_residue(f, c) for c in oriented):
                return FamilyTag(fam.source, fam.parameters(cls.bidegree[1], mirrored))
    return UNMATCHED


def _side_instances(rn: int, rm: int, specials, limit: Optional[int] = None):
    out = []
    for q in partitions_of(rn):
        if side_matches(q, rm, specials):
            out.append(q)
            if limit and len(out) >= limit:
                break
    return out


def instantiate(fam: ResidueFamily, rn: int) -> list[SurfaceConfig]:
    """All configurations of bidegree ``(fam.rm, rn)`` fitting the family."""
    if not fam.admits(fam.rm, rn):
        return []
    single = Partition((fam.rm,))
    zeros = _side_instances(rn, fam.rm, fam.zero_specials)
    poles = _side_instances(rn, fam.rm, fam.pole_specials)
    return [SurfaceConfig(FunctionDatum(single, single), FunctionDatum(z, p))
            for z, p in product(zeros, poles)]


def admissible_degrees(fam: ResidueFamily, count: int = 3, limit: int = 200) -> list[int]:
    """The ``count`` smallest rn at which the family has an instance."""
    out = []
    for rn in range(fam.rm, limit + 1):
        if not fam.admits(fam.rm, rn):
            continue
        if (_side_instances(rn, fam.rm, fam.zero_specials, limit=1)
                and _side_instances(rn, fam.rm, fam.pole_specials, limit=1)):
            out.append(rn)
            if len(out) == count:
                break
    return out
