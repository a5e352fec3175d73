"""Exhaustive search for genus-one configurations over P^1 x P^1.

Every configuration of bidegree ``(rm, rn)`` splits into a *zero side*
``(f.zeros, g.zeros)`` and a *pole side* ``(f.poles, g.poles)``, each a pair of
partitions of ``(rm, rn)``.  Writing ``defect = delta_max - delta_pairsum`` for
a side, the genus is ``1 - r + defect0 + defectInf``; so the genus-one
configurations are exactly the joins of a side with defect ``v`` and a side
with defect ``r - v``.

The search evaluates the defect of every side at once.  With ``C`` the
matrix of part counts of the partitions of ``rm`` (one row per partition),
``Gcd[a, b] = gcd(a, b)`` and ``D`` the count matrix for ``rn``, the pairwise
gcd sums are ``C @ Gcd @ D.T`` and::

    2*defect = (l - 1)*rm + (k - 1)*rn + r - sum_{i,j} gcd(m_i, n_j)

Sides are then bucketed by defect and complementary buckets are joined.
Nothing about which defects can occur is assumed in the default mode; the
``fast`` mode keeps only the defects ``0``, ``r/2`` and ``r``.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .divisor import (
    FunctionDatum,
    Partition,
    SurfaceConfig,
    _partition_tuples,
    delta,
    delta_pairsum,
    partitions_of,
)
from .genus import delta_max

__all__ = [
    "GenusOneClass",
    "GuardExceeded",
    "MAX_DEGREE",
    "symmetry_orbit",
    "canonicalize",
    "enumerate_genus_one",
    "exceptional_bidegrees",
    "brute_delta_max",
    "genus_census",
    "side_gcd_ok",
    "is_exceptional",
    "classes_to_json",
]

#: desk-scale bound on degrees for the exhaustive routines
MAX_DEGREE = 30
#: bound on the number of classes materialized by one enumeration
MAX_CLASSES = 2_000_000

_CHUNK_ENTRIES = 1 << 22


class GuardExceeded(ValueError):
    """An input is beyond the sizes the exhaustive routines accept."""


# --- symmetry ----------------------------------------------------------------

def _swap_zero_pole(cfg: SurfaceConfig) -> SurfaceConfig:
    # t -> 1/t together with f -> 1/f, g -> 1/g
    return SurfaceConfig(cfg.f.inverse(), cfg.g.inverse(), cfg.genus_C, cfg.genus_D,
                         cfg.characteristic, cfg.validated)


def _swap_fg(cfg: SurfaceConfig) -> SurfaceConfig:
    # x <-> y together with t -> 1/t
    return SurfaceConfig(cfg.g, cfg.f, cfg.genus_D, cfg.genus_C,
                         cfg.characteristic, cfg.validated)


def symmetry_orbit(cfg: SurfaceConfig) -> list[SurfaceConfig]:
    """The images of ``cfg`` under zero/pole exchange and f/g exchange."""
    out = []
    for c in (cfg, _swap_fg(cfg)):
        for d in (c, _swap_zero_pole(c)):
            if d not in out:
                out.append(d)
    return out


def _part_key(p: Partition) -> tuple[int, ...]:
    # larger parts first: [4] < [3,1] < [2,2] < [2,1,1] < [1,1,1,1]
    return tuple(-x for x in p.parts)


def _canonical_key(cfg: SurfaceConfig):
    d0 = delta_pairsum(cfg.f.zeros, cfg.g.zeros)
    dinf = delta_pairsum(cfg.f.poles, cfg.g.poles)
    return (d0 < dinf, _part_key(cfg.f.zeros), _part_key(cfg.g.zeros),
            _part_key(cfg.f.poles), _part_key(cfg.g.poles))


def canonicalize(cfg: SurfaceConfig) -> SurfaceConfig:
    """Canonical representative of the symmetry class of ``cfg``.

    The representative has ``deg f <= deg g`` and ``delta0 >= deltaInf``
    (equivalently ``defect0 <= defectInf``); remaining ties are broken by the
    partition tuple ``(f.zeros, g.zeros, f.poles, g.poles)`` in the order
    produced by :func:`~tfg.divisor.partitions_of`.
    """
    if cfg.genus_C or cfg.genus_D:
        raise ValueError("canonicalize is defined for rational base curves only")
    candidates = [c for c in symmetry_orbit(cfg) if c.rm <= c.rn]
    return min(candidates, key=_canonical_key)


# --- classes ---------------------------------------------------------------

@dataclass(frozen=True)
class GenusOneClass:
    """A canonical genus-one configuration over P^1 x P^1."""

    zerosF: Partition
    zerosG: Partition
    polesF: Partition
    polesG: Partition

    @classmethod
    def from_config(cls, cfg: SurfaceConfig, check: bool = True) -> "GenusOneClass":
        c = canonicalize(cfg)
        out = cls(c.f.zeros, c.g.zeros, c.f.poles, c.g.poles)
        if check and out.defects[0] + out.defects[1] != out.r:
            raise ValueError(f"{cfg} does not have genus one")
        return out

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.zerosF.total, self.zerosG.total)

    @property
    def r(self) -> int:
        return gcd(*self.bidegree)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return (len(self.zerosF), len(self.zerosG), len(self.polesF), len(self.polesG))

    @property
    def defects(self) -> tuple[int, int]:
        rm, rn = self.bidegree
        r = gcd(rm, rn)
        dmax = delta_max(r, rm // r, rn // r)
        return (dmax - delta_pairsum(self.zerosF, self.zerosG),
                dmax - delta_pairsum(self.polesF, self.polesG))

    def config(self) -> SurfaceConfig:
        return SurfaceConfig(FunctionDatum(self.zerosF, self.polesF),
                             FunctionDatum(self.zerosG, self.polesG))

    def sort_key(self):
        return (self.bidegree, _part_key(self.zerosF), _part_key(self.zerosG),
                _part_key(self.polesF), _part_key(self.polesG))

    def brackets(self) -> str:
        return f"{self.zerosF}{self.zerosG}, {self.polesF}{self.polesG}"

    def to_dict(self) -> dict:
        return {
            "bidegree": list(self.bidegree),
            "zerosF": list(self.zerosF.parts),
            "zerosG": list(self.zerosG.parts),
            "polesF": list(self.polesF.parts),
            "polesG": list(self.polesG.parts),
            "shape": list(self.shape),
            "defects": list(self.defects),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GenusOneClass":
        return cls(*(Partition(tuple(d[key]))
                     for key in ("zerosF", "zerosG", "polesF", "polesG")))

    def __str__(self) -> str:
        rm, rn = self.bidegree
        return f"({rm},{rn}) {self.brackets()}"


def classes_to_json(classes: Iterable[GenusOneClass]) -> str:
    return json.dumps([c.to_dict() for c in classes], separators=(",", ":"))


def side_gcd_ok(cls: GenusOneClass) -> bool:
    """The per-side coprimality hypothesis ``(side parts, r) = 1``.

    It is imposed on the side carrying the larger defect; when both defects
    are equal either side may carry it.
    """
    d0, dinf = cls.defects
    r = cls.r
    sides = []
    if d0 >= dinf:
        sides.append(cls.zerosF.parts + cls.zerosG.parts)
    if dinf >= d0:
        sides.append(cls.polesF.parts + cls.polesG.parts)
    return any(np.gcd.reduce(np.array(s + (r,))) == 1 for s in sides)


def is_exceptional(cls: GenusOneClass) -> bool:
    """True if f has several zeros or poles however the class is oriented."""
    k, l, kp, lp = cls.shape
    multi_f = k > 1 or kp > 1
    if cls.bidegree[0] == cls.bidegree[1]:
        return multi_f and (l > 1 or lp > 1)
    return multi_f


# --- vectorized side defects -----------------------------------------------

@lru_cache(maxsize=64)
def _partition_table(n: int):
    """Partitions of ``n`` with part-count matrix, lengths and gcds."""
    parts = list(_partition_tuples(n))
    counts = np.zeros((len(parts), max(n, 1)), dtype=np.float64)
    lengths = np.empty(len(parts), dtype=np.int64)
    gcds = np.empty(len(parts), dtype=np.int64)
    for i, p in enumerate(parts):
        lengths[i] = len(p)
        g = 0
        for x in p:
            counts[i, x - 1] += 1
            g = gcd(g, x)
        gcds[i] = g
    return parts, counts, lengths, gcds


def _two_defects(rm: int, rn: int, start: int, stop: int) -> np.ndarray:
    """``2*defect`` of every side whose f-partition index lies in ``[start, stop)``."""
    r = gcd(rm, rn)
    _, ca, ka, _ = _partition_table(rm)
    _, cb, lb, _ = _partition_table(rn)
    kernel = np.array([[gcd(a, b) for b in range(1, rn + 1)]
                       for a in range(1, rm + 1)], dtype=np.float64)
    # float64 products are exact here: every entry is far below 2**53
    g = np.rint((ca[start:stop] @ kernel) @ cb.T).astype(np.int64)
    k = ka[start:stop, None]
    return (lb[None, :] - 1) * rm + (k - 1) * rn + r - g


def _chunks(rm: int, rn: int) -> list[tuple[int, int]]:
    na = len(_partition_table(rm)[0])
    nb = len(_partition_table(rn)[0])
    step = max(1, _CHUNK_ENTRIES // max(nb, 1))
    return [(s, min(s + step, na)) for s in range(0, na, step)]


def _chunk_min(args) -> int:
    rm, rn, start, stop = args
    return int(_two_defects(rm, rn, start, stop).min())


def _chunk_entries(args):
    rm, rn, start, stop, allowed, bound = args
    td = _two_defects(rm, rn, start, stop)
    if allowed is not None:
        mask = np.isin(td, np.array(allowed, dtype=np.int64))
    else:
        mask = td <= bound
    i, j = np.nonzero(mask)
    return i + start, j, td[i, j] // 2


def _map(func, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _side_buckets(rm: int, rn: int, fast: bool = False, jobs: int = 1):
    """Map ``defect -> (f_index, g_index)`` arrays for the sides that can join.

    Default mode first finds the minimum defect over all sides; a side with
    defect above ``r - min`` has no partner and is dropped.
    """
    r = gcd(rm, rn)
    chunks = _chunks(rm, rn)
    if fast:
        allowed = (0, r, 2 * r) if r % 2 == 0 else (0, 2 * r)
        tasks = [(rm, rn, s, e, allowed, None) for s, e in chunks]
    else:
        lowest = min(_map(_chunk_min, [(rm, rn, s, e) for s, e in chunks], jobs))
        bound = 2 * r - lowest
        tasks = [(rm, rn, s, e, None, bound) for s, e in chunks]
    parts = _map(_chunk_entries, tasks, jobs)
    ii = np.concatenate([p[0] for p in parts])
    jj = np.concatenate([p[1] for p in parts])
    dd = np.concatenate([p[2] for p in parts])
    order = np.lexsort((jj, ii, dd))
    ii, jj, dd = ii[order], jj[order], dd[order]
    buckets = {}
    for v in np.unique(dd):
        sel = dd == v
        buckets[int(v)] = (ii[sel], jj[sel])
    return buckets


def _joins(r: int, buckets):
    """Pairs of buckets ``(v, r - v)`` with ``v <= r - v``."""
    for v in sorted(buckets):
        w = r - v
        if v <= w and w in buckets:
            yield v, w


# --- enumeration -------------------------------------------------------------

def _check_degrees(rm: int, rn: int):
    if rm < 1 or rn < 1:
        raise ValueError("degrees must be positive")
    if rm > rn:
        raise ValueError("expected rm <= rn")
    if rn > MAX_DEGREE:
        raise GuardExceeded(f"degree {rn} exceeds the limit {MAX_DEGREE}")


def enumerate_genus_one(rm: int, rn: int, side_gcd_filter: bool = False,
                        fast: bool = False, jobs: int = 1) -> list[GenusOneClass]:
    """All canonical genus-one classes of bidegree ``(rm, rn)`` with global gcd 1.

    With ``side_gcd_filter`` the classes must also satisfy :func:`side_gcd_ok`.
    ``fast`` restricts the search to the defects ``0, r/2, r`` and must give
    the same answer.  The result is sorted and independent of ``jobs``.
    """
    _check_degrees(rm, rn)
    buckets = _side_buckets(rm, rn, fast=fast, jobs=jobs)
    return _materialize(rm, rn, buckets, side_gcd_filter)


def _materialize(rm, rn, buckets, side_gcd_filter, tables=None):
    r = gcd(rm, rn)
    pa, _, _, ga = tables[0] if tables else _partition_table(rm)
    pb, _, _, gb = tables[1] if tables else _partition_table(rn)
    found = set()
    for v, w in _joins(r, buckets):
        ai, aj = buckets[v]
        bi, bj = buckets[w]
        sa = np.gcd(ga[ai], gb[aj])
        sb = np.gcd(ga[bi], gb[bj])
        if len(sa) * len(sb) > 50 * MAX_CLASSES:
            raise GuardExceeded(f"({rm},{rn}): join of size {len(sa) * len(sb)} is too large")
        ok = np.gcd.outer(sa, sb) == 1
        if side_gcd_filter:
            if v < w:
                ok &= (np.gcd(sb, r) == 1)[None, :]
            else:
                ok &= (np.gcd(sa, r) == 1)[:, None] | (np.gcd(sb, r) == 1)[None, :]
        x, y = np.nonzero(ok)
        if len(found) + len(x) > MAX_CLASSES:
            raise GuardExceeded(f"({rm},{rn}) has more than {MAX_CLASSES} classes")
        simple = v < w and rm < rn
        for a, b in zip(x.tolist(), y.tolist()):
            fz, gz = pa[ai[a]], pb[aj[a]]
            fp, gp = pa[bi[b]], pb[bj[b]]
            if simple:
                found.add((fz, gz, fp, gp))
            else:
                c = canonicalize(SurfaceConfig.of(fz, fp, gz, gp))
                found.add((c.f.zeros.parts, c.g.zeros.parts, c.f.poles.parts, c.g.poles.parts))
    out = [GenusOneClass(*(Partition(p) for p in t)) for t in found]
    out.sort(key=GenusOneClass.sort_key)
    return out


def exceptional_bidegrees(max_rn: int, side_gcd_filter: bool = True,
                          jobs: int = 1) -> set[tuple[int, int]]:
    """Bidegrees ``rm <= rn <= max_rn`` carrying an exceptional genus-one class.

    A class is exceptional when f has more than one zero or pole in every
    orientation (see :func:`is_exceptional`).  The search is exhaustive over
    all sides; only the existence of a class is decided, so no class list is
    built.
    """
    if max_rn > MAX_DEGREE:
        raise GuardExceeded(f"max_rn={max_rn} exceeds the limit {MAX_DEGREE}")
    found = set()
    for rn in range(1, max_rn + 1):
        for rm in range(1, rn + 1):
            buckets = _side_buckets(rm, rn, jobs=jobs)
            if _has_exceptional(rm, rn, buckets, side_gcd_filter):
                found.add((rm, rn))
    return found


def _side_signatures(rm, rn, idx):
    """Distinct ``(multi f part, multi g part, side gcd)`` triples of a bucket."""
    _, _, ka, ga = _partition_table(rm)
    _, _, lb, gb = _partition_table(rn)
    i, j = idx
    sig = np.stack([(ka[i] > 1).astype(np.int64), (lb[j] > 1).astype(np.int64),
                    np.gcd(ga[i], gb[j])], axis=1)
    return {tuple(map(int, row)) for row in np.unique(sig, axis=0)} if len(sig) else set()


def _has_exceptional(rm, rn, buckets, side_gcd_filter) -> bool:
    r = gcd(rm, rn)
    for v, w in _joins(r, buckets):
        for fa, la, sa in _side_signatures(rm, rn, buckets[v]):
            for fb, lb, sb in _side_signatures(rm, rn, buckets[w]):
                if gcd(sa, sb) != 1:
                    continue
                if side_gcd_filter:
                    ok = gcd(sb, r) == 1 if v < w else (gcd(sa, r) == 1 or gcd(sb, r) == 1)
                    if not ok:
                        continue
                multi_f = fa or fb
                if rm == rn:
                    multi_f = multi_f and (la or lb)
                if multi_f:
                    return True
    return False


# --- census -----------------------------------------------------------------

def genus_census(rm: int, rn: int, genus_C: int = 0, genus_D: int = 0,
                 target: int = 1) -> int:
    """Number of configurations of bidegree ``(rm, rn)`` with global gcd 1 and
    geometric genus ``target``.

    Configurations are counted as ordered data ``(f, g)`` with no symmetry
    reduction, over base curves of the given genera.  Sides are grouped by
    their delta sum and only the gcd of each side is kept, so the count needs
    no list of configurations.
    """
    if rm < 1 or rn < 1:
        raise ValueError("degrees must be positive")
    if max(rm, rn) > MAX_DEGREE:
        raise GuardExceeded(f"degrees ({rm},{rn}) exceed the limit {MAX_DEGREE}")
    _, ca, _, ga = _partition_table(rm)
    _, cb, _, gb = _partition_table(rn)
    w = np.array([[delta(a, b) for b in range(1, rn + 1)] for a in range(1, rm + 1)],
                 dtype=np.float64)
    side = np.rint(ca @ w @ cb.T).astype(np.int64).ravel()
    side_gcd = np.gcd.outer(ga, gb).ravel()
    need = rm * genus_D + rn * genus_C + (rm - 1) * (rn - 1) - target
    tally = {}
    keys, counts = np.unique(np.stack([side, side_gcd], axis=1), axis=0, return_counts=True)
    for (v, g), c in zip(keys.tolist(), counts.tolist()):
        tally.setdefault(v, []).append((g, c))
    total = 0
    for v, items in tally.items():
        for g1, c1 in items:
            for g2, c2 in tally.get(need - v, ()):
                if gcd(g1, g2) == 1:
                    total += c1 * c2
    return total


# --- oracle -----------------------------------------------------------------

def brute_delta_max(r: int, m: int, n: int) -> int:
    """Maximum of ``delta_pairsum(P, Q)`` over all partitions P of rm, Q of rn.

    Every pair is evaluated: with ``w_P(q) = sum_p delta(p, q)`` the value of
    a pair is the sum of ``w_P`` over the parts of Q, taken for all Q at once
    as a product with the part-count matrix.
    """
    if gcd(m, n) != 1:
        raise ValueError(f"m={m} and n={n} must be coprime")
    rm, rn = r * m, r * n
    if max(rm, rn) > MAX_DEGREE:
        raise GuardExceeded(f"degrees ({rm},{rn}) exceed the limit {MAX_DEGREE}")
    qs = list(partitions_of(rn))
    counts = np.zeros((len(qs), rn), dtype=np.int64)
    for i, q in enumerate(qs):
        for x in q:
            counts[i, x - 1] += 1
    best = None
    for p in partitions_of(rm):
        w = np.array([sum(delta(a, q) for a in p) for q in range(1, rn + 1)], dtype=np.int64)
        top = int((counts @ w).max())
        best = top if best is None else max(best, top)
    return best
