"""Divisor data for the curve ``t*f(x) = g(y)``.

A rational function on P^1 is described here only by the multiplicities of
its zeros and of its poles.  The two multisets are :class:`Partition` objects
of the same integer, the degree of the function.  A :class:`SurfaceConfig`
pairs the data of ``f`` (on the curve C) and ``g`` (on the curve D) and knows
the bidegree ``(rm, rn)`` together with ``r = gcd(rm, rn)`` and the coprime
parts ``m``, ``n``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from functools import reduce
from math import gcd
from typing import Iterator

__all__ = [
    "Partition",
    "FunctionDatum",
    "SurfaceConfig",
    "ValidationError",
    "ErrorKind",
    "delta",
    "delta_pairsum",
    "partitions_of",
    "validate_config",
    "config_from_dict",
    "config_to_dict",
    "load_config",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A multiset of positive integers, stored nonincreasing."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


@dataclass(frozen=True)
class FunctionDatum:
    """Zero and pole multiplicities of one rational function.

    Equal sums are not enforced here; :func:`validate_config` reports a
    mismatch as :attr:`ErrorKind.DEGREE_MISMATCH`.
    """

    zeros: Partition
    poles: Partition

    @classmethod
    def of(cls, zeros, poles) -> "FunctionDatum":
        return cls(Partition(tuple(zeros)), Partition(tuple(poles)))

    @property
    def degree(self) -> int:
        return self.zeros.total

    def all_parts(self) -> tuple[int, ...]:
        return self.zeros.parts + self.poles.parts

    def inverse(self) -> "FunctionDatum":
        return FunctionDatum(self.poles, self.zeros)

    def __str__(self) -> str:
        return f"{self.zeros}/{self.poles}"


@dataclass(frozen=True)
class SurfaceConfig:
    f: FunctionDatum
    g: FunctionDatum
    genus_C: int = 0
    genus_D: int = 0
    characteristic: int = 0
    validated: bool = field(default=False, compare=False)

    @classmethod
    def of(cls, fz, fp, gz, gp, **kw) -> "SurfaceConfig":
        """Shorthand: ``SurfaceConfig.of([2], [1, 1], [3], [2, 1])``."""
        return cls(FunctionDatum.of(fz, fp), FunctionDatum.of(gz, gp), **kw)

    @property
    def rm(self) -> int:
        return self.f.degree

    @property
    def rn(self) -> int:
        return self.g.degree

    @property
    def r(self) -> int:
        return gcd(self.rm, self.rn)

    @property
    def m(self) -> int:
        return self.rm // self.r

    @property
    def n(self) -> int:
        return self.rn // self.r

    @property
    def shape(self) -> tuple[int, int, int, int]:
        """``(k, l, k', l')``: numbers of zeros of f, zeros of g, poles of f, poles of g."""
        return (len(self.f.zeros), len(self.g.zeros), len(self.f.poles), len(self.g.poles))

    def all_parts(self) -> tuple[int, ...]:
        return self.f.all_parts() + self.g.all_parts()

    def brackets(self) -> str:
        """Bracket notation ``[m_i][n_j], [m'_i][n'_j]``."""
        return f"{self.f.zeros}{self.g.zeros}, {self.f.poles}{self.g.poles}"

    def __str__(self) -> str:
        return f"({self.rm},{self.rn}) {self.brackets()}"


class ErrorKind(enum.Enum):
    DEGREE_MISMATCH = "DegreeMismatch"
    COMMON_DIVISOR = "CommonDivisor"
    CHARACTERISTIC_DIVIDES = "CharacteristicDivides"
    EMPTY_PARTITION = "EmptyPartition"


class ValidationError(ValueError):
    def __init__(self, kind: ErrorKind, detail: str):
        super().__init__(f"{kind.value}: {detail}")
        self.kind = kind
        self.detail = detail


def delta(a: int, b: int) -> int:
    """Genus drop ``((a-1)(b-1) + gcd(a,b) - 1) / 2`` at a meeting of orders a and b."""
    # numerator is always even: if a, b both even the gcd is even too
    return ((a - 1) * (b - 1) + gcd(a, b) - 1) // 2


def delta_pairsum(P, Q) -> int:
    """Sum of :func:`delta` over all ordered pairs of parts of ``P`` and ``Q``."""
    return sum(delta(p, q) for p in P for q in Q)


def partitions_of(n: int) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in reverse-lexicographic order.

    ``[n]`` comes first and ``[1, ..., 1]`` last; ``n = 0`` yields the empty
    partition.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    for parts in _partition_tuples(n):
        yield Partition(parts)


def _partition_tuples(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    a = [n]
    while True:
        yield tuple(a)
        # drop trailing ones, decrement the last part > 1, refill greedily
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        x = a.pop() - 1
        rest = ones + 1
        while rest > x:
            a.append(x)
            rest -= x
        a.append(x)
        if rest:
            a.append(rest)


def _gcd_all(values) -> int:
    return reduce(gcd, values, 0)


def validate_config(cfg: SurfaceConfig) -> SurfaceConfig:
    """Check the hypotheses of the genus formula; return ``cfg`` marked validated.

    Raises :class:`ValidationError` with the first violated kind, checked in
    the order: empty partition, degree mismatch, common divisor, characteristic.
    """
    for name, fd in (("f", cfg.f), ("g", cfg.g)):
        if not fd.zeros.parts or not fd.poles.parts:
            raise ValidationError(ErrorKind.EMPTY_PARTITION,
                                  f"{name} must have at least one zero and one pole")
    for name, fd in (("f", cfg.f), ("g", cfg.g)):
        if fd.zeros.total != fd.poles.total:
            raise ValidationError(
                ErrorKind.DEGREE_MISMATCH,
                f"{name}: zeros sum to {fd.zeros.total}, poles sum to {fd.poles.total}")
    if cfg.genus_C < 0 or cfg.genus_D < 0 or cfg.characteristic < 0:
        raise ValueError("genera and characteristic must be nonnegative")
    common = _gcd_all(cfg.all_parts())
    if common != 1:
        raise ValidationError(ErrorKind.COMMON_DIVISOR,
                              f"all multiplicities are divisible by {common}")
    p = cfg.characteristic
    if p > 0:
        bad = sorted({a for a in cfg.all_parts() if gcd(a, p) != 1})
        if bad:
            raise ValidationError(ErrorKind.CHARACTERISTIC_DIVIDES,
                                  f"multiplicities {bad} are not prime to {p}")
    return cfg if cfg.validated else replace(cfg, validated=True)


# --- JSON ------------------------------------------------------------------

_TOP_KEYS = {"genus_C", "genus_D", "characteristic", "f", "g"}
_FN_KEYS = {"zeros", "poles"}


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{what} must be an integer, got {value!r}")
    return value


def _datum_from_dict(d, name: str) -> FunctionDatum:
    if not isinstance(d, dict):
        raise ValueError(f"'{name}' must be an object")
    unknown = set(d) - _FN_KEYS
    if unknown:
        raise ValueError(f"unknown fields in '{name}': {sorted(unknown)}")
    missing = _FN_KEYS - set(d)
    if missing:
        raise ValueError(f"missing fields in '{name}': {sorted(missing)}")
    parts = {}
    for key in ("zeros", "poles"):
        if not isinstance(d[key], list):
            raise ValueError(f"'{name}.{key}' must be a list")
        parts[key] = Partition(tuple(_int(v, f"{name}.{key} entry") for v in d[key]))
    return FunctionDatum(parts["zeros"], parts["poles"])


def config_from_dict(d: dict) -> SurfaceConfig:
    """Build a config from the JSON object form; unknown fields are rejected."""
    if not isinstance(d, dict):
        raise ValueError("config must be a JSON object")
    unknown = set(d) - _TOP_KEYS
    if unknown:
        raise ValueError(f"unknown config fields: {sorted(unknown)}")
    for key in ("f", "g"):
        if key not in d:
            raise ValueError(f"missing config field '{key}'")
    return SurfaceConfig(
        f=_datum_from_dict(d["f"], "f"),
        g=_datum_from_dict(d["g"], "g"),
        genus_C=_int(d.get("genus_C", 0), "genus_C"),
        genus_D=_int(d.get("genus_D", 0), "genus_D"),
        characteristic=_int(d.get("characteristic", 0), "characteristic"),
    )


def config_to_dict(cfg: SurfaceConfig) -> dict:
    return {
        "genus_C": cfg.genus_C,
        "genus_D": cfg.genus_D,
        "characteristic": cfg.characteristic,
        "f": {"zeros": list(cfg.f.zeros.parts), "poles": list(cfg.f.poles.parts)},
        "g": {"zeros": list(cfg.g.zeros.parts), "poles": list(cfg.g.poles.parts)},
    }


def load_config(path) -> SurfaceConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))
