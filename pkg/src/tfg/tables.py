"""Reproduce the published partition tables from the exhaustive search.

Each check compares a golden copy of a table against computed output and
separates two kinds of difference:

* ``missing``: a published row that the search does not produce.  This is
  a hard failure.
* ``extra``: a computed class the table does not list.  Tables are stated up
  to symmetry and degeneration, so these are informational.

For the residue families a table row is a pattern rather than a class.  There
``missing`` collects pattern instances that fail to have genus one, and
``unmatched`` collects genus-one classes no pattern accounts for, which is a
failure of the completeness claim the table makes.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import gcd

from .classifier import (
    GenusOneClass,
    enumerate_genus_one,
    exceptional_bidegrees,
    is_exceptional,
    side_gcd_ok,
    symmetry_orbit,
)
from .divisor import (
    FunctionDatum,
    Partition,
    SurfaceConfig,
    ValidationError,
    _partition_tuples,
    validate_config,
)
from .families import (
    RESIDUE_FAMILIES,
    UNMATCHED,
    admissible_degrees,
    instantiate,
    match_family,
)
from .genus import geometric_genus

__all__ = [
    "TABLE_IDS",
    "TableReport",
    "UnknownTable",
    "golden_tables",
    "parse_row",
    "verify_tables",
]

PROP_TABLES = ("prop2.8", "prop2.9", "prop2.10", "prop2.11", "prop2.12")
TABLE_IDS = PROP_TABLES + ("families2.14", "prop2.15", "prop2.4", "exceptional2.16")

#: bidegrees scanned for classes of a table's shape outside its stated list
SCAN_MAX_RN = 12
R1_DEGREES = (2, 3, 4, 6)


class UnknownTable(ValueError):
    pass


@dataclass
class TableReport:
    table: str
    expected: int
    matched: int
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    unmatched: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing and not self.unmatched

    def summary(self) -> str:
        return f"{self.table}: {self.matched}/{self.expected} rows matched"

    def to_dict(self) -> dict:
        return {
            "table": self.table,
            "ok": self.ok,
            "summary": self.summary(),
            "expected": self.expected,
            "matched": self.matched,
            "missing": self.missing,
            "unmatched": self.unmatched,
            "extra": self.extra,
            "notes": self.notes,
        }

    def lines(self) -> list[str]:
        out = [self.summary()]
        out += [f"  missing: {x}" for x in self.missing]
        out += [f"  unmatched: {x}" for x in self.unmatched]
        out += [f"  extra (informational): {x}" for x in self.extra]
        out += [f"  note: {x}" for x in self.notes]
        return out


@lru_cache(maxsize=None)
def golden_tables() -> dict:
    text = resources.files("tfg").joinpath("data/tables.json").read_text(encoding="utf-8")
    return json.loads(text)["tables"]


_ROW = re.compile(r"^\s*(\[[\d,\s]*\])\s*(\[[\d,\s]*\])\s*,\s*(\[[\d,\s]*\])\s*(\[[\d,\s]*\])\s*$")


def parse_row(text: str) -> SurfaceConfig:
    """Read ``"[fz][gz], [fp][gp]"`` into a configuration."""
    m = _ROW.match(text)
    if not m:
        raise ValueError(f"cannot parse table row {text!r}")
    fz, gz, fp, gp = (Partition.of(*json.loads(g)) for g in m.groups())
    return SurfaceConfig(FunctionDatum(fz, fp), FunctionDatum(gz, gp))


# --- proposition tables ------------------------------------------------------

def _pole_shape_ok(cls: GenusOneClass, shape) -> bool:
    """Some orientation has defects (0, r) and the given (k', l') on the pole side."""
    r = cls.r
    for c in symmetry_orbit(cls.config()):
        if c.rm > c.rn:
            continue
        o = GenusOneClass(c.f.zeros, c.g.zeros, c.f.poles, c.g.poles)
        if o.defects == (0, r) and (len(c.f.poles), len(c.g.poles)) == tuple(shape):
            return True
    return False


def _in_table(cls: GenusOneClass, shape) -> bool:
    return side_gcd_ok(cls) and _pole_shape_ok(cls, shape)


def _verify_prop(table_id: str, jobs: int) -> TableReport:
    spec = golden_tables()[table_id]
    rows = [(tuple(bd), text) for bd, text in spec["rows"]]
    bidegrees = [tuple(b) for b in spec["bidegrees"]]
    shape = spec["pole_shape"]
    computed = {bd: set(enumerate_genus_one(*bd, jobs=jobs)) for bd in bidegrees}
    report = TableReport(table_id, expected=len(rows), matched=0)
    golden = set()
    for bd, text in rows:
        cfg = parse_row(text)
        label = f"({bd[0]},{bd[1]}) {text}"
        if (cfg.rm, cfg.rn) != bd or geometric_genus(cfg) != 1:
            report.missing.append(f"{label} (not a genus-one configuration)")
            continue
        cls = GenusOneClass.from_config(cfg)
        golden.add(cls)
        if cls in computed.get(bd, ()):
            report.matched += 1
            if not _in_table(cls, shape):
                report.notes.append(f"{label} does not meet the table's hypotheses")
        else:
            report.missing.append(label)
    for bd in bidegrees:
        for cls in sorted(computed[bd], key=GenusOneClass.sort_key):
            if cls not in golden and _in_table(cls, shape):
                report.extra.append(str(cls))
    for rn in range(1, SCAN_MAX_RN + 1):
        for rm in range(1, rn + 1):
            if (rm, rn) in bidegrees:
                continue
            hits = [c for c in enumerate_genus_one(rm, rn, jobs=jobs) if _in_table(c, shape)]
            for cls in hits:
                report.extra.append(f"{cls} (bidegree outside the stated list)")
    return report


# --- residue families, r = 1 -------------------------------------------------

def _r1_rows():
    """The r = 1 rows keyed by (m, n mod m)."""
    return {(f.rm, f.rn_residue): f for f in RESIDUE_FAMILIES if f.source.startswith("§2.14")}


def _verify_r1(max_n: int) -> TableReport:
    """Every k = k' = 1 genus-one class with r = 1 and rn <= max_n against the patterns.

    With ``f = [m]/[m]`` the defect of a side depends on that side alone, so a
    class has genus one exactly when its zero side has defect 0 and its pole
    side defect 1.  Checking the two side sets against the zero and pole
    patterns covers every class without forming the products.
    """
    rows = _r1_rows()
    report = TableReport("families2.14", expected=0, matched=0)
    n_classes = 0
    for m in R1_DEGREES:
        for n in range(m + 1, max_n + 1):
            if gcd(m, n) != 1:
                continue
            fam = rows.get((m, n % m))
            report.expected += 1
            if fam is None:
                report.missing.append(f"({m},{n}): no pattern for n = {n % m} mod {m}")
                continue
            # every special of an r = 1 row has modulus m, so matching a side
            # is equality of the sorted nonzero residues
            zero_res = sorted(a for a, _ in fam.zero_specials)
            pole_res = sorted(a for a, _ in fam.pole_specials)
            gcds = [gcd(m, x) for x in range(n + 1)]
            zero_side, pole_side = 0, 0
            bad = False
            for q in _partition_tuples(n):
                two_def = (len(q) - 1) * m + 1 - sum(gcds[x] for x in q)
                res = sorted(x % m for x in q if x % m)
                in_zero = res == zero_res
                in_pole = res == pole_res
                if two_def == 0:
                    zero_side += 1
                elif two_def == 2:
                    pole_side += 1
                if in_zero != (two_def == 0):
                    bad = True
                    target = report.unmatched if two_def == 0 else report.missing
                    target.append(f"({m},{n}) zero side [{m}]{Partition(q)}: defect {two_def / 2:g}")
                if in_pole != (two_def == 2):
                    bad = True
                    target = report.unmatched if two_def == 2 else report.missing
                    target.append(f"({m},{n}) pole side [{m}]{Partition(q)}: defect {two_def / 2:g}")
            n_classes += zero_side * pole_side
            if not bad:
                report.matched += 1
    report.notes.append(f"bidegrees (m,n), m in {list(R1_DEGREES)}, n <= {max_n}; "
                        f"{n_classes} genus-one classes accounted for")
    return report


# --- residue families, r > 1 -------------------------------------------------

def _verify_residue(table_id: str, prefix: str, jobs: int) -> TableReport:
    report = TableReport(table_id, expected=0, matched=0)
    for fam in RESIDUE_FAMILIES:
        if not fam.source.startswith(prefix):
            continue
        for rn in admissible_degrees(fam, count=3):
            report.expected += 1
            computed = set(enumerate_genus_one(fam.rm, rn, jobs=jobs))
            ok, skipped, count = True, 0, 0
            for cfg in instantiate(fam, rn):
                try:
                    validate_config(cfg)
                except ValidationError:
                    skipped += 1
                    continue
                count += 1
                label = f"{fam.source} ({fam.rm},{rn}) {cfg.brackets()}"
                if geometric_genus(cfg) != 1:
                    report.missing.append(f"{label}: genus {geometric_genus(cfg)}")
                    ok = False
                    continue
                cls = GenusOneClass.from_config(cfg)
                if cls not in computed:
                    report.missing.append(f"{label}: not found by the search")
                    ok = False
                    continue
                tag = match_family(cls)
                if tag.source != fam.source:
                    report.unmatched.append(f"{label}: tagged {tag}")
                    ok = False
            if count == 0:
                report.missing.append(f"{fam.source} ({fam.rm},{rn}): no valid instance")
                ok = False
            if skipped:
                report.notes.append(f"{fam.source} ({fam.rm},{rn}): "
                                    f"{skipped} instances with a common divisor skipped")
            if ok:
                report.matched += 1
            for cls in sorted(computed, key=GenusOneClass.sort_key):
                if cls.shape[0] == 1 and cls.shape[2] == 1 and match_family(cls) == UNMATCHED:
                    report.extra.append(f"{cls} (k = k' = 1, no pattern)")
    report.extra = sorted(set(report.extra))
    return report


# --- exceptional families ----------------------------------------------------

def _verify_exceptional(jobs: int, max_rn: int = 10) -> TableReport:
    from .models import family_catalog

    catalog = family_catalog()
    report = TableReport("exceptional2.16", expected=len(catalog), matched=0)
    for entry in catalog:
        cfg = entry.config
        label = f"{entry.tag.source} ({cfg.rm},{cfg.rn}) {cfg.brackets()}"
        try:
            validate_config(cfg)
        except ValidationError as exc:
            report.missing.append(f"{label}: {exc}")
            continue
        if geometric_genus(cfg) != 1:
            report.missing.append(f"{label}: genus {geometric_genus(cfg)}")
            continue
        cls = GenusOneClass.from_config(cfg)
        if cls not in set(enumerate_genus_one(*cls.bidegree, jobs=jobs)):
            report.missing.append(f"{label}: not found by the search")
            continue
        tag = match_family(cls)
        if tag.source != entry.tag.source:
            report.unmatched.append(f"{label}: tagged {tag}")
            continue
        report.matched += 1
    rows = {(e.config.rm, e.config.rn) for e in catalog}
    for bd in sorted(rows):
        for cls in enumerate_genus_one(*bd, jobs=jobs):
            if is_exceptional(cls) and match_family(cls) == UNMATCHED:
                report.extra.append(f"{cls} (exceptional, no row)")
    found = exceptional_bidegrees(max_rn, jobs=jobs)
    for bd in sorted(found - rows):
        report.extra.append(f"({bd[0]},{bd[1]}) admits exceptional classes but has no row")
    for bd in sorted(rows - found):
        if bd[1] <= max_rn:
            report.missing.append(f"({bd[0]},{bd[1]}): no exceptional class found by the search")
    report.notes.append(f"exceptional bidegrees searched up to rn = {max_rn}")
    return report


def verify_tables(table_id: str, jobs: int = 1, max_n: int = 50) -> list[TableReport]:
    """Reports for one table id, or for all of them with ``"all"``."""
    if table_id == "all":
        return [r for t in TABLE_IDS for r in verify_tables(t, jobs, max_n)]
    if table_id in PROP_TABLES:
        return [_verify_prop(table_id, jobs)]
    if table_id == "families2.14":
        return [_verify_r1(max_n)]
    if table_id == "prop2.15":
        return [_verify_residue(table_id, "Prop2.15", jobs)]
    if table_id == "prop2.4":
        return [_verify_residue(table_id, "Prop2.4", jobs)]
    if table_id == "exceptional2.16":
        return [_verify_exceptional(jobs)]
    raise UnknownTable(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)} or all")
