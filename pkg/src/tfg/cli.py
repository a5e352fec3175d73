"""Command-line front end: ``tfg <subcommand> [options]``.

Exit codes: 0 success, 2 usage, 3 invalid input, 4 size guard exceeded,
5 table or oracle differences.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Callable, Optional

from .cache import ResultCache, cache_key
from .classifier import (
    GuardExceeded,
    MAX_DEGREE,
    brute_delta_max,
    enumerate_genus_one,
    exceptional_bidegrees,
)
from .divisor import ValidationError, config_to_dict, load_config, validate_config
from .families import match_family
from .genus import delta_max, genus_report
from .models import ModelError, ModelSpec, catalog_to_dicts, default_spec, emit_model, family_catalog
from .rank import c2_period, c2_sweep, mw_rank
from .tables import TABLE_IDS, UnknownTable, verify_tables

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_GUARD, EXIT_DIFF = 0, 2, 3, 4, 5
MAX_D_RANGE = 1_000_000


@dataclass
class CommandOutcome:
    exit_code: int
    payload: str = ""
    diagnostics: list[str] = field(default_factory=list)


class UsageError(Exception):
    pass


@dataclass
class _Result:
    """What a handler produces; rendering to a format happens afterwards."""

    obj: object
    columns: Optional[list[str]] = None
    rows: Optional[list[list]] = None
    text: Optional[str] = None
    exit_code: int = EXIT_OK
    warnings: list[str] = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --- rendering ----------------------------------------------------------------

def _render(result: _Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.obj, ensure_ascii=False, separators=(",", ":"))
    if fmt == "csv":
        if result.rows is None:
            raise UsageError("this command has no csv form; use json or pretty")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(result.columns)
        w.writerows(result.rows)
        return buf.getvalue().rstrip("\n")
    if result.text is not None:
        return result.text
    if result.rows is not None:
        return _pretty_table(result.columns, result.rows)
    return json.dumps(result.obj, ensure_ascii=False, indent=2)


def _pretty_table(columns, rows) -> str:
    cells = [list(map(str, columns))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _parts(p) -> str:
    return " ".join(map(str, p))


def _status(value) -> str:
    return "unknown" if value is None else str(value)


# --- handlers -----------------------------------------------------------------

def _config(args):
    try:
        cfg = load_config(args.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"config is not valid JSON: {exc}") from exc
    return validate_config(cfg)


def cmd_genus(args) -> _Result:
    report = genus_report(_config(args)).to_dict()
    cols = list(report)
    return _Result(report, cols, [[("" if report[c] is None else report[c]) for c in cols]],
                   text="\n".join(f"{k}: {v}" for k, v in report.items()))


def cmd_delta_max(args) -> _Result:
    value = delta_max(args.r, args.m, args.n)
    return _Result(value, ["r", "m", "n", "delta_max"], [[args.r, args.m, args.n, value]],
                   text=str(value))


def cmd_enumerate(args) -> _Result:
    classes = enumerate_genus_one(args.rm, args.rn, side_gcd_filter=args.side_gcd,
                                  fast=args.fast_defect_mode, jobs=args.jobs)
    objs = [c.to_dict() for c in classes]
    if args.families:
        for obj, c in zip(objs, classes):
            obj["family"] = match_family(c).to_dict()
    cols = ["rm", "rn", "zerosF", "zerosG", "polesF", "polesG", "shape", "defect0", "defectInf"]
    rows = [[*c.bidegree, _parts(c.zerosF), _parts(c.zerosG), _parts(c.polesF),
             _parts(c.polesG), _parts(c.shape), *c.defects] for c in classes]
    if args.families:
        cols.append("family")
        for row, obj in zip(rows, objs):
            row.append(obj["family"]["source"])
    text = "\n".join([f"{len(classes)} genus-one classes of bidegree ({args.rm},{args.rn})"]
                     + [f"{c.brackets()}" + (f"  {match_family(c)}" if args.families else "")
                        for c in classes])
    return _Result(objs, cols, rows, text=text)


def cmd_exceptional(args) -> _Result:
    found = sorted(exceptional_bidegrees(args.max_degree, jobs=args.jobs))
    return _Result([list(b) for b in found], ["rm", "rn"], [list(b) for b in found],
                   text=" ".join(f"({a},{b})" for a, b in found))


def _rank_rows(reports):
    return [[r.d, r.e_df, r.e_dg, r.c2, _status(r.mw_rank)] for r in reports]


def cmd_rank(args) -> _Result:
    cfg = _config(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = mw_rank(cfg, args.d)
    text = "\n".join([f"d: {report.d}", f"e_df: {report.e_df}", f"e_dg: {report.e_dg}",
                      f"c2: {report.c2}", f"c1: {_status(report.c1)}",
                      f"hom_rank: {_status(report.hom_rank)}",
                      f"mw_rank: {_status(report.mw_rank)}"])
    return _Result(report.to_dict(), ["d", "e_df", "e_dg", "c2", "mw_rank"],
                   _rank_rows([report]), text=text,
                   warnings=[str(w.message) for w in caught])


def _d_range(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError as exc:
        raise UsageError(f"--d-range expects A..B, got {text!r}") from exc
    if a < 1 or b < a:
        raise UsageError(f"--d-range needs 1 <= A <= B, got {text!r}")
    if b - a >= MAX_D_RANGE:
        raise GuardExceeded(f"--d-range spans more than {MAX_D_RANGE} values")
    return a, b


def cmd_c2(args) -> _Result:
    cfg = _config(args)
    a, b = _d_range(args.d_range)
    reports = c2_sweep(cfg, a, b)
    rows = _rank_rows(reports)
    return _Result([r.to_dict() for r in reports], ["d", "e_df", "e_dg", "c2", "mw_rank"], rows)


def cmd_period(args) -> _Result:
    cfg = _config(args)
    period = c2_period(cfg)
    L = lcm(*cfg.all_parts())
    obj = {"period": period, "lcm": L}
    return _Result(obj, ["period", "lcm"], [[period, L]], text=str(period))


def cmd_emit(args) -> _Result:
    if args.row is not None:
        catalog = family_catalog()
        if not 1 <= args.row <= len(catalog):
            raise UsageError(f"--row must be between 1 and {len(catalog)}")
        entry = catalog[args.row - 1]
        cfg, spec = entry.config, entry.spec
    else:
        if args.config is None:
            raise UsageError("emit needs --config or --row")
        cfg = _config(args)
        if args.points == "auto":
            spec = default_spec(cfg)
        else:
            try:
                with open(args.points, encoding="utf-8") as fh:
                    spec = ModelSpec.from_dict(json.load(fh))
            except OSError as exc:
                raise UsageError(f"cannot read points: {exc}") from exc
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ModelError(f"malformed points file: {exc}") from exc
    eq = emit_model(cfg, spec)
    return _Result({"equation": eq, "config": config_to_dict(cfg), "points": spec.to_dict()},
                   ["equation"], [[eq]], text=eq)


def cmd_catalog(args) -> _Result:
    entries = catalog_to_dicts()
    rows = [[e["tag"]["source"], f"({e['bidegree'][0]},{e['bidegree'][1]})", e["equation"],
             "; ".join(f"{a} != {b}" for a, b in e["points"]["constraints"])] for e in entries]
    return _Result(entries, ["family", "bidegree", "equation", "constraints"], rows)


def cmd_verify_tables(args) -> _Result:
    reports = verify_tables(args.table, jobs=args.jobs, max_n=args.max_n)
    ok = all(r.ok for r in reports)
    rows = [[r.table, r.matched, r.expected, len(r.missing), len(r.unmatched), len(r.extra),
             "ok" if r.ok else "FAIL"] for r in reports]
    text = "\n".join(line for r in reports for line in r.lines())
    return _Result([r.to_dict() for r in reports],
                   ["table", "matched", "expected", "missing", "unmatched", "extra", "status"],
                   rows, text=text, exit_code=EXIT_OK if ok else EXIT_DIFF)


def cmd_oracle_delta_max(args) -> _Result:
    if args.max > MAX_DEGREE:
        raise GuardExceeded(f"--max {args.max} exceeds the limit {MAX_DEGREE}")
    rows, bad = [], 0
    for r in range(1, args.max + 1):
        for m in range(1, args.max // r + 1):
            for n in range(1, args.max // r + 1):
                if gcd(m, n) != 1:
                    continue
                brute, formula = brute_delta_max(r, m, n), delta_max(r, m, n)
                bad += brute != formula
                rows.append([r, m, n, brute, formula, brute == formula])
    obj = {"checked": len(rows), "mismatches": [row[:5] for row in rows if not row[5]]}
    text = f"{len(rows) - bad}/{len(rows)} triples agree with the closed form"
    return _Result(obj, ["r", "m", "n", "brute", "formula", "agree"], rows, text=text,
                   exit_code=EXIT_OK if bad == 0 else EXIT_DIFF)


# subcommands whose payload depends only on their arguments
_CACHEABLE = {"enumerate", "exceptional", "verify-tables", "oracle-delta-max", "catalog"}


def _add_globals(p, suppress: bool):
    def default(value):
        return argparse.SUPPRESS if suppress else value
    p.add_argument("--format", choices=["json", "csv", "pretty"], default=default("json"),
                   help="output format (default json)")
    p.add_argument("--jobs", type=int, default=default(1), help="worker processes")
    p.add_argument("--cache-dir", default=default(None),
                   help="result cache directory (default: $TFG_CACHE_DIR, else no cache)")
    p.add_argument("--quiet", action="store_true", default=default(False),
                   help="suppress diagnostics on stderr")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tfg", description="Genus, genus-one classification and tower rank "
                                         "invariants of t*f(x) = g(y).")
    _add_globals(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, handler: Callable, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_globals(p, suppress=True)
        p.set_defaults(handler=handler)
        return p

    p = command("genus", cmd_genus, "genus report of a configuration")
    p.add_argument("--config", required=True, help="configuration JSON file")

    p = command("delta-max", cmd_delta_max, "closed-form delta_max(r, m, n)")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)

    p = command("enumerate", cmd_enumerate, "all genus-one classes of a bidegree")
    p.add_argument("--rm", type=int, required=True)
    p.add_argument("--rn", type=int, required=True)
    p.add_argument("--side-gcd", action="store_true",
                   help="require (parts of the larger-defect side, r) = 1")
    p.add_argument("--fast-defect-mode", action="store_true",
                   help="search only the defects 0, r/2 and r")
    p.add_argument("--families", action="store_true", help="tag each class with its family")

    p = command("exceptional", cmd_exceptional,
                "bidegrees with a genus-one class where f has several zeros or poles")
    p.add_argument("--max-degree", type=int, default=10)

    p = command("rank", cmd_rank, "rank invariants over k(t^(1/d))")
    p.add_argument("--config", required=True)
    p.add_argument("-d", type=int, required=True)

    p = command("c2", cmd_c2, "c2(d) over a range of d")
    p.add_argument("--config", required=True)
    p.add_argument("--d-range", required=True, help="inclusive range A..B")

    p = command("period", cmd_period, "minimal period of d -> c2(d)")
    p.add_argument("--config", required=True)

    p = command("emit", cmd_emit, "explicit equation of a configuration")
    p.add_argument("--config")
    p.add_argument("--points", default="auto", help="point labels JSON file, or auto")
    p.add_argument("--row", type=int, help="emit exceptional catalog row N instead")

    command("catalog", cmd_catalog, "the nine exceptional families")

    p = command("verify-tables", cmd_verify_tables, "compare computed output with the tables")
    p.add_argument("--table", default="all", help=f"one of {', '.join(TABLE_IDS)}, or all")
    p.add_argument("--max-n", type=int, default=50, help="largest rn for families2.14")

    p = command("oracle-delta-max", cmd_oracle_delta_max,
                "exhaustive delta_max against the closed form")
    p.add_argument("--max", type=int, default=20)
    return ap


def _cache_args(args) -> dict:
    skip = {"handler", "format", "jobs", "cache_dir", "quiet"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: list[str]) -> CommandOutcome:
    """Parse ``argv`` and execute it, returning the rendered payload and exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandOutcome(EXIT_USAGE, "", [str(exc)])
    except SystemExit as exc:  # --help
        return CommandOutcome(int(exc.code or 0))
    if args.jobs < 1:
        return CommandOutcome(EXIT_USAGE, "", ["--jobs must be at least 1"])

    cache = ResultCache.from_option(args.cache_dir) if args.command in _CACHEABLE else None
    key = None
    if cache is not None:
        key = cache_key(args.command, {**_cache_args(args), "format": args.format})
        hit = cache.get(key)
        if hit is not None:
            stored = json.loads(hit)
            return CommandOutcome(stored["exit_code"], stored["payload"], [])

    try:
        result = args.handler(args)
        payload = _render(result, args.format)
    except UsageError as exc:
        return CommandOutcome(EXIT_USAGE, "", [str(exc)])
    except GuardExceeded as exc:
        return CommandOutcome(EXIT_GUARD, "", [f"guard exceeded: {exc}"])
    except UnknownTable as exc:
        return CommandOutcome(EXIT_USAGE, "", [str(exc)])
    except (ValidationError, ModelError, ValueError) as exc:
        return CommandOutcome(EXIT_INVALID, "", [f"invalid input: {exc}"])

    if cache is not None:
        cache.put(key, json.dumps({"exit_code": result.exit_code, "payload": payload}))
    return CommandOutcome(result.exit_code, payload, result.warnings)


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    outcome = run(argv)
    if outcome.payload:
        print(outcome.payload)
    quiet = "--quiet" in argv
    if not quiet or outcome.exit_code != EXIT_OK:
        for msg in outcome.diagnostics:
            print(msg, file=sys.stderr)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
