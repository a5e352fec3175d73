"""Explicit equations ``t*f(x) = g(y)`` with denominators cleared.

An equation is written as::

    t·<zeros of f in x>·<poles of g in y> = <poles of f in x>·<zeros of g in y>

with one linear factor per point, caret exponents, and ``x^e`` for a point at
0.  Points are exact rationals or symbolic names.  :func:`parse_equation`
reads this grammar back, and also the looser printed form (juxtaposed
factors, ASCII ``-``, arbitrary factor order).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Union

from .divisor import FunctionDatum, Partition, SurfaceConfig
from .families import EXCEPTIONAL_ROWS, FamilyTag

__all__ = [
    "Label",
    "ModelSpec",
    "ModelError",
    "CatalogEntry",
    "default_spec",
    "emit_model",
    "parse_equation",
    "family_catalog",
    "catalog_to_dicts",
]

Label = Union[Fraction, str]

MINUS = "−"
DOT = "·"

_NUMBER = re.compile(r"^[+-]?\d+(/\d+)?$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


class ModelError(ValueError):
    pass


def as_label(value) -> Label:
    """Normalize a point label: numbers become Fractions, names stay strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ModelError(f"invalid label {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip().replace(MINUS, "-")
        if _NUMBER.match(s):
            return Fraction(s)
        if _IDENT.match(s):
            return s
    raise ModelError(f"invalid label {value!r}")


def label_str(label: Label) -> str:
    return str(label).replace("-", MINUS) if isinstance(label, Fraction) else label


def _labels(values) -> tuple[Label, ...]:
    return tuple(as_label(v) for v in values)


@dataclass(frozen=True)
class ModelSpec:
    """Point labels for each zero and pole, in the order of the partition parts.

    ``constraints`` are inequations ``(lhs, rhs)`` meaning ``lhs != rhs``.
    """

    f_zero_points: tuple[Label, ...]
    f_pole_points: tuple[Label, ...]
    g_zero_points: tuple[Label, ...]
    g_pole_points: tuple[Label, ...]
    constraints: tuple[tuple[Label, Label], ...] = field(default=())

    @classmethod
    def of(cls, f_zero_points, f_pole_points, g_zero_points, g_pole_points, constraints=()):
        return cls(_labels(f_zero_points), _labels(f_pole_points),
                   _labels(g_zero_points), _labels(g_pole_points),
                   tuple((as_label(a), as_label(b)) for a, b in constraints))

    def substitute(self, values: dict) -> "ModelSpec":
        """Replace symbolic labels by the given values."""
        sub = {k: as_label(v) for k, v in values.items()}
        s = lambda lab: sub.get(lab, lab) if isinstance(lab, str) else lab
        return ModelSpec(
            tuple(map(s, self.f_zero_points)), tuple(map(s, self.f_pole_points)),
            tuple(map(s, self.g_zero_points)), tuple(map(s, self.g_pole_points)),
            tuple((s(a), s(b)) for a, b in self.constraints))

    def to_dict(self) -> dict:
        ls = lambda labels: [str(x) for x in labels]
        return {
            "f_zero_points": ls(self.f_zero_points),
            "f_pole_points": ls(self.f_pole_points),
            "g_zero_points": ls(self.g_zero_points),
            "g_pole_points": ls(self.g_pole_points),
            "constraints": [[str(a), str(b)] for a, b in self.constraints],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelSpec":
        known = {"f_zero_points", "f_pole_points", "g_zero_points", "g_pole_points",
                 "constraints"}
        unknown = set(d) - known
        if unknown:
            raise ModelError(f"unknown fields in point spec: {sorted(unknown)}")
        return cls.of(d["f_zero_points"], d["f_pole_points"],
                      d["g_zero_points"], d["g_pole_points"], d.get("constraints", ()))


def default_spec(cfg: SurfaceConfig) -> ModelSpec:
    """Zeros at 0, 1, 2, ... and poles at the next integers, separately for f and g."""
    def points(fd: FunctionDatum):
        k, kp = len(fd.zeros), len(fd.poles)
        return (tuple(Fraction(i) for i in range(k)),
                tuple(Fraction(i) for i in range(k, k + kp)))
    fz, fp = points(cfg.f)
    gz, gp = points(cfg.g)
    return ModelSpec(fz, fp, gz, gp)


def _factor(var: str, label: Label, exp: int) -> str:
    if label == 0:
        base = var
    elif isinstance(label, Fraction) and label < 0:
        base = f"({var}+{-label})"
    else:
        base = f"({var}{MINUS}{label})"
    return f"{base}^{exp}" if exp > 1 else base


def _check(cfg: SurfaceConfig, spec: ModelSpec):
    pairs = ((cfg.f.zeros, spec.f_zero_points, "zeros of f"),
             (cfg.f.poles, spec.f_pole_points, "poles of f"),
             (cfg.g.zeros, spec.g_zero_points, "zeros of g"),
             (cfg.g.poles, spec.g_pole_points, "poles of g"))
    for part, labels, what in pairs:
        if len(part) != len(labels):
            raise ModelError(f"{what}: {len(labels)} points for {len(part)} multiplicities")
    for name, labels in (("f", spec.f_zero_points + spec.f_pole_points),
                         ("g", spec.g_zero_points + spec.g_pole_points)):
        if len(set(labels)) != len(labels):
            dup = sorted({str(x) for x in labels if labels.count(x) > 1})
            raise ModelError(f"points of {name} are not distinct: {dup}")
    for a, b in spec.constraints:
        if a == b:
            raise ModelError(f"constraint {a} != {b} is violated")


def emit_model(cfg: SurfaceConfig, spec: ModelSpec | None = None) -> str:
    """Render ``cfg`` with the points of ``spec`` as an equation string."""
    if spec is None:
        spec = default_spec(cfg)
    _check(cfg, spec)
    lhs = ["t"]
    lhs += [_factor("x", a, e) for a, e in zip(spec.f_zero_points, cfg.f.zeros.parts)]
    lhs += [_factor("y", b, e) for b, e in zip(spec.g_pole_points, cfg.g.poles.parts)]
    rhs = [_factor("x", a, e) for a, e in zip(spec.f_pole_points, cfg.f.poles.parts)]
    rhs += [_factor("y", b, e) for b, e in zip(spec.g_zero_points, cfg.g.zeros.parts)]
    return DOT.join(lhs) + " = " + DOT.join(rhs)


_TOKEN = re.compile(
    r"\((?P<var>[xy])(?P<sign>[+-])(?P<label>[A-Za-z_][A-Za-z_0-9]*|\d+(?:/\d+)?)\)"
    r"(?:\^(?P<exp1>\d+))?"
    r"|(?P<bare>[xy])(?:\^(?P<exp2>\d+))?"
)


def _parse_side(text: str, side: str):
    """List of (var, label, exponent) in order of appearance."""
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ModelError(f"cannot parse {side} near {text[pos:]!r}")
        if m.group("bare"):
            out.append((m.group("bare"), Fraction(0), int(m.group("exp2") or 1)))
        else:
            raw = m.group("label")
            label = as_label(raw)
            if m.group("sign") == "+":
                if not isinstance(label, Fraction):
                    raise ModelError(f"symbolic label with '+' sign: {m.group(0)}")
                label = -label
            out.append((m.group("var"), label, int(m.group("exp1") or 1)))
        pos = m.end()
    return out


def parse_equation(text: str) -> tuple[SurfaceConfig, ModelSpec]:
    """Read an equation back into a configuration and its point labels."""
    s = text.replace(MINUS, "-").replace(DOT, "").replace("*", "")
    s = re.sub(r"\s+", "", s)
    if s.count("=") != 1:
        raise ModelError("equation must contain exactly one '='")
    lhs, rhs = s.split("=")
    if not lhs.startswith("t"):
        raise ModelError("left-hand side must start with t")
    left = _parse_side(lhs[1:], "left-hand side")
    right = _parse_side(rhs, "right-hand side")

    def collect(factors, var):
        items = [(lab, e) for v, lab, e in factors if v == var]
        # stable sort aligns labels with the nonincreasing partition parts
        items.sort(key=lambda it: -it[1])
        return Partition(tuple(e for _, e in items)), tuple(lab for lab, _ in items)

    fz, fz_pts = collect(left, "x")
    gp, gp_pts = collect(left, "y")
    fp, fp_pts = collect(right, "x")
    gz, gz_pts = collect(right, "y")
    cfg = SurfaceConfig(FunctionDatum(fz, fp), FunctionDatum(gz, gp))
    return cfg, ModelSpec(fz_pts, fp_pts, gz_pts, gp_pts)


class CatalogEntry(NamedTuple):
    tag: FamilyTag
    config: SurfaceConfig
    spec: ModelSpec
    printed: str


def family_catalog() -> list[CatalogEntry]:
    """The nine exceptional families, with side conditions as printed."""
    out = []
    for i, (printed, conditions) in enumerate(EXCEPTIONAL_ROWS, start=1):
        cfg, spec = parse_equation(printed)
        constraints = tuple((as_label(a), as_label(b))
                            for a, excluded in conditions for b in excluded)
        spec = ModelSpec(spec.f_zero_points, spec.f_pole_points,
                         spec.g_zero_points, spec.g_pole_points, constraints)
        tag = FamilyTag(f"Exceptional-§2.16-row-{i}", {"row": i})
        out.append(CatalogEntry(tag, cfg, spec, printed))
    return out


def catalog_to_dicts(entries=None) -> list[dict]:
    from .divisor import config_to_dict

    entries = family_catalog() if entries is None else entries
    return [{
        "tag": e.tag.to_dict(),
        "bidegree": [e.config.rm, e.config.rn],
        "config": config_to_dict(e.config),
        "points": e.spec.to_dict(),
        "equation": emit_model(e.config, e.spec),
        "printed": e.printed,
    } for e in entries]
