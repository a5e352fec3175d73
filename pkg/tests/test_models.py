from fractions import Fraction

import pytest

from tfg.classifier import GenusOneClass
from tfg.divisor import SurfaceConfig, validate_config
from tfg.families import match_family
from tfg.genus import geometric_genus
from tfg.models import (
    ModelError,
    ModelSpec,
    as_label,
    catalog_to_dicts,
    default_spec,
    emit_model,
    family_catalog,
    label_str,
    parse_equation,
)


def test_row_9_exact():
    entry = family_catalog()[8]
    assert emit_model(entry.config, entry.spec) == "t·x^5·(y−1)^6 = (x−1)^3·(x+1)^2·y^5·(y−a)"


def test_row_3_under_canonical_grammar():
    entry = family_catalog()[2]
    assert emit_model(entry.config, entry.spec) == \
        "t·x^2·(y−1)·(y−a)·(y−b) = (x−1)·(x+1)·y^2·(y−d)"


def test_derived_example():
    cfg = SurfaceConfig.of([2], [2], [3], [2, 1])
    spec = ModelSpec.of([0], [1], [1], [-1, "a"])
    assert emit_model(cfg, spec) == "t·x^2·(y+1)^2·(y−a) = (x−1)^2·(y−1)^3"


def test_default_spec():
    cfg = SurfaceConfig.of([2], [1, 1], [3], [2, 1])
    spec = default_spec(cfg)
    assert spec.f_zero_points == (0,) and spec.f_pole_points == (1, 2)
    assert emit_model(cfg) == "t·x^2·(y−1)^2·(y−2) = (x−1)·(x−2)·y^3"


@pytest.mark.parametrize("i", range(9))
def test_catalog_round_trip(i):
    entry = family_catalog()[i]
    text = emit_model(entry.config, entry.spec)
    cfg, spec = parse_equation(text)
    assert cfg == entry.config
    assert emit_model(cfg, spec) == text
    assert geometric_genus(validate_config(cfg)) == 1
    assert match_family(GenusOneClass.from_config(cfg)).parameters == {"row": i + 1}


def test_catalog_rows():
    entries = family_catalog()
    assert entries[0].config.brackets() == "[1,1][1,1], [1,1][1,1]"
    assert entries[3].config.brackets() == "[3][3], [1,1,1][1,1,1]"
    assert entries[6].config.brackets() == "[4][4], [2,2][2,1,1]"
    assert ("a", Fraction(-1)) in entries[6].spec.constraints


def test_catalog_dicts_are_deterministic():
    a, b = catalog_to_dicts(), catalog_to_dicts()
    assert a == b
    assert [d["tag"]["source"] for d in a] == [f"Exceptional-§2.16-row-{i}" for i in range(1, 10)]


def test_parse_loose_forms():
    cfg, spec = parse_equation("t x^2 (y-1)(y-a) = (x-1)(x+1) y^2")
    assert cfg.brackets() == "[2][2], [1,1][1,1]"
    assert spec.f_pole_points == (1, -1)
    cfg, _ = parse_equation("t*(y-1)^2*x^3 = y^3*(x-1)^2*(x+1)")
    assert (cfg.rm, cfg.rn) == (3, 3)


@pytest.mark.parametrize("text", [
    "x^2 = y^2", "t·x = y = x", "t·x^2·(z−1) = y", "t·(y+a) = x",
])
def test_parse_errors(text):
    with pytest.raises(ModelError):
        parse_equation(text)


def test_emit_errors():
    cfg = SurfaceConfig.of([2], [1, 1], [3], [2, 1])
    with pytest.raises(ModelError, match="points"):
        emit_model(cfg, ModelSpec.of([0], [1], [0], [1, 2]))
    with pytest.raises(ModelError, match="distinct"):
        emit_model(cfg, ModelSpec.of([0], [1, 0], [0], [1, 2]))
    with pytest.raises(ModelError, match="constraint"):
        emit_model(cfg, ModelSpec.of([0], [1, 2], [0], [1, 2], [(3, 3)]))


def test_substitution():
    entry = family_catalog()[8]
    spec = entry.spec.substitute({"a": 5})
    assert emit_model(entry.config, spec).endswith("(y−5)")
    with pytest.raises(ModelError):
        emit_model(entry.config, entry.spec.substitute({"a": 1}))


def test_spec_dict_round_trip():
    spec = family_catalog()[1].spec
    assert ModelSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(ModelError):
        ModelSpec.from_dict({**spec.to_dict(), "extra": 1})


def test_labels():
    assert as_label("−3/2") == Fraction(-3, 2)
    assert as_label("abc") == "abc"
    assert label_str(Fraction(-2)) == "−2"
    for bad in (True, "1a", 1.5):
        with pytest.raises(ModelError):
            as_label(bad)
