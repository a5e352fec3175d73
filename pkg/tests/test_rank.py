import random
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st

from oracles import partitions_recursive, random_configs
from tfg.divisor import FunctionDatum, SurfaceConfig, validate_config
from tfg.rank import (
    NotOneZeroOnePole,
    c1,
    c2_general,
    c2_onepole,
    c2_period,
    c2_sweep,
    component_count,
    hom_rank,
    mw_rank,
    render_status,
)


def cfg(fz, fp, gz, gp, **kw):
    return validate_config(SurfaceConfig.of(fz, fp, gz, gp, **kw))


pytestmark = pytest.mark.filterwarnings("ignore:.*geometric genus")

ONEPOLE = cfg([2], [2], [3], [2, 1])
FAMILY22 = cfg([1, 1], [1, 1], [1, 1], [1, 1])


def test_component_count():
    assert component_count(6, FunctionDatum.of([2], [2])) == 2
    assert component_count(1, FunctionDatum.of([4], [2, 2])) == 1
    assert component_count(12, FunctionDatum.of([3], [2, 1])) == 1
    with pytest.raises(ValueError):
        component_count(0, FunctionDatum.of([1], [1]))


def test_c2_examples():
    assert c2_general(ONEPOLE, 6) == 0
    assert all(c2_general(FAMILY22, d) == 2 for d in range(1, 30))
    assert c2_general(cfg([2], [1, 1], [3], [2, 1]), 1) == 1


def test_c2_onepole_examples():
    assert c2_onepole(ONEPOLE, 6) == 0
    assert c2_onepole(cfg([4], [4], [6], [3, 2, 1]), 12) == 0
    with pytest.raises(NotOneZeroOnePole):
        c2_onepole(cfg([2], [1, 1], [3], [3]), 5)


def test_c1_and_hom():
    assert c1(ONEPOLE) == 0
    assert c1(FAMILY22) is None
    assert c1(cfg([6], [6], [7], [6, 1])) == 0
    assert hom_rank(ONEPOLE, 4) == 0 and hom_rank(FAMILY22, 4) is None


def test_mw_rank_examples():
    with pytest.warns(UserWarning):
        r = mw_rank(ONEPOLE, 12)
    assert r.mw_rank == 0 and r.c1 == 0 and r.hom_rank == 0
    r = mw_rank(FAMILY22, 5)
    assert r.mw_rank is None and r.c2 == 2
    r = mw_rank(cfg([3], [3], [4], [4]), 1)
    assert r.mw_rank == 0 and r.c2 == 0


def test_report_json():
    d = mw_rank(FAMILY22, 5).to_dict()
    assert d["c1"] == {"status": "unknown"}
    assert d["mw_rank"] == {"status": "unknown"}
    assert mw_rank(ONEPOLE, 3).to_dict()["mw_rank"] == {"status": "known", "value": 0}
    assert render_status(0) == {"status": "known", "value": 0}


def test_mw_rank_warns_off_genus_one():
    with pytest.warns(UserWarning, match="genus 0"):
        mw_rank(cfg([2], [2], [3], [3]), 2)


def test_preconditions():
    with pytest.raises(ValueError):
        c2_general(ONEPOLE, 0)
    with pytest.raises(ValueError):
        c2_general(cfg([2], [2], [3], [2, 1], characteristic=5), 10)
    assert c2_general(cfg([2], [2], [3], [2, 1], characteristic=5), 12) == 0
    with pytest.raises(ValueError):
        c2_general(SurfaceConfig.of([2], [2], [3], [2, 1], genus_C=1), 1)
    with pytest.raises(ValueError):
        mw_rank(SurfaceConfig.of([2], [2], [2], [2]), 1)


def test_period_examples():
    assert c2_period(ONEPOLE) == 1
    assert c2_period(FAMILY22) == 1
    c = cfg([2], [1, 1], [3], [2, 1])
    values = [c2_general(c, d) for d in range(1, 13)]
    p = c2_period(c)
    assert 6 % p == 0
    assert all(values[i] == values[i + p] for i in range(12 - p))


def test_period_is_minimal():
    c = cfg([2], [1, 1], [3], [2, 1])
    p = c2_period(c)
    for q in range(1, p):
        assert any(c2_general(c, d) != c2_general(c, d + q) for d in range(1, 13))


def test_sweep():
    reports = c2_sweep(FAMILY22, 3, 6)
    assert [r.d for r in reports] == [3, 4, 5, 6]
    assert all(r.c2 == 2 and r.mw_rank is None for r in reports)


def _shape(c):
    return (len(c.f.zeros), len(c.g.zeros), len(c.f.poles), len(c.g.poles))


def test_c2_at_one_identity_random():
    for c in random_configs(300):
        k, l, kp, lp = _shape(c)
        assert c2_general(c, 1) == (l - 1) * (k - 1) + (lp - 1) * (kp - 1)


def test_onepole_agrees_with_general():
    rng = random.Random(3)
    for _ in range(300):
        rm, rn = rng.randint(1, 12), rng.randint(1, 12)
        pb = partitions_recursive(rn)
        try:
            c = cfg([rm], [rm], rng.choice(pb), rng.choice(pb))
        except ValueError:
            continue
        for d in range(1, 40):
            assert c2_general(c, d) == c2_onepole(c, d)


def _c2_with_e_dg(c, d):
    # the formula as printed, pairing the poles of g with e_dg
    e_f, e_g = component_count(d, c.f), component_count(d, c.g)
    mz, mp, nz, np_ = c.f.zeros.parts, c.f.poles.parts, c.g.zeros.parts, c.g.poles.parts
    return (sum(gcd(a, b, d) for a in mz for b in nz) + sum(gcd(a, b, d) for a in mp for b in np_)
            - sum(gcd(a, e_g) for a in mz) - sum(gcd(b, e_f) for b in nz)
            - sum(gcd(a, e_g) for a in mp) - sum(gcd(b, e_g) for b in np_) + 2)


def test_printed_variant_disagrees_with_onepole():
    assert c2_general(ONEPOLE, 2) == c2_onepole(ONEPOLE, 2) == 0
    assert _c2_with_e_dg(ONEPOLE, 2) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 500))
def test_c2_depends_on_gcd_with_lcm(d):
    for c in (ONEPOLE, cfg([2], [1, 1], [3], [2, 1]), cfg([4], [3, 1], [6], [5, 1])):
        L = lcm(*c.all_parts())
        assert c2_general(c, d) == c2_general(c, gcd(d, L))
