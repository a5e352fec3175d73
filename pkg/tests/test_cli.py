import json
from pathlib import Path

import pytest

from tfg import cli, tables
from tfg.cache import ENV_VAR, FORMAT_VERSION, ResultCache, cache_key
from tfg.cli import main, run

CONFIGS = Path(__file__).resolve().parent.parent / "demos" / "configs"
CFG_2_3 = str(CONFIGS / "cfg_2_3.json")
ONEPOLE = str(CONFIGS / "onepole_2_3.json")


def payload(argv):
    out = run(argv)
    assert out.exit_code == 0, out.diagnostics
    return out.payload


def test_genus_example():
    report = json.loads(payload(["genus", "--config", CFG_2_3]))
    assert report["geometric_genus"] == 1


def test_delta_max_example():
    assert payload(["delta-max", "-r", "1", "-m", "2", "-n", "3"]) == "1"


def test_verify_prop2_12():
    assert payload(["verify-tables", "--table", "prop2.12", "--format", "pretty"]).splitlines()[0] \
        == "prop2.12: 12/12 rows matched"
    report = json.loads(payload(["verify-tables", "--table", "prop2.9"]))[0]
    assert report["matched"] == report["expected"] == 1 and report["extra"] == []


def test_enumerate_formats():
    classes = json.loads(payload(["enumerate", "--rm", "3", "--rn", "3"]))
    assert len(classes) == 3
    csv_text = payload(["enumerate", "--rm", "2", "--rn", "3", "--format", "csv"])
    assert csv_text.splitlines()[0] == "rm,rn,zerosF,zerosG,polesF,polesG,shape,defect0,defectInf"
    pretty = payload(["enumerate", "--rm", "5", "--rn", "6", "--families", "--format", "pretty"])
    assert "Exceptional-§2.16-row-9" in pretty
    tagged = json.loads(payload(["enumerate", "--rm", "5", "--rn", "5", "--families"]))
    assert {c["family"]["source"] for c in tagged} >= {"Unmatched"}


def test_exceptional_small():
    assert json.loads(payload(["exceptional", "--max-degree", "3"])) == [[2, 2], [2, 3], [3, 3]]


def test_rank_and_sweep():
    report = json.loads(payload(["rank", "--config", ONEPOLE, "-d", "6"]))
    assert report["c2"] == 0 and report["mw_rank"] == {"status": "known", "value": 0}
    out = run(["rank", "--config", ONEPOLE, "-d", "6"])
    assert any("genus 0" in w for w in out.diagnostics)
    sweep = payload(["c2", "--config", CFG_2_3, "--d-range", "1..4", "--format", "csv"])
    lines = sweep.splitlines()
    assert lines[0] == "d,e_df,e_dg,c2,mw_rank" and len(lines) == 5
    assert lines[1].split(",")[3] == "1"


def test_period():
    assert json.loads(payload(["period", "--config", ONEPOLE])) == {"period": 1, "lcm": 6}


def test_emit_and_catalog():
    assert payload(["emit", "--row", "9", "--format", "pretty"]) == \
        "t·x^5·(y−1)^6 = (x−1)^3·(x+1)^2·y^5·(y−a)"
    obj = json.loads(payload(["emit", "--config", CFG_2_3]))
    assert obj["equation"].startswith("t·x^2")
    assert len(json.loads(payload(["catalog"]))) == 9


def test_emit_points_file(tmp_path):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps({"f_zero_points": ["0"], "f_pole_points": ["1"],
                               "g_zero_points": ["1"], "g_pole_points": ["-1", "a"]}))
    obj = json.loads(payload(["emit", "--config", ONEPOLE, "--points", str(pts)]))
    assert obj["equation"] == "t·x^2·(y+1)^2·(y−a) = (x−1)^2·(y−1)^3"
    pts.write_text(json.dumps({"f_zero_points": ["0"]}))
    assert run(["emit", "--config", ONEPOLE, "--points", str(pts)]).exit_code == 3


def test_oracle_delta_max():
    obj = json.loads(payload(["oracle-delta-max", "--max", "8"]))
    assert obj["mismatches"] == [] and obj["checked"] > 0


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["enumerate", "--rm", "2"],
    ["genus", "--config", "/nonexistent.json"],
    ["verify-tables", "--table", "prop9.9"],
    ["c2", "--config", CFG_2_3, "--d-range", "5"],
    ["emit"],
    ["emit", "--row", "10"],
    ["enumerate", "--rm", "2", "--rn", "3", "--jobs", "0"],
    ["rank", "--config", CFG_2_3, "-d", "2", "--format", "xml"],
])
def test_usage_errors(argv):
    assert run(argv).exit_code == 2


def test_validation_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"f": {"zeros": [2], "poles": [1]},
                               "g": {"zeros": [3], "poles": [2, 1]}}))
    out = run(["genus", "--config", str(bad)])
    assert out.exit_code == 3 and "invalid input" in out.diagnostics[0]
    (tmp_path / "junk.json").write_text("{")
    assert run(["genus", "--config", str(tmp_path / "junk.json")]).exit_code == 3
    assert run(["rank", "--config", CFG_2_3, "-d", "0"]).exit_code == 3
    assert run(["delta-max", "-r", "1", "-m", "2", "-n", "4"]).exit_code == 3


def test_guard():
    assert run(["enumerate", "--rm", "31", "--rn", "31"]).exit_code == 4
    assert run(["oracle-delta-max", "--max", "40"]).exit_code == 4
    assert run(["c2", "--config", CFG_2_3, "--d-range", "1..2000000"]).exit_code == 4


def test_table_diff_exit(monkeypatch):
    golden = tables.golden_tables()
    patched = json.loads(json.dumps(golden))
    patched["prop2.9"]["rows"].append([[3, 3], "[3][3], [2,1][2,1]"])
    monkeypatch.setattr(tables, "golden_tables", lambda: patched)
    out = run(["verify-tables", "--table", "prop2.9"])
    assert out.exit_code == 5
    assert json.loads(out.payload)[0]["missing"]


@pytest.mark.parametrize("argv", [
    ["enumerate", "--rm", "4", "--rn", "6"],
    ["enumerate", "--rm", "4", "--rn", "6", "--format", "csv"],
    ["verify-tables", "--table", "prop2.11", "--format", "pretty"],
    ["catalog"],
])
def test_cache_warm_equals_cold(tmp_path, argv):
    cold = run(argv)
    first = run(argv + ["--cache-dir", str(tmp_path)])
    warm = run(argv + ["--cache-dir", str(tmp_path)])
    assert cold.payload == first.payload == warm.payload
    assert cold.exit_code == warm.exit_code
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and not files[0].name.startswith(".tmp")


def test_cache_hit_is_served(tmp_path):
    argv = ["enumerate", "--rm", "2", "--rn", "2"]
    run(argv + ["--cache-dir", str(tmp_path)])
    (entry,) = tmp_path.iterdir()
    entry.write_text(json.dumps({"exit_code": 0, "payload": "cached"}))
    assert run(argv + ["--cache-dir", str(tmp_path)]).payload == "cached"
    # jobs is not part of the key
    assert run(argv + ["--cache-dir", str(tmp_path), "--jobs", "2"]).payload == "cached"


def test_cache_env_fallback(tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert ResultCache.from_option(None) is None
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    run(["catalog"])
    assert len(list(tmp_path.iterdir())) == 1


def test_cache_key_stability():
    assert cache_key("a", {"x": 1, "y": 2}) == cache_key("a", {"y": 2, "x": 1})
    assert cache_key("a", {"x": 1}) != cache_key("b", {"x": 1})
    assert FORMAT_VERSION == 1


def test_cache_put_is_atomic(tmp_path):
    cache = ResultCache(tmp_path / "sub")
    cache.put("k", "v1")
    cache.put("k", "v2")
    assert cache.get("k") == "v2"
    assert cache.get("missing") is None
    assert [p.name for p in (tmp_path / "sub").iterdir()] == ["k.txt"]


def test_jobs_do_not_change_payload():
    a = payload(["enumerate", "--rm", "4", "--rn", "8"])
    b = payload(["enumerate", "--rm", "4", "--rn", "8", "--jobs", "3"])
    assert a == b


def test_global_flags_before_subcommand():
    assert payload(["--format", "pretty", "delta-max", "-r", "2", "-m", "1", "-n", "1"]) == "1"


def test_main(capsys):
    assert main(["delta-max", "-r", "1", "-m", "2", "-n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["rank", "--config", ONEPOLE, "-d", "2", "--quiet"]) == 0
    assert capsys.readouterr().err == ""
    assert main(["genus", "--config", "/nonexistent.json"]) == 2
    assert "cannot read config" in capsys.readouterr().err
