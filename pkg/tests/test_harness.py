import csv
import io
import json

import pytest

from houghton import cli
from houghton.core import encode, identity, transposition_tau
from houghton.harness import (ALL_CHECKS, ConfigError, ExperimentConfig, _merges, checks_csv,
                              parse_chi, run, stability_sweep, sweep_csv)


def cfg(**kw):
    kw.setdefault("chi", (-1, 0))
    return ExperimentConfig(**kw)


@pytest.mark.parametrize("bad", [
    dict(n=1), dict(n=4), dict(chi=(1, 1)), dict(chi=(-1, 0, 0)), dict(checks=("bogus",)),
    dict(checks=("region", "region")), dict(jobs=0), dict(window=1), dict(seeds=["nonsense"]),
    dict(seeds=[encode(identity(3))]), dict(chi=None, checks=("cover",)),
])
def test_invalid_configs(bad):
    with pytest.raises(ConfigError):
        cfg(**bad).validate()


def test_config_plumbing():
    assert parse_chi("-1, 0,2") == (-1, 0, 2)
    with pytest.raises(ConfigError):
        parse_chi("a,b")
    c = ExperimentConfig.from_dict({"n": 3, "chi": "-1,-1,0", "f-bound": 4})
    assert c.chi == (-1, -1, 0) and c.f_bound == 4
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"colour": "red"})
    echo = cfg(jobs=3, timings=True).echo()
    assert "jobs" not in echo and "timings" not in echo and echo["f_bound"] == 3


def test_n2_default_run():
    r = run(cfg())
    assert r.passed and r.exit_code == 0
    assert [c["name"] for c in r.checks] == list(cfg().checks)
    assert {c["status"] for c in r.checks} <= {"pass", "fail", "skipped"}
    nerve = r.check("nerve")
    assert nerve["components"] >= 2
    assert all("wall_time" not in c for c in r.checks)


def test_fixtures_only():
    r = run(ExperimentConfig(checks=("fixtures",)))
    assert r.passed and r.region is None
    assert all(row["match"] for row in r.check("fixtures")["table"])


def test_deterministic_across_jobs():
    a = run(cfg(checks=ALL_CHECKS, jobs=1)).to_json()
    b = run(cfg(checks=ALL_CHECKS, jobs=4)).to_json()
    assert a == b
    assert run(cfg(checks=ALL_CHECKS, jobs=1)).to_json() == a


def test_timings_opt_in():
    r = run(cfg(checks=("region",), timings=True))
    assert "wall_time" in r.check("region")


def test_vertex_budget_gives_partial_report():
    r = run(cfg(max_vertices=50))
    assert r.error and not r.passed and r.exit_code == 1
    assert all(c["status"] == "skipped" for c in r.checks)


def test_seeds_used():
    r = run(cfg(seeds=[encode(transposition_tau(1, 2))], checks=("region",)))
    assert r.passed and r.region["vertices"] > 0


def test_checks_csv():
    rows = list(csv.reader(io.StringIO(checks_csv(run(cfg(checks=("region", "flag")))))))
    assert rows[0][:2] == ["check", "status"] and [r[0] for r in rows[1:]] == ["region", "flag"]


def test_merges():
    a, b, c = frozenset("a"), frozenset("b"), frozenset("c")
    assert _merges([a, b, c], [a, b, c]) == 0
    assert _merges([a, b, c], [a | b, c]) == 1
    assert _merges([a | b], [a, b]) == 1


def test_sweep_n2():
    res = stability_sweep(cfg(checks=("region", "nerve")), [2, 3])
    assert res["stable"] and res["passed"]
    rows = res["rows"]
    assert [r["window"] for r in rows] == [2, 3]
    assert all(r["merges_from_previous"] == 0 for r in rows[1:])
    # golden: the core components (those meeting the identity's window cell) stay at 12
    assert [r["core_components"] for r in rows] == [12, 12]
    text = sweep_csv(res)
    assert text.splitlines()[0].startswith("window")


# -- command line -----------------------------------------------------------------

def test_cli_exit_codes(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["build", "--n", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"]
    assert cli.main(["build", "--n", "1"]) == 2
    assert cli.main(["cover", "--n", "2", "--chi", "1,1"]) == 2
    assert cli.main(["build", "--config", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["build", "--n", "2", "--max-vertices", "10", "--out", str(out)]) == 1


def test_cli_config_file_and_override(tmp_path):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"n": 2, "chi": "-1,0", "window": 3, "name": "from-file"}))
    out = tmp_path / "r.json"
    assert cli.main(["cover", "--config", str(conf), "--window", "2", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["config"]["window"] == 2 and rep["config"]["name"] == "from-file"


def test_cli_negative_chi_and_exports(tmp_path):
    out, nerve_file, csv_file = tmp_path / "r.json", tmp_path / "n.txt", tmp_path / "c.csv"
    assert cli.main(["nerve", "--n", "2", "--chi", "-1,0", "--out", str(out),
                     "--export", str(nerve_file), "--csv", str(csv_file)]) == 0
    assert nerve_file.read_text().startswith("houghton-nerve v1")
    assert csv_file.read_text().startswith("check,status")
    from houghton.io import load
    assert len(load(nerve_file).vertices) == json.loads(out.read_text())["checks"][1]["counts"][0]


def test_cli_seeds_file(tmp_path):
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("# identity only\n" + encode(identity(2)) + "\n")
    assert cli.main(["build", "--n", "2", "--seeds", str(seeds), "--out", str(tmp_path / "r")]) == 0
    seeds.write_text("garbage\n")
    assert cli.main(["build", "--n", "2", "--seeds", str(seeds)]) == 2


def test_cli_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["verify-all", "--n", "2", "--chi", "-1,0", "--out", str(a)])
    cli.main(["verify-all", "--n", "2", "--chi", "-1,0", "--out", str(b), "--jobs", "4"])
    assert a.read_bytes() == b.read_bytes()


def test_cli_sweep(tmp_path):
    out, table = tmp_path / "s.json", tmp_path / "s.csv"
    assert cli.main(["sweep", "--n", "2", "--chi", "-1,0", "--checks", "region,nerve",
                     "--windows", "2,3", "--out", str(out), "--csv", str(table)]) == 0
    assert json.loads(out.read_text())["stable"]
    assert len(table.read_text().splitlines()) == 3
