import json

import pytest

from exptype.cli import dumps, main, parse_function, parse_set, to_csv
from exptype.expfun import block, exp_term


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


CASES = [
    ("indicator", "-f", "exp:1", "--n-thetas", "8", "--r-max", "50"),
    ("norm", "-f", "block:0,0.5"),
    ("membership", "-f", "exp:0,0.5"),
    ("series-check", "-f", "block:0,0.5", "--k-max", "40", "--r-max", "30"),
    ("density-fit", "-f", "block:0,0.25", "--sizes", "6,12"),
    ("borel", "-f", "exp:1", "--points", "10"),
    ("construct", "--horizon", "256", "--targets", "1", "--x-max", "300"),
    ("recurrence", "--horizon", "256", "--targets", "2", "--target", "2"),
    ("growth", "--horizon", "256", "--targets", "1", "--x-max", "100", "--limit", "10"),
    ("zeros", "-f", "sine", "--box", "0.5,3.5,-1,1"),
    ("carleman", "-f", "exp:1", "--radii", "10,20"),
    ("obstruct", "-f", "exp:0,1", "--horizon", "64"),
]


@pytest.mark.parametrize("argv", CASES, ids=[c[0] for c in CASES])
def test_every_command_csv_and_json(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "," in out.splitlines()[0]
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"rows", "summary"}


@pytest.mark.parametrize("argv", CASES[:6], ids=[c[0] for c in CASES[:6]])
def test_output_is_deterministic(capsys, argv):
    assert run(capsys, *argv, "--json")[1] == run(capsys, *argv, "--json")[1]


def test_zeros_output(capsys):
    code, out, _ = run(capsys, "zeros", "-f", "sine", "--box", "0.5,3.5,-1,1", "--json")
    rows = json.loads(out)["rows"]
    assert [round(r["re"]) for r in rows] == [1, 2, 3]
    assert json.loads(out)["summary"]["count"] == 3


def test_check_failures_exit_1(capsys):
    assert run(capsys, "membership", "-f", "exp:2")[0] == 1
    assert run(capsys, "norm", "-f", "exp:1", "--K", "segment:0,0", "--n", "2")[0] == 1
    assert run(capsys, "growth", "--horizon", "256", "--targets", "1", "--x-max", "100", "--limit", "1e-9")[0] == 1


def test_horizontal_K_aborts_construct(capsys):
    code, out, err = run(capsys, "construct", "--K", "[[-1,0],[1,0]]", "--json")
    assert code == 1
    assert "horizontal" in err
    assert "aborted" in json.loads(out)["summary"]


def test_input_errors_exit_2(capsys):
    assert run(capsys, "zeros", "-f", "zero")[0] == 2
    assert run(capsys, "membership", "-f", "{not json")[0] == 2
    assert run(capsys, "zeros", "-f", "sine", "--box", "1,2")[0] == 2
    assert run(capsys, "carleman", "-f", "exp:1", "--t-min", "-1")[0] == 2
    assert run(capsys, "construct", "--horizon", "10")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_numeric_failure_exits_3(capsys):
    # exp(800 (64 + z)) is far beyond double range
    code, _, err = run(capsys, "obstruct", "-f", "exp:800", "--horizon", "64")
    assert code == 3
    assert "numeric failure" in err


def test_zero_on_region_edge_is_reported(capsys):
    code, out, _ = run(capsys, "zeros", "-f", "sine", "--box", "1,3.5,-1,1", "--json")
    assert code == 0 and json.loads(out)["summary"]["count"] == 3


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"function": "sine", "box": "0.5,2.5,-1,1"}))
    code, out, _ = run(capsys, "zeros", "--config", str(cfg), "--json")
    assert code == 0 and json.loads(out)["summary"]["count"] == 2
    code, out, _ = run(capsys, "zeros", "--config", str(cfg), "--box", "0.5,4.5,-1,1", "--json")
    assert json.loads(out)["summary"]["count"] == 4
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "zeros", "--config", str(cfg))[0] == 2


def test_output_file(tmp_path, capsys):
    path = tmp_path / "z.csv"
    assert run(capsys, "zeros", "-f", "sine", "--box", "0.5,1.5,-1,1", "-o", str(path))[0] == 0
    assert path.read_text().splitlines()[0] == "re,im,multiplicity"


def test_construct_writes_artifacts(tmp_path, capsys):
    code, _, _ = run(capsys, "construct", "--horizon", "128", "--targets", "2", "--x-max", "100",
                     "--out-dir", str(tmp_path))
    assert code == 0
    assert {p.name for p in tmp_path.iterdir()} >= {"candidate.json", "growth.csv", "recurrence_1.csv"}
    code, out, _ = run(capsys, "recurrence", "--candidate", str(tmp_path / "candidate.json"), "--json")
    assert code == 0 and json.loads(out)["summary"]["density"] > 0


def test_number_formats():
    doc = dumps({"x": 1 / 3, "z": 1 / 3 + 2j})
    assert "0.33333333333333331" in doc
    csv = to_csv(["a", "b"], [(1 / 3, 1 / 7 + 1j)])
    assert csv.splitlines() == ["a,b", "0.333333333,0.142857143+1j"]


def test_parsers():
    assert parse_function("exp:1") == exp_term(1.0)
    assert parse_function("block:0,0.5") == block(0.5j)
    assert parse_function(json.dumps(block(0.5j).to_json())) == block(0.5j)
    assert parse_set("segment:1,0").vertices == parse_set("[[0,-1],[0,1]]").vertices
