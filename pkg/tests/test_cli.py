"""Command-line front end: schema, determinism, exit codes, figures."""

import json

import pytest

from higgsvol.cli import run


def run_cli(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_volume_example(capsys):
    code, out = run_cli(
        capsys,
        [
            "volume", "--genus", "1", "--numerator", "1,0,2", "--q", "2",
            "--rank", "1", "--degree", "0", "--route", "mellit",
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["value"] == {"num": "6", "den": "1"}
    assert doc["result"]["route"] == "mellit"
    assert isinstance(doc["result"]["wmax"], int)
    assert isinstance(doc["result"]["dmax"], int)
    assert doc["warnings"] == []
    assert doc["input"]["curve"]["genus"] == 1


def test_count_curve_example(capsys):
    code, out = run_cli(
        capsys, ["count-curve", "--q", "2", "--weierstrass", "0,0,1,0,0"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["N"] == 3
    assert doc["result"]["numerator"] == [1, 0, 2]


def test_crosscheck_example(capsys):
    code, out = run_cli(
        capsys,
        ["crosscheck", "--genus", "1", "--symbolic", "--rank", "2",
         "--degree", "1"],
    )
    assert code == 0
    assert json.loads(out)["result"]["equal"] is True


def test_motive_symbolic_output(capsys):
    code, out = run_cli(
        capsys,
        ["motive", "--genus", "1", "--symbolic", "--rank", "1",
         "--degree", "0"],
    )
    assert code == 0
    doc = json.loads(out)
    assert isinstance(doc["result"]["symbolic"], str)
    assert "q" in doc["result"]["symbolic"]


def test_determinism(capsys):
    argv = [
        "volume", "--genus", "1", "--weierstrass", "0,0,1,0,0", "--q", "2",
        "--rank", "2", "--degree", "1",
    ]
    _, first = run_cli(capsys, argv)
    _, second = run_cli(capsys, argv)
    assert first == second


def test_usage_errors(capsys):
    code, _ = run_cli(capsys, ["volume", "--rank", "1"])
    assert code == 2
    code, _ = run_cli(capsys, ["volume", "--symbolic", "--genus", "1"])
    assert code == 2  # missing --rank
    code, _ = run_cli(capsys, ["volume", "--genus", "1", "--symbolic",
                               "--numerator", "1,0,2", "--q", "2",
                               "--rank", "1"])
    assert code == 2  # two curve sources


def test_curve_file(tmp_path, capsys):
    doc = {"mode": "weierstrass", "weierstrass": [0, 0, 1, 0, 0], "q": 2}
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(doc))
    code, out = run_cli(
        capsys,
        ["volume", "--curve-file", str(path), "--rank", "1", "--degree", "0"],
    )
    assert code == 0
    assert json.loads(out)["result"]["value"]["num"] == "6"


def test_dt_csv_and_figure(tmp_path, capsys):
    fig = tmp_path / "dt.png"
    code, out = run_cli(
        capsys,
        ["dt", "--genus", "1", "--weierstrass", "0,0,1,0,0", "--q", "2",
         "--rank", "1", "--dmax", "1", "--format", "csv",
         "--figure", str(fig)],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "rank,degree,omega"
    assert lines[1] == "1,0,6"
    assert fig.exists() and fig.stat().st_size > 0


def test_dt_json_table(capsys):
    code, out = run_cli(
        capsys,
        ["dt", "--genus", "1", "--numerator", "1,0,2", "--q", "2",
         "--rank", "1", "--dmax", "0"],
    )
    assert code == 0
    table = json.loads(out)["result"]["table"]
    assert table == [
        {"rank": 1, "degree": 0, "omega": {"num": "6", "den": "1"}}
    ]


def test_selftest(capsys):
    code, out = run_cli(capsys, ["selftest"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["passed"] is True
    assert all(c["passed"] for c in doc["result"]["checks"])
