import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from ewl_pd.cli import run

STD = ["--p", "1/5", "--r", "3/5"]
RAW = ["--T", "5", "--R", "3", "--P", "1", "--S", "0"]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize(capsys):
    code, out, _ = call(capsys, "normalize", *RAW)
    assert code == 0 and json.loads(out) == {"r": "3/5", "p": "1/5"}


def test_ne_d1(capsys):
    code, out, _ = call(capsys, "ne", "--class", "D1", *STD, "--t", "1/2")
    assert code == 0
    assert json.loads(out) == {"equilibria": [[2, 2]], "payoffs": [["1/5", "1/5"]]}


def test_ne_b_classic(capsys):
    code, out, _ = call(capsys, "ne", "--class", "B", *RAW, "--scale", "classic")
    data = json.loads(out)
    assert len(data["equilibria"]) == 8
    assert all(p == ["9/4", "9/4"] for p in data["payoffs"])


def test_decimal_flags_are_exact(capsys):
    _, a, _ = call(capsys, "build", "--class", "A1", *STD, "--a", "0.25")
    _, b, _ = call(capsys, "build", "--class", "A1", *STD, "--a", "1/4")
    assert a == b


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["ne", "--class", "C", *STD, "--t", "1"], "--t"),
        (["ne", "--class", "C", *STD, "--t", "0"], "--t"),
        (["ne", "--class", "A1", "--p", "x", "--r", "3/5", "--a", "1/2"], "--p"),
        (["ne", "--class", "A1", *STD], "--a"),
        (["ne", "--class", "B", *STD, "--t", "1/2"], "--t"),
        (["ne", "--class", "A1", *STD, "--a", "1/2", "--scale", "classic"], "--scale"),
        (["region", "--class", "A1", *STD, "--a", "1/2", "--profile", "9,9"], "--profile"),
        (["figure-data", "--class", "B", *STD], "--class"),
        (["normalize", "--T", "5"], "--R"),
    ],
)
def test_validation_errors(capsys, argv, flag):
    code, _, err = call(capsys, *argv)
    assert code == 2 and flag in err


def test_unknown_class_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["ne", "--class", "Z", *STD])
    assert exc.value.code == 2


def test_region_and_table(capsys):
    code, out, _ = call(capsys, "region", "--class", "A1", *STD, "--a", "1", "--profile", "2,2")
    assert code == 0 and json.loads(out)["is_ne"] is True
    code, out, _ = call(capsys, "region", "--class", "E2", *STD, "--t", "1/4")
    assert json.loads(out)["equilibria"] == [[3, 3]]


def test_sweep_single_game(capsys):
    code, out, _ = call(capsys, "sweep", "--class", "D1", *STD)
    data = json.loads(out)
    assert code == 0 and data["mismatches"] == 0 and data["points"] == 63 and data["details"] == []


def test_sweep_grid_step(capsys):
    code, out, _ = call(capsys, "sweep", "--class", "B", "--grid-step", "1/10")
    assert code == 0 and json.loads(out)["mismatches"] == 0


def test_extremal(capsys):
    code, out, _ = call(capsys, "extremal", "--class", "A1", *RAW, "--scale", "classic", "--profile", "2,3")
    res = json.loads(out)["results"][0]
    assert (res["param_star"], res["payoff_star"]) == ("1/2", "5/2")


def test_figure_csv_and_json_agree(capsys, tmp_path):
    out_file = tmp_path / "fig.json"
    assert run(["figure-data", "--class", "A1", *STD, "--out", str(out_file)]) == 0
    _, text, _ = call(capsys, "figure-data", "--class", "A1", *STD, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    data = json.loads(out_file.read_text())
    flat = [
        (s["label"], x, u1, u2)
        for s in data["series"]
        for x, u1, u2 in zip(s["x"], s["payoff1"], s["payoff2"])
    ]
    assert [(r["profile"], r["x"], r["payoff1"], r["payoff2"]) for r in rows] == flat
    for _, x, u1, u2 in flat:
        for v in (x, u1, u2):
            assert str(F(v).numerator) + "/" + str(F(v).denominator) == v


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ewl_pd", "normalize", *RAW], capture_output=True, text=True, check=True
    )
    assert json.loads(proc.stdout)["p"] == "1/5"
