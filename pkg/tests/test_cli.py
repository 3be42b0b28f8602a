import json

import pytest

from narrowcomb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--word", "x y X Y")
    assert code == 0 and out.strip() == "z"
    code, out, _ = run(capsys, "normalize", "--word", "xyXYZ", "--trace")
    assert code == 0 and out.splitlines() == ["1", "(1,0,0)"]


def test_normalize_trace_of_w2(capsys):
    code, out, _ = run(capsys, "normalize", "--word", "x^2 y^2 X^2 Y^4 X^2 y^2 x^2", "--trace")
    assert code == 0 and out.splitlines() == ["1", "(0,8,8)"]


def test_syntax_and_limits(capsys):
    assert run(capsys, "normalize", "--word", "xa")[0] == 2
    assert run(capsys, "normalize", "--word", "x" * 5, "--max-length", "3")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["ball", "--radius", "99"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main([])
    assert run(capsys, "normalize", "--q", "0", "--word", "x")[0] == 2


def test_ball_csv(capsys, tmp_path):
    path = tmp_path / "ball.csv"
    code, out, _ = run(capsys, "ball", "--radius", "2", "--csv", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "distance,count" and lines[1] == "0,1" and lines[2] == "1,6"
    assert out.splitlines() == lines


def test_ball_budget_guard(capsys):
    assert run(capsys, "ball", "--radius", "6", "--budget", "50")[0] == 4


def test_checks(capsys, tmp_path):
    assert run(capsys, "check-recursive", "--radius", "3")[0] == 0
    assert run(capsys, "check-geodesic", "--radius", "2", "--q", "2")[0] == 0
    path = tmp_path / "narrow.csv"
    code, _, err = run(capsys, "check-narrow", "--radius", "2", "--csv", str(path))
    assert code == 0 and "holds" in err
    rows = path.read_text().splitlines()
    assert rows[0] == "h,a,b,t,distance,allowance" and len(rows) == 1 + 49


def test_diagram(capsys, tmp_path):
    out_path = tmp_path / "d.json"
    code, out, _ = run(capsys, "diagram", "--word", "xzXZ", "--out", str(out_path))
    assert code == 0 and "valid=True" in out
    data = json.loads(out_path.read_text())
    assert data["q"] == 1 and data["area"] >= 1
    assert run(capsys, "diagram", "--word", "xy")[0] == 3
    assert run(capsys, "diagram", "--word", "xX")[0] == 3


def test_survey(capsys, tmp_path):
    code, out, _ = run(capsys, "survey", "--n-max", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n,word_length,area") and len(lines) == 3
    path = tmp_path / "s.csv"
    assert run(capsys, "survey", "--n-max", "2", "--csv", str(path))[0] == 0
    assert path.read_text() == out


def test_lowerbound(capsys):
    code, out, _ = run(capsys, "lowerbound", "--n-max", "2")
    assert code == 0
    assert [line.split(",")[2] for line in out.splitlines()[1:]] == ["1", "8"]


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--word", "xzXZ", "--iterations", "50")
    assert code == 0 and "distinct_traces=1" in out
    assert run(capsys, "fuzz", "--word", "xz")[0] == 3
    assert run(capsys, "fuzz", "--word", "1", "--iterations", "200000")[0] == 3
