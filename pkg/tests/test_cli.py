import json

import pytest

from scoresheets import reference as ref
from scoresheets.cli import EXIT_CAP, EXIT_INPUT, EXIT_NO, EXIT_OK, RunReport, main
from scoresheets.forms import gorenstein_witness
from scoresheets.hilbert import construct_A, construct_B
from scoresheets.sheets import ScoreSheet, add, format_text, to_json


@pytest.fixture
def sheet_file(tmp_path):
    def write(*sheets, name="s.txt"):
        p = tmp_path / name
        p.write_text("\n".join(format_text(s) for s in sheets))
        return str(p)
    return write


def test_check_example_names_failing_pair(sheet_file, capsys):
    assert main(["check", sheet_file(ref.ORDER_CHANGED_5), "--family", "runner-up"]) == EXIT_NO
    out = capsys.readouterr().out
    assert "ordered=true runner-up=false" in out
    assert "team 2 has 3 goals but team 3 has 4" in out


def test_check_members(sheet_file, tmp_path):
    zero = sheet_file(ScoreSheet(3, (0,) * 6), name="z.txt")
    assert main(["check", zero]) == EXIT_OK
    assert main(["check", sheet_file(gorenstein_witness(5), name="e.txt"), "--family", "consistent"]) == EXIT_OK
    js = tmp_path / "e.json"
    js.write_text(json.dumps(to_json(gorenstein_witness(4))))
    assert main(["check", str(js)]) == EXIT_OK


def test_check_parse_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("3\n* 1 x\n")
    assert main(["check", str(p)]) == EXIT_INPUT
    assert main(["check", str(tmp_path / "missing.txt")]) == EXIT_INPUT


@pytest.mark.parametrize("family,n,count", [("runner-up", 3, 12), ("runner-up", 4, 78), ("consistent", 3, 10)])
def test_hb_counts(family, n, count, capsys, tmp_path):
    out = tmp_path / "hb.txt"
    assert main(["hb", "--family", family, "--n", str(n), "--out", str(out)]) == EXIT_OK
    assert f"#HB={count}" in capsys.readouterr().out
    assert out.read_text().count("*") == count * n


def test_decompose(sheet_file, capsys):
    h = construct_B(4)[2]
    assert main(["decompose", sheet_file(h)]) == EXIT_OK
    assert "1 parts" in capsys.readouterr().out
    assert main(["decompose", sheet_file(add(construct_A(4)[1], h), name="t.txt")]) == EXIT_OK
    assert "2 parts, re-sums=true" in capsys.readouterr().out
    assert main(["decompose", sheet_file(ref.ORDER_CHANGED_5, name="x.txt")]) == EXIT_NO


def test_count_csv(capsys):
    assert main(["count", "--family", "consistent", "--n", "3", "--upto", "80"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "G,count" and lines[2] == "1,2" and lines[3] == "2,6" and len(lines) == 82


def test_multiplicity(capsys):
    assert main(["multiplicity", "--family", "runner-up", "--n", "3"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "13/108"


def test_gorenstein(capsys):
    assert main(["gorenstein", "--family", "consistent", "--n", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "facet values: [1]" in out and "* 2 2 2" in out
    assert main(["gorenstein", "--family", "runner-up", "--n", "3"]) == EXIT_NO


def test_fit_and_series(capsys):
    assert main(["fit", "--family", "runner-up", "--n", "3", "--upto", "72", "--period", "6"]) == EXIT_OK
    Q = json.loads(capsys.readouterr().out)
    assert Q["coeffs"][0][5] == "13/12960"
    assert main(["series", "--family", "consistent", "--n", "3", "--upto", "110", "--exponents",
                 "1,1,3,6,6,12"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "palindromic: true" in out


def test_caps_exit_3():
    assert main(["rays", "--family", "consistent", "--n", "5", "--max-rays", "100"]) == EXIT_CAP
    assert main(["hb", "--family", "consistent", "--n", "4", "--degree-cap", "40", "--max-candidates", "1000"]) \
        == EXIT_CAP
    assert main(["hb", "--family", "consistent", "--n", "4", "--timeout", "0.2"]) == EXIT_CAP


def test_usage_errors():
    assert main(["nosuch"]) == EXIT_INPUT
    assert main(["count", "--family", "bogus", "--n", "3", "--upto", "3"]) == EXIT_INPUT
    assert main(["report"]) == EXIT_INPUT


def test_report_round_trip(tmp_path, capsys):
    rep = tmp_path / "r.json"
    assert main(["probability", "--n", "3", "--upto", "6", "--with-limits", "--report", str(rep)]) == EXIT_OK
    r = RunReport.from_json(rep.read_text())
    assert r.command == "probability" and r.results["limits"]["limit_runner_up"] == "13/18"
    assert RunReport.from_json(r.to_json()) == r


def test_report_subset(capsys, tmp_path):
    rep = tmp_path / "r.json"
    assert main(["report", "--paper", "--only", "1", "2", "13", "--report", str(rep)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS] #1" in out and "[PASS] #2" in out and "[SKIP] #13" in out
    assert RunReport.from_json(rep.read_text()).checks == {"1": "PASS", "2": "PASS", "13": "SKIP"}
