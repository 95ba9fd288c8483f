import csv
import json

import pytest

from millerzeros.cli import build_parser, main


def test_parser_globals():
    args = build_parser().parse_args(["--precision-bits", "128", "--tolerance", "1e-30", "--jobs", "2",
                                      "--cache-dir", "c", "--long-running", "faber", "12", "0"])
    assert (args.precision_bits, args.tolerance, args.jobs, args.cache_dir, args.long_running) == (128, 1e-30, 2, "c", True)


def test_series_and_faber(capsys):
    assert main(["series", "j", "--order", "2"]) == 0
    out = capsys.readouterr().out.split()
    assert out[-3:] == ["1", "744", "196884"]
    assert main(["faber", "12", "0"]) == 0
    assert capsys.readouterr().out.strip() == "x - 720"
    assert main(["faber", "24", "0", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["D"] == 2


def test_zeros(tmp_path, capsys):
    assert main(["zeros", "12", "0", "--csv", str(tmp_path / "z.csv"), "--json", str(tmp_path / "z.json")]) == 0
    assert "1 on arc" in capsys.readouterr().out
    with open(tmp_path / "z.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1 and rows[0]["kind"] == "arc"


def test_scan(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["--cache-dir", str(tmp_path / "c"), "scan", "--k", "12,600", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "k=12 l=1 not-all: absent none: absent" in text
    assert "k=600 l=50 not-all: m>=34 none: m>=49" in text
    assert json.loads(out.read_text())[1]["min_m_no_roots_on_arc"] == 49


def test_scan_refuses_long_runs(capsys):
    assert main(["scan", "--k", "18000"]) == 2
    assert "--long-running" in capsys.readouterr().err


def test_bounds(tmp_path, capsys):
    assert main(["bounds", "--intervals", "1000", "--csv", str(tmp_path / "b.csv")]) == 0
    out = capsys.readouterr().out
    assert "delta_cutoff_all = 0.6194" in out and "P convention" in out
    assert main(["bounds", "--mode", "weak"]) == 0
    assert "delta_cutoff_all = 1.1597" in capsys.readouterr().out


def test_szego_and_cm(tmp_path, capsys):
    assert main(["szego", "cutoffs"]) == 0
    c = json.loads(capsys.readouterr().out)
    assert str(c["delta_S_plus"]).startswith("0.9551")
    assert main(["szego", "sdelta", "--delta", "0.98", "--construction", "asymptotic", "--nsamples", "20",
                 "--out", str(tmp_path / "s.csv")]) == 0
    assert (tmp_path / "s.csv").read_text().startswith("#")
    assert main(["cm", "hcp", "--d", "19"]) == 0
    assert json.loads(capsys.readouterr().out)["coeffs"] == ["1", "884736"]
    assert main(["cm", "check", "--k", "442740", "--m", "36894", "--d", "19"]) == 0
    assert json.loads(capsys.readouterr().out)["divisible"] is True


def test_report_zeros(tmp_path):
    assert main(["report", "zeros", "--out", str(tmp_path), "--params", '{"k": 12, "m": 0}']) == 0
    with open(tmp_path / "zeros_12_0.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1 and rows[0]["kind"] == "arc"
    assert (tmp_path / "summary_zeros.txt").exists()


def test_bad_tolerance(capsys):
    assert main(["--tolerance", "0", "faber", "12", "0"]) == 2


def test_unknown_report_kind():
    with pytest.raises(SystemExit):
        main(["report", "nonsense"])
