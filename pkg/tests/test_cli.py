import json
import subprocess
import sys

import pytest

from modsingular.cli import EXIT_BUILD, EXIT_CONTRADICTION, EXIT_INVALID, EXIT_OK, main


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.sfex"
    assert main(["theta", "--lattice", "A2", "--degree", "3", "--bound", "4", "--out", str(path)]) == EXIT_OK
    return path


def test_theta_e8_header(tmp_path):
    out = tmp_path / "e8.sfex"
    assert main(["theta", "--lattice", "E8", "--degree", "2", "--bound", "2", "--out", str(out)]) == 0
    assert "#weight: 4,4" in out.read_text()


def test_theta_degree_one(tmp_path):
    out = tmp_path / "d1.sfex"
    assert main(["theta", "--lattice", "A2", "--degree", "1", "--bound", "3", "--out", str(out)]) == 0
    records = [line for line in out.read_text().splitlines() if line.startswith("T:")]
    assert records == ["T: 0 C: 1", "T: 2 C: 6", "T: 4 C: 0", "T: 6 C: 6"]


def test_theta_rank_three_zero(a2_file):
    for line in a2_file.read_text().splitlines():
        if line.startswith("T:"):
            entries = [int(x) for x in line[2:].split("C:")[0].split()]
            value = int(line.split("C:")[1])
            G = [[entries[0], entries[1], entries[2]], [entries[1], entries[3], entries[4]],
                 [entries[2], entries[4], entries[5]]]
            det = (G[0][0] * (G[1][1] * G[2][2] - G[1][2] ** 2) - G[0][1] * (G[0][1] * G[2][2] - G[1][2] * G[0][2])
                   + G[0][2] * (G[0][1] * G[1][2] - G[1][1] * G[0][2]))
            if det:
                assert value == 0


def test_gram_file(tmp_path):
    gram = tmp_path / "hex.txt"
    gram.write_text("2 1\n1 2\n")
    a, b = tmp_path / "a.sfex", tmp_path / "b.sfex"
    assert main(["theta", "--gram-file", str(gram), "--degree", "2", "--bound", "2", "--out", str(a)]) == 0
    assert main(["theta", "--lattice", "A2", "--degree", "2", "--bound", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cache_reuse_is_deterministic(tmp_path):
    a, b = tmp_path / "a.sfex", tmp_path / "b.sfex"
    args = ["theta", "--lattice", "D4", "--degree", "2", "--bound", "2"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert main(args + ["--no-cache", "--out", str(tmp_path / "c.sfex")]) == 0
    assert a.read_bytes() == b.read_bytes() == (tmp_path / "c.sfex").read_bytes()
    assert list((tmp_path / "cache").glob("*.sfex"))


def test_report_and_pipeline(a2_file, capsys):
    assert main(["report", "--in", str(a2_file), "--p", "5", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["singularRank"] == 2 and data["theorem"]["holds"] and data["status"] == "PASS"
    assert main(["pipeline", "--in", str(a2_file), "--p", "5", "--m", "2", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["identity1"]["verdict"] and data["identity3"]["verdict"]
    assert data["extraction"]["verdict"] and data["squareCompare"]["verdict"]
    assert main(["pipeline", "--in", str(a2_file), "--p", "5", "--m", "2", "--strict"]) == EXIT_OK
    assert "status: PASS" in capsys.readouterr().out


def test_report_byte_identical(a2_file, tmp_path):
    a, b = tmp_path / "r1.json", tmp_path / "r2.json"
    for out in (a, b):
        assert main(["pipeline", "--in", str(a2_file), "--p", "5", "--json", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_contradiction_exit_code(tmp_path):
    out = tmp_path / "e8.sfex"
    main(["theta", "--lattice", "E8", "--degree", "2", "--bound", "2", "--out", str(out)])
    assert main(["report", "--in", str(out), "--p", "7"]) == EXIT_CONTRADICTION


def test_not_singular_pipeline(tmp_path, capsys):
    out = tmp_path / "e8.sfex"
    main(["theta", "--lattice", "E8", "--degree", "2", "--bound", "3", "--out", str(out)])
    capsys.readouterr()
    assert main(["pipeline", "--in", str(out), "--p", "7"]) == EXIT_OK
    assert "NOT-SINGULAR" in capsys.readouterr().out


def test_invalid_inputs(tmp_path):
    bad = tmp_path / "bad.sfex"
    bad.write_text("corrupted\n")
    assert main(["report", "--in", str(bad), "--p", "5"]) == EXIT_INVALID
    assert main(["report", "--in", str(tmp_path / "missing.sfex"), "--p", "5"]) == EXIT_INVALID
    assert main(["theta", "--lattice", "E7", "--degree", "2", "--bound", "2"]) == EXIT_INVALID
    assert main(["theta", "--lattice", "A1", "--degree", "2", "--bound", "2"]) == EXIT_INVALID
    assert main(["rep", "--weight", "1,2"]) == EXIT_INVALID
    with pytest.raises(SystemExit) as exc:
        main(["theta", "--degree", "x"])
    assert exc.value.code == EXIT_INVALID


def test_bad_prime(a2_file):
    assert main(["report", "--in", str(a2_file), "--p", "9"]) == EXIT_INVALID


def test_strict_missing(tmp_path, a2_file):
    text = a2_file.read_text().splitlines()
    trimmed = tmp_path / "trim.sfex"
    trimmed.write_text("\n".join(text[:-1]) + "\n")
    assert main(["report", "--in", str(trimmed), "--p", "5"]) == EXIT_OK
    assert main(["report", "--in", str(trimmed), "--p", "5", "--strict"]) == EXIT_INVALID


def test_build_failure():
    args = ["theta", "--lattice", "A2", "--degree", "2", "--bound", "2", "--harmonic-degree", "2"]
    assert main(args) == EXIT_BUILD


def test_rep_and_catalog(capsys):
    assert main(["rep", "--weight", "2,1,0", "--json"]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["ell"] == 8 and sum(g["dim"] for g in info["grading"]) == 8
    assert all(info["homomorphismChecks"])
    assert main(["rep", "--weight", "4,4"]) == 0
    assert "ell: 1" in capsys.readouterr().out
    assert main(["catalog", "--json"]) == 0
    cat = json.loads(capsys.readouterr().out)
    assert cat["E8"]["det"] == 1 and cat["A2"]["gram"] == [[2, 1], [1, 2]]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "modsingular", "rep", "--weight", "2,1,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "ell: 8" in proc.stdout
