import re
import subprocess
import sys

import pytest

from spinecensus.cli import EXIT_OK, EXIT_STORE, EXIT_USAGE, main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_seifert_lines(capsys):
    code, out, _ = run(["seifert", "--max-c", "6"], capsys)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert all(re.fullmatch(r"\w+ \d+ \d+", ln) for ln in lines)
    assert "lens 6 36" in lines
    assert "flat 6 6" in lines
    assert "Nil 6 7" in lines


def test_seifert_geometry_and_rows(capsys):
    code, out, _ = run(["seifert", "--max-c", "10", "--geometry", "elliptic", "--rows"], capsys)
    assert code == EXIT_OK
    header, row = out.splitlines()
    assert row.split("\t") == ["elliptic", "0", "0", "1", "1", "4", "11", "25", "45", "78", "142", "270"]
    assert header.startswith("geometry\t0\t1")


def test_seifert_list(capsys):
    code, out, _ = run(["seifert", "--max-c", "2", "--list"], capsys)
    assert code == EXIT_OK
    assert "elliptic\t2\t(S2, (2,1), (2,1), (2,1), -1)" in out.splitlines()


@pytest.mark.parametrize(
    "argv",
    [
        ["seifert", "--max-c", "11"],
        ["seifert", "--max-c", "5", "--geometry", "spherical"],
        ["census", "--tets", "1", "--prune", "faces,bogus"],
        ["census", "--tets", "0"],
        ["bricks", "--target-lens", "6", "4"],
        ["bricks", "--target-lens", "0", "1"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == EXIT_USAGE
    assert "error" in err


@pytest.mark.parametrize("argv", [[], ["census"], ["graphs", "--tets", "x"], ["bricks"], ["nonsense"]])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_store_error(tmp_path, capsys):
    code, _, err = run(["census", "--tets", "2", "--store", str(tmp_path)], capsys)
    assert code == EXIT_STORE
    assert "store error" in err


def test_census_with_store_and_report(tmp_path, capsys):
    store = tmp_path / "store"
    report = tmp_path / "report"
    assert run(["census", "--tets", "1", "--store", str(store)], capsys)[0] == EXIT_OK
    code, out, err = run(["census", "--tets", "2", "--store", str(store), "--report", str(report)], capsys)
    assert code == EXIT_OK
    assert "new classes\t4" in out
    assert out.count("class\t") == 4
    for name in ("census-closed-2-stages.tsv", "census-closed-2-records.tsv", "census-closed-2-stages.png"):
        assert (report / name).stat().st_size > 0
    rows = (report / "census-closed-2-records.tsv").read_text().splitlines()
    assert rows[0].split("\t")[:3] == ["signature", "status", "H1"]


def test_ideal_census(capsys):
    code, out, _ = run(["census", "--tets", "1", "--mode", "ideal", "--prune", ""], capsys)
    assert code == EXIT_OK
    assert out.startswith("graphs\t")


def test_seifert_report(tmp_path, capsys):
    code, _, err = run(["seifert", "--max-c", "8", "--report", str(tmp_path)], capsys)
    assert code == EXIT_OK
    rows = (tmp_path / "geometric-8-rows.tsv").read_text().splitlines()
    assert rows[0] == "geometry\tc\tcount"
    assert "SL2R\t8\t162" in rows
    assert (tmp_path / "geometric-8-rows.png").read_bytes()[:4] == b"\x89PNG"
    assert (tmp_path / "geometric-8-manifolds.tsv").exists()


def test_graphs_report(tmp_path, capsys):
    code, out, _ = run(["graphs", "--tets", "3", "--upto", "5", "--report", str(tmp_path)], capsys)
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("3\tall=4\tuseful_closed=2\tuseful_bricks=1")
    table = (tmp_path / "graphs.tsv").read_text().splitlines()
    assert table[0] == "n\tall\tuseful_bricks\tuseful_closed"
    assert table[-1] == "5\t28\t4\t12"
    assert (tmp_path / "graphs.png").exists()


def test_graphs_list(capsys):
    code, out, _ = run(["graphs", "--tets", "2", "--list"], capsys)
    assert len(out.splitlines()) == 3


def test_bricks(capsys):
    code, out, _ = run(["bricks", "--target-lens", "7", "3"], capsys)
    assert code == EXIT_OK
    first, expr = out.splitlines()
    assert first == "L(7,2)\tbound=2\tformula=2"
    assert expr.startswith("(assemble ")
    code, out, _ = run(["bricks", "--catalogue"], capsys)
    lines = out.splitlines()
    assert len(lines) == 50
    assert sum("\tclosed\t" in ln for ln in lines) == 25


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "spinecensus.cli", "seifert", "--max-c", "0"], capture_output=True, text=True, check=True
    ).stdout
    assert "lens 0 3" in out.splitlines()
