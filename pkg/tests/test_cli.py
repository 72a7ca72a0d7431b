import csv
from pathlib import Path
from typing import Any

import pytest

from sparta.globalopt import cli
from sparta.globalopt.bench.registry import names
from sparta.globalopt.cli import EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, main
from sparta.globalopt.models import RunReport

CONVEX = ["--function", "x1^2+x2^2", "--box", "[-1,1]x[-1,1]"]


def test_solve(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    out = tmp_path / "report.json"
    assert main(["solve", *CONVEX, "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "iter=0 n_eps=1 f_min=0.0 flag_ter=1"
    report = RunReport.load(out)
    assert report.n_eps == 1 and report.f_min == 0.0


def test_solve_registered_instance(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    assert main(["solve", "--instance", "TestDim_2", "--out", str(tmp_path / "testdim.json")]) == EXIT_OK
    assert "n_eps=4 " in capsys.readouterr().out


def test_solve_reports_are_byte_identical(tmp_path: Path) -> None:
    args = ["solve", "--function", "x1^2 - x2^2", "--box", "[-1,1]x[-1,1]", "--eps", "1e-2"]
    assert main([*args, "--out", str(tmp_path / "a.json")]) == EXIT_OK
    assert main([*args, "--out", str(tmp_path / "b.json")]) == EXIT_OK
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_config_flags_reach_the_report(tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    assert main(["solve", *CONVEX, "--eps", "0.25", "--out", str(out)]) == EXIT_OK
    assert RunReport.load(out).epsilon == 0.25


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--function", "x1^2+x2^2", "--box", "[-1,1]x[-1"],
        ["solve", "--function", "x1^2+y", "--box", "[-1,1]x[-1,1]"],
        ["solve", "--function", "ln(x1)", "--box", "[-1,1]"],
        ["solve", *CONVEX, "--eps", "1e-3", "--inner-tol", "1e-2"],
        ["solve", *CONVEX, "--eps", "-1"],
        ["solve", "--function", "x1^2"],
        ["solve", "--instance", "Rosenbrock"],
        ["bench", "--instance", "Rosenbrock"],
    ],
)
def test_user_errors(argv: list, tmp_path: Path) -> None:
    assert main([*argv, "--out", str(tmp_path / "out")]) == EXIT_USAGE


def test_user_errors_are_logged(tmp_path: Path, caplog: pytest.LogCaptureFixture) -> None:
    assert main(["solve", "--function", "x1", "--box", "[0;1]", "--out", str(tmp_path / "out")]) == EXIT_USAGE
    assert "Cannot parse box" in caplog.text


def test_internal_errors(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    def broken(*args: Any, **kwargs: Any) -> None:
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "solve", broken)
    assert main(["solve", *CONVEX, "--out", str(tmp_path / "out")]) == EXIT_INTERNAL


def test_missing_subcommand() -> None:
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_bench(tmp_path: Path) -> None:
    out = tmp_path / "bench.csv"
    assert main(["bench", "--instance", "TestDim_2", "--out", str(out)]) == EXIT_OK
    with open(out, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 1
    assert (rows[0]["name"], rows[0]["n_eps"], rows[0]["flag_ter"]) == ("TestDim_2", "4", "0")


def test_plot(tmp_path: Path) -> None:
    report, svg = tmp_path / "report.json", tmp_path / "report.svg"
    assert main(["solve", *CONVEX, "--out", str(report)]) == EXIT_OK
    assert main(["plot", "--report", str(report), "--out", str(svg)]) == EXIT_OK
    assert svg.read_text().count("<rect") == 1


def test_plot_errors(tmp_path: Path) -> None:
    report = tmp_path / "cube.json"
    assert main(["solve", "--function", "x1^2+x2^2+x3^2", "--box", "[-1,1]x[-1,1]x[-1,1]", "--out", str(report)]) == EXIT_OK
    assert main(["plot", "--report", str(report), "--out", str(tmp_path / "cube.svg")]) == EXIT_USAGE
    assert main(["plot", "--report", str(tmp_path / "missing.json"), "--out", str(tmp_path / "missing.svg")]) == EXIT_USAGE
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{}")
    assert main(["plot", "--report", str(garbage), "--out", str(tmp_path / "garbage.svg")]) == EXIT_USAGE


def test_list(capsys: pytest.CaptureFixture) -> None:
    assert main(["list"]) == EXIT_OK
    assert capsys.readouterr().out.split("\n")[:-1] == names()
