import itertools
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List

import numpy as np
import pytest

from sparta.globalopt.bench.oracle import grid_minimum, refine_minimizer
from sparta.globalopt.bench.registry import PUBLISHED_MIN_VALUES, get_instance, names, registry
from sparta.globalopt.bench.suite import run_suite, run_suite_async, select_instances, write_csv
from sparta.globalopt.bench.svg import emit_subdivision_svg, render_svg
from sparta.globalopt.bnb import solve
from sparta.globalopt.errors import ReportError, UnknownInstanceError
from sparta.globalopt.expression import parse
from sparta.globalopt.geometry import parse_box
from sparta.globalopt.models import RunReport, SolverConfig, SuiteRow

FINITE = ["Rastrigin", "6-Hump", "Branin", "Himmelblau", "Rastrigin mod", "Shubert", "Deb 1", "Vincent"]
INFINITE = ["Test01", "Test02", "Test03", "Test04"]


def _tags(svg: str, tag: str) -> List[ET.Element]:
    return [element for element in ET.fromstring(svg).iter() if element.tag.rsplit("}", 1)[-1] == tag]


def test_names() -> None:
    assert names("finite") == FINITE
    assert names("infinite") == INFINITE
    assert names("high_dimensional") == ["TestDim_2", "TestDim_3", "TestDim_4", "TestDim_5", "TestDim_6"]
    assert names() == FINITE + INFINITE + names("high_dimensional")
    assert [instance.name for instance in registry()] == names()


def test_registry_examples() -> None:
    rastrigin = get_instance("Rastrigin")
    assert rastrigin.box == parse_box("[-5.12,5.12]x[-5.12,5.12]")
    assert (rastrigin.known_min_value, rastrigin.expected_count) == (0.0, 1)

    dim3 = get_instance("TestDim_3")
    assert dim3.box == parse_box("[-0.25,0.25]x[-0.25,0.25]x[-0.25,0.25]")
    assert sorted(dim3.known_minimizers) == sorted(itertools.product((-0.25, 0.25), repeat=3))
    assert dim3.expected_count == 8

    shubert = get_instance("Shubert")
    assert shubert.expected_count == 18
    assert shubert.known_min_value == pytest.approx(-186.730909, abs=1e-5)

    for name in INFINITE:
        instance = get_instance(name)
        assert instance.known_minimizers == [] and instance.expected_count is None
        assert instance.known_min_value == 0.0 and instance.argmin_description


@pytest.mark.parametrize("name", FINITE)
def test_refined_values_match_published_minima(name: str) -> None:
    assert get_instance(name).known_min_value == pytest.approx(PUBLISHED_MIN_VALUES[name], abs=1e-5)


def test_published_minima_are_transcribed_as_printed() -> None:
    assert PUBLISHED_MIN_VALUES["6-Hump"] == -1.031629
    assert PUBLISHED_MIN_VALUES["Branin"] == 0.397886
    assert PUBLISHED_MIN_VALUES["Shubert"] == -186.730909


@pytest.mark.parametrize("name", FINITE + ["TestDim_2", "TestDim_4"])
def test_fixtures_attain_the_known_minimum(name: str) -> None:
    instance = get_instance(name)
    f = instance.expression()
    assert len(instance.known_minimizers) == instance.expected_count
    for minimizer in instance.known_minimizers:
        assert instance.box.contains(minimizer)
        assert abs(f.evaluate(minimizer) - instance.known_min_value) <= 1e-9


@pytest.mark.parametrize("name", FINITE + INFINITE)
def test_grid_oracle_does_not_undercut_the_known_minimum(name: str) -> None:
    instance = get_instance(name)
    value, point = grid_minimum(instance.expression(), instance.box, 1001)
    assert value >= instance.known_min_value - 1e-3
    assert instance.box.contains(point)


def test_refine_minimizer_polishes_a_seed() -> None:
    f = get_instance("Himmelblau").expression()
    refined = refine_minimizer(f, parse_box("[-6,6]x[-6,6]"), (2.9, 2.1))
    np.testing.assert_allclose(refined, [3.0, 2.0], atol=1e-8)


def test_refine_minimizer_stays_in_the_box() -> None:
    refined = refine_minimizer(parse("x1", 1), parse_box("[1,2]"), (5.0,))
    np.testing.assert_array_equal(refined, [1.0])


@pytest.mark.parametrize(
    "alias, name",
    [
        ("himmelblau", "Himmelblau"),
        ("RASTRIGIN MOD", "Rastrigin mod"),
        ("rastrigin_mod", "Rastrigin mod"),
        ("deb1", "Deb 1"),
        ("6hump", "6-Hump"),
        ("test_01", "Test01"),
        ("testdim-4", "TestDim_4"),
        ("TestDim_7", "TestDim_7"),
    ],
)
def test_get_instance_normalises_names(alias: str, name: str) -> None:
    assert get_instance(alias).name == name


def test_high_dimensional_instances_beyond_the_table() -> None:
    instance = get_instance("TestDim_7")
    assert instance.dimension == 7 and instance.expected_count == 128


@pytest.mark.parametrize("name", ["Rosenbrock", "", "TestDim_0", "TestDim"])
def test_unknown_instances(name: str) -> None:
    with pytest.raises(UnknownInstanceError):
        get_instance(name)
    with pytest.raises(KeyError):
        get_instance(name)


def test_select_instances() -> None:
    assert select_instances("all") == FINITE + INFINITE
    assert select_instances("finite") == FINITE
    assert select_instances("infinite") == INFINITE
    assert select_instances("rastrigin, himmelblau,") == ["Rastrigin", "Himmelblau"]
    with pytest.raises(UnknownInstanceError):
        select_instances("Rastrigin,Nope")


def test_instance_settings_precedence() -> None:
    test01 = get_instance("Test01")
    assert test01.solver_config().filter_tol == 5e-4
    assert test01.solver_config(SolverConfig(epsilon=0.1)).filter_tol == 5e-4
    assert test01.solver_config(SolverConfig(epsilon=0.1)).epsilon == 0.1
    assert test01.solver_config(SolverConfig(filter_tol=1e-7)).filter_tol == 1e-7
    assert get_instance("Rastrigin").solver_config() == SolverConfig()


def test_empty_suite() -> None:
    assert run_suite([]) == []


@pytest.mark.asyncio
async def test_testdim_2_suite_row() -> None:
    rows = [row async for row in run_suite_async(["TestDim_2"])]
    assert len(rows) == 1
    assert (rows[0].name, rows[0].n_eps, rows[0].flag_ter) == ("TestDim_2", 4, 0)
    assert rows[0].f_min is not None and rows[0].f_min <= 1e-3


@pytest.mark.asyncio
async def test_suite_validates_names_before_solving() -> None:
    with pytest.raises(UnknownInstanceError):
        async for _ in run_suite_async(["TestDim_1", "Nope"]):
            pass


def test_parallel_suite_keeps_request_order() -> None:
    rows = run_suite(["testdim_2", "TestDim_1"], workers=2)
    assert [row.name for row in rows] == ["TestDim_2", "TestDim_1"]
    assert [row.n_eps for row in rows] == [4, 2]


def test_suite_epsilon_override() -> None:
    coarse = run_suite(["TestDim_1"], epsilon=0.5)
    fine = run_suite(["TestDim_1"])
    assert coarse[0].iter <= fine[0].iter


def test_write_csv(tmp_path: Path) -> None:
    rows = [SuiteRow(name="Rastrigin", iter=104, wall_ms=12.5, n_eps=1, flag_ter=1, f_min=0.0)]
    path = tmp_path / "table.csv"
    write_csv(rows, path)
    lines = path.read_text().splitlines()
    assert lines == ["name,iter,wall_ms,n_eps,flag_ter,f_min", "Rastrigin,104,12.5,1,1,0.0"]


def _convex_report() -> RunReport:
    return solve(parse("x1^2 + x2^2", 2), parse_box("[-1,1]x[-1,1]"), 1e-3)


def test_svg_of_a_convex_report() -> None:
    svg = render_svg(_convex_report())
    assert len(_tags(svg, "rect")) == 1
    solutions = [group for group in _tags(svg, "g") if group.get("class") == "solutions"]
    assert len(solutions) == 1 and len(list(solutions[0])) == 1
    assert ET.fromstring(svg).get("viewBox") == "-2 -2 4 4"


def test_svg_draws_every_box() -> None:
    report = solve(get_instance("6-Hump").expression(), get_instance("6-Hump").box, 1e-1)
    assert report.boxes is not None
    svg = render_svg(report, "6-Hump")
    assert len(_tags(svg, "rect")) == len(report.boxes)
    assert render_svg(report, "6-Hump") == svg
    assert _tags(svg, "title")[0].text == "6-Hump"


def test_svg_rejects_unplottable_reports() -> None:
    with pytest.raises(ReportError):
        render_svg(solve(parse("x1^2 + x2^2 + x3^2", 3), parse_box("[-1,1]x[-1,1]x[-1,1]"), 1e-3))
    with pytest.raises(ReportError):
        render_svg(solve(parse("x1^2 + x2^2", 2), parse_box("[-1,1]x[-1,1]"), 1e-3, SolverConfig(dump_boxes=False)))


def test_emit_subdivision_svg(tmp_path: Path) -> None:
    path = tmp_path / "convex.svg"
    report = _convex_report()
    emit_subdivision_svg(report, get_instance("Rastrigin"), path)
    text = path.read_text()
    assert text.startswith("<svg") and text.endswith("</svg>\n")
    assert "<title>Rastrigin</title>" in text
