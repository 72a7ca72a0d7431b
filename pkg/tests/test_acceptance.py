"""Full benchmark runs at the default settings; deselected unless ``-m slow`` is given."""
import itertools
from typing import Dict

import numpy as np
import pytest

from sparta.globalopt.bench.oracle import grid_minimum
from sparta.globalopt.bench.registry import get_instance
from sparta.globalopt.bench.suite import run_instance
from sparta.globalopt.models import RunReport

pytestmark = pytest.mark.slow

EXPECTED_COUNTS = {
    "Rastrigin": {1},
    "6-Hump": {2},
    "Branin": {2, 3},
    "Himmelblau": {4},
    "Rastrigin mod": {4},
    "Shubert": {18},
    "Deb 1": {25},
    "Vincent": {36},
}

_reports: Dict[str, RunReport] = {}


def _report(name: str) -> RunReport:
    if name not in _reports:
        _reports[name] = run_instance(name)
    return _reports[name]


@pytest.mark.parametrize("name", list(EXPECTED_COUNTS))
def test_finite_instances(name: str) -> None:
    instance = get_instance(name)
    f = instance.expression()
    report = _report(name)
    assert report.n_eps in EXPECTED_COUNTS[name]
    assert not report.truncated
    fixtures = np.array(instance.known_minimizers)
    for point in report.solutions:
        assert f.evaluate(point) <= instance.known_min_value + 1e-3
    for cluster in report.clusters:
        assert float(np.min(np.linalg.norm(fixtures - np.array(cluster), axis=1))) <= 1e-2


@pytest.mark.parametrize("name", ["Test01", "Test02", "Test03", "Test04"])
def test_infinite_instances(name: str) -> None:
    f = get_instance(name).expression()
    report = _report(name)
    assert report.n_eps > 50
    assert report.flag_ter == 0
    assert all(f.evaluate(point) <= 1e-3 for point in report.solutions)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_high_dimensional_instances(d: int) -> None:
    report = _report(f"TestDim_{d}")
    assert report.n_eps == 2**d
    assert report.flag_ter == 0
    corners = np.array(list(itertools.product((-0.25, 0.25), repeat=d)))
    for point in report.solutions:
        assert float(np.min(np.linalg.norm(corners - np.array(point), axis=1))) <= 1e-2


@pytest.mark.parametrize("name", list(EXPECTED_COUNTS) + ["Test01", "Test02", "Test03", "Test04"])
def test_grid_oracle_soundness(name: str) -> None:
    instance = get_instance(name)
    report = _report(name)
    grid_value, _ = grid_minimum(instance.expression(), instance.box, 1001)
    assert report.f_min is not None
    assert abs(report.f_min - grid_value) <= 1e-3
