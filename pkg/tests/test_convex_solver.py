import math

import numpy as np
import pytest

from sparta.globalopt.bench.registry import get_instance, names
from sparta.globalopt.convex_solver import minimize_on_box
from sparta.globalopt.expression import Expression, parse
from sparta.globalopt.geometry import BoxRegion, parse_box
from sparta.globalopt.models import SolverConfig
from sparta.globalopt.relaxation import certify, relaxed_value


def _relaxed_grid_minimum(f: Expression, box: BoxRegion, alpha: np.ndarray, points_per_axis: int) -> float:
    axes = [np.linspace(lo, hi, points_per_axis) for lo, hi in zip(box.a, box.b)]
    grid = np.meshgrid(*axes, indexing="ij")
    values = f.evaluate_many(grid)
    for i, x in enumerate(grid):
        values = values + alpha[i] * (box.a[i] - x) * (box.b[i] - x)
    return float(np.min(values))


def test_interior_minimum() -> None:
    result = minimize_on_box(parse("x1^2 + x2^2", 2), parse_box("[-1,1]x[-1,1]"), [0, 0], SolverConfig())
    assert result.converged
    np.testing.assert_allclose(result.minimizer, [0.0, 0.0], atol=1e-8)
    assert result.value == pytest.approx(0.0, abs=1e-12)


def test_boundary_minimum() -> None:
    result = minimize_on_box(parse("x1", 1), parse_box("[2,3]"), [0], SolverConfig())
    assert result.converged
    np.testing.assert_array_equal(result.minimizer, [2.0])
    assert result.value == 2.0


def test_off_centre_minimum() -> None:
    f = parse("(x1 - 0.3)^2 + 4*(x2 + 0.7)^2 + x1*x2", 2)
    box = parse_box("[-1,1]x[-1,1]")
    result = minimize_on_box(f, box, [0, 0], SolverConfig())
    assert result.converged
    # stationary point of the quadratic: 2(x1 - 0.3) + x2 = 0, 8(x2 + 0.7) + x1 = 0
    expected = np.linalg.solve([[2.0, 1.0], [1.0, 8.0]], [0.6, -5.6])
    np.testing.assert_allclose(result.minimizer, expected, atol=1e-6)


def test_rastrigin_relaxation_on_the_full_box() -> None:
    f = get_instance("Rastrigin").expression()
    box = parse_box("[-5.12,5.12]x[-5.12,5.12]")
    alpha = certify(f, box, SolverConfig()).alpha
    np.testing.assert_allclose(alpha, [20 * math.pi**2 - 1] * 2, rtol=1e-12)
    result = minimize_on_box(f, box, alpha, SolverConfig())
    assert result.converged
    np.testing.assert_allclose(result.minimizer, [0.0, 0.0], atol=1e-6)
    assert result.value == pytest.approx(relaxed_value(f, box, alpha, [0.0, 0.0]))
    assert result.value <= _relaxed_grid_minimum(f, box, alpha, 401) + 1e-3


def test_value_is_relaxation_at_minimizer() -> None:
    f = get_instance("Himmelblau").expression()
    box = parse_box("[2,4]x[1,3]")
    alpha = certify(f, box, SolverConfig()).alpha
    result = minimize_on_box(f, box, alpha, SolverConfig())
    assert result.value == relaxed_value(f, box, alpha, result.minimizer)
    assert box.contains(result.minimizer, slack=1e-12)


@pytest.mark.parametrize("name", names("finite") + names("infinite"))
def test_matches_grid_oracle_on_random_subproblems(name: str) -> None:
    instance = get_instance(name)
    f = instance.expression()
    cfg = SolverConfig()
    rng = np.random.default_rng(20)
    lower, upper = instance.box.lower, instance.box.upper
    for _ in range(9):
        fraction = rng.uniform(0.01, 0.3, size=2)
        start = rng.uniform(lower, upper - fraction * (upper - lower))
        box = BoxRegion.from_arrays(start, start + fraction * (upper - lower))
        alpha = certify(f, box, cfg).alpha
        result = minimize_on_box(f, box, alpha, cfg)
        assert box.contains(result.minimizer, slack=1e-12)
        assert result.value <= _relaxed_grid_minimum(f, box, alpha, 201) + 1e-4


def test_is_deterministic() -> None:
    f = get_instance("Shubert").expression()
    box = parse_box("[-2,1]x[3,5]")
    alpha = certify(f, box, SolverConfig()).alpha
    first = minimize_on_box(f, box, alpha, SolverConfig())
    second = minimize_on_box(f, box, alpha, SolverConfig())
    np.testing.assert_array_equal(first.minimizer, second.minimizer)
    assert (first.value, first.iterations, first.converged) == (second.value, second.iterations, second.converged)


def test_iteration_cap_returns_best_iterate() -> None:
    f = parse("x1^4", 1)
    result = minimize_on_box(f, parse_box("[-1,2]"), [0], SolverConfig(inner_max_iters=1))
    assert not result.converged
    assert result.iterations == 1
    assert result.value <= f.evaluate([0.5])
    assert result.value == f.evaluate(result.minimizer)


@pytest.mark.parametrize("name", ["Rastrigin", "Shubert"])
def test_oscillating_subproblems_finish_well_before_the_cap(name: str) -> None:
    instance = get_instance(name)
    f = instance.expression()
    cfg = SolverConfig()
    rng = np.random.default_rng(7)
    lower, upper = instance.box.lower, instance.box.upper
    for _ in range(9):
        fraction = rng.uniform(0.01, 0.3, size=2)
        start = rng.uniform(lower, upper - fraction * (upper - lower))
        box = BoxRegion.from_arrays(start, start + fraction * (upper - lower))
        alpha = certify(f, box, cfg).alpha
        result = minimize_on_box(f, box, alpha, cfg)
        assert result.iterations < 1000
        assert result.value <= _relaxed_grid_minimum(f, box, alpha, 201) + 1e-4


def test_stall_exit_on_a_flat_objective() -> None:
    f = parse("1e20 + x1^2", 1)
    result = minimize_on_box(f, parse_box("[0.5,1]"), [0], SolverConfig())
    assert result.iterations <= 1
    np.testing.assert_array_equal(result.minimizer, [0.5])
