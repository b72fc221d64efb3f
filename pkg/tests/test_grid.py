import numpy as np
import pytest

from moderf.grid import GridFunction, grid_nodes, grid_size


def test_grid_size_round_trips_default_grid():
    assert grid_size(10.0, 0.01) == 1001
    assert grid_size(1.6, 0.01) == 161


def test_grid_size_rejects_bad_spacing():
    with pytest.raises(ValueError):
        grid_size(10.0, 0.013)
    with pytest.raises(ValueError):
        grid_size(-1.0, 0.01)
    with pytest.raises(ValueError):
        grid_size(1.0, 2.0)


def test_grid_nodes_endpoints():
    xs = grid_nodes(10.0, 0.01)
    assert xs[0] == 0.0
    assert xs[-1] == 10.0
    assert len(xs) == 1001
    steps = np.diff(xs)
    assert abs(steps - 0.01).max() < 1e-12


def test_gridfunction_validation():
    with pytest.raises(ValueError):
        GridFunction(10.0, 0.01, np.zeros(1000))
    with pytest.raises(ValueError):
        GridFunction(10.0, 0.01, np.full(1001, np.nan))


def test_gridfunction_immutable():
    g = GridFunction(1.0, 0.5, np.array([0.0, 0.5, 1.0]))
    with pytest.raises(ValueError):
        g.values[0] = 3.0


def test_gridfunction_from_callable_and_sup_diff():
    f = GridFunction.from_callable(lambda x: x * x, 2.0, 0.5)
    g = GridFunction.from_callable(lambda x: x * x + 1e-3, 2.0, 0.5)
    assert f.sup_diff(g) == pytest.approx(1e-3, rel=1e-9)
    assert f.sup_diff(f) == 0.0


def test_sup_diff_requires_same_grid():
    f = GridFunction.from_callable(lambda x: x, 2.0, 0.5)
    g = GridFunction.from_callable(lambda x: x, 2.0, 0.25)
    with pytest.raises(ValueError):
        f.sup_diff(g)
