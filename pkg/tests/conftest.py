import functools

import pytest

from moderf import picard, shooting


@functools.lru_cache(maxsize=None)
def picard_solution(delta: float):
    sol, iterations = picard.solve_fixed_point(delta)
    return sol, iterations


@functools.lru_cache(maxsize=None)
def shooting_solution(delta: float):
    return shooting.solve_bvp(delta)


@pytest.fixture(scope="session")
def solve_picard():
    return picard_solution


@pytest.fixture(scope="session")
def solve_shooting():
    return shooting_solution


@pytest.fixture(scope="session")
def erf_grid():
    return picard.erf_grid()
