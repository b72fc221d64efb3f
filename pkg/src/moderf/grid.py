"""Uniform-grid sampling of functions on [0, x_max]."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def grid_size(x_max: float, step: float) -> int:
    """Number of nodes of the uniform grid over [0, x_max] with spacing step."""
    if not (x_max > 0.0 and 0.0 < step < x_max):
        raise ValueError(f"need 0 < step < x_max, got step={step}, x_max={x_max}")
    n = round(x_max / step) + 1
    if abs(step * (n - 1) - x_max) > 1e-9 * max(1.0, abs(x_max)):
        raise ValueError(f"step {step} does not evenly divide x_max {x_max}")
    return n


def grid_nodes(x_max: float, step: float) -> np.ndarray:
    """The nodes 0, step, 2*step, ..., x_max."""
    return np.linspace(0.0, x_max, grid_size(x_max, step))


@dataclass(frozen=True)
class GridFunction:
    """A real function sampled on the uniform grid over [0, x_max].

    values[i] approximates f(i * step); the data is immutable after
    construction.
    """

    x_max: float
    step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = grid_size(self.x_max, self.step)
        vals = np.array(self.values, dtype=float, copy=True)
        if vals.ndim != 1 or vals.size != n:
            raise ValueError(
                f"expected {n} values for x_max={self.x_max}, step={self.step}, "
                f"got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid values must all be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, f, x_max: float, step: float) -> "GridFunction":
        xs = grid_nodes(x_max, step)
        return cls(x_max, step, np.array([f(v) for v in xs]))

    @property
    def nodes(self) -> np.ndarray:
        return grid_nodes(self.x_max, self.step)

    def __len__(self) -> int:
        return self.values.size

    def same_grid(self, other: "GridFunction") -> bool:
        return len(self) == len(other) and math_isclose(
            self.x_max, other.x_max
        ) and math_isclose(self.step, other.step)

    def sup_diff(self, other: "GridFunction") -> float:
        """Discrete sup-norm distance to another function on the same grid."""
        if not self.same_grid(other):
            raise ValueError("grid functions live on different grids")
        return float(np.abs(self.values - other.values).max())


def math_isclose(a: float, b: float) -> bool:
    return abs(a - b) <= 1e-12 * max(1.0, abs(a), abs(b))
