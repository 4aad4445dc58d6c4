"""Forward problem: matrix-exponential trajectories, noise, and Gram matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import DimensionMismatch, GridMismatch, NonFinite, Overflow
from .randgen import as_generator


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing sample times t_1 < ... < t_n."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).ravel()
        if pts.size < 2:
            raise ValueError("a time grid needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("time grid contains NaN or Inf")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("time grid must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.size

    @property
    def span(self) -> float:
        return float(self.points[-1] - self.points[0])

    def spacing(self, rtol: float = 1e-10) -> float | None:
        """Common step when the grid is uniform (within rtol), else None."""
        steps = np.diff(self.points)
        dt = steps.mean()
        if np.all(np.abs(steps - dt) <= rtol * abs(dt)):
            return float(dt)
        return None

    @classmethod
    def uniform(cls, t0: float, t1: float, n: int) -> "TimeGrid":
        return cls(np.linspace(t0, t1, n))

    def trapezoid_weights(self) -> np.ndarray:
        t = self.points
        w = np.empty(self.n)
        w[0] = (t[1] - t[0]) / 2.0
        w[-1] = (t[-1] - t[-2]) / 2.0
        w[1:-1] = (t[2:] - t[:-2]) / 2.0
        return w


@dataclass(frozen=True)
class Trajectory:
    """Noise-free solution samples, column j = x(t_j)."""

    grid: TimeGrid
    X: np.ndarray

    @property
    def d(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True)
class Observations:
    """Noisy samples Y = X + eps with noise scale sigma (None when unknown)."""

    grid: TimeGrid
    Y: np.ndarray
    sigma: float | None = 0.0

    @property
    def d(self) -> int:
        return self.Y.shape[0]


def values(data) -> np.ndarray:
    """The d x n sample matrix of a Trajectory / Observations / plain array."""
    if isinstance(data, Trajectory):
        return data.X
    if isinstance(data, Observations):
        return data.Y
    return np.atleast_2d(np.asarray(data, dtype=float))


def grid_of(data) -> TimeGrid | None:
    return data.grid if isinstance(data, (Trajectory, Observations)) else None


def solve(A, x0, grid: TimeGrid) -> Trajectory:
    """Sample the trajectory x(t) = e^{tA} x0 on the grid.

    Each column is an independent scaling-and-squaring Pade matrix exponential
    applied to x0, so results do not depend on evaluation order.
    """
    A = np.asarray(A, dtype=float)
    x0 = np.asarray(x0, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("A must be square", shape=list(A.shape))
    if x0.shape[0] != A.shape[0]:
        raise DimensionMismatch("x0 length does not match A", d=A.shape[0])
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(x0))):
        raise NonFinite("inputs contain NaN or Inf")
    d = A.shape[0]
    X = np.empty((d, grid.n))
    with np.errstate(over="ignore", invalid="ignore"):
        for j, t in enumerate(grid.points):
            if t == 0.0:
                X[:, j] = x0
            else:
                X[:, j] = expm(t * A) @ x0
    if not np.all(np.isfinite(X)):
        raise Overflow("trajectory exceeded floating-point range")
    return Trajectory(grid=grid, X=X)


def add_noise(traj: Trajectory, sigma: float, rng_seed) -> Observations:
    """Add i.i.d. Normal(0, sigma^2) measurement noise, deterministic per seed."""
    if sigma < 0:
        raise NonFinite("sigma must be nonnegative", sigma=sigma)
    if sigma == 0.0:
        return Observations(grid=traj.grid, Y=traj.X.copy(), sigma=0.0)
    gen = as_generator(rng_seed)
    eps = gen.normal(0.0, sigma, size=traj.X.shape)
    return Observations(grid=traj.grid, Y=traj.X + eps, sigma=float(sigma))


def gram(traj_a, traj_b) -> np.ndarray:
    """Pairwise L2 inner-product matrix, entry (i, j) ~ integral of x_i * y_j dt.

    Composite trapezoid on the shared grid; symmetrized when both arguments
    carry the same samples (the same-curve Gram is symmetric PSD).
    """
    ga, gb = grid_of(traj_a), grid_of(traj_b)
    if ga is None or gb is None:
        raise GridMismatch("gram needs Trajectory/Observations inputs with grids")
    if ga.n != gb.n or not np.array_equal(ga.points, gb.points):
        raise GridMismatch("time grids differ")
    Xa, Xb = values(traj_a), values(traj_b)
    w = ga.trapezoid_weights()
    G = (Xa * w) @ Xb.T
    if Xa.shape == Xb.shape and (Xa is Xb or np.array_equal(Xa, Xb)):
        G = (G + G.T) / 2.0
    return G
