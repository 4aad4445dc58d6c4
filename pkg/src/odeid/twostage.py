"""Two-stage estimation of the system matrix: A_hat = Y L Y' (Y S Y')^-1.

Both variants reduce to a pair of n x n operator matrices (S, L) applied to
the data matrix:

* simple: S = I, L = forward differences over a uniform grid (scaled 1/dt);
* functional: fit each row with roughness-penalized B-splines (knots at every
  observation time), then S = H J H' and L = H W1 H' where H maps data to
  basis coefficients, J is the basis Gram matrix and W1 the
  derivative-by-value cross Gram.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.interpolate import BSpline

from .conditioning import frobenius_cond_from_sv, is_singular
from .dynamics import TimeGrid, grid_of, values
from .errors import (
    DimensionMismatch,
    IllConditionedBasis,
    NonUniformGrid,
    SingularGram,
    ZeroTruth,
)

KIND_SIMPLE = "simple"
KIND_SPLINE = "spline"

BASIS_COND_LIMIT = 1e14
HAT_JITTER = 1e-12


@dataclass(frozen=True)
class SmootherOperators:
    """Operator pair (S, L) plus enough spline bookkeeping to evaluate fits."""

    S: np.ndarray
    L: np.ndarray
    kind: str
    grid: TimeGrid
    lam: float | None = None
    order: int | None = None
    basis_size: int | None = None
    knots: np.ndarray | None = field(default=None, repr=False)
    hat: np.ndarray | None = field(default=None, repr=False)  # n x B data-to-coefficients

    @property
    def n(self) -> int:
        return self.grid.n


@dataclass(frozen=True)
class EstimateReport:
    A_hat: np.ndarray
    gram_cond: float
    ree: float | None = None


def simple_operators(grid: TimeGrid) -> SmootherOperators:
    """No smoothing: S = I_n, L = forward-difference matrix / dt (last column zero)."""
    dt = grid.spacing()
    if dt is None:
        raise NonUniformGrid("the simple two-stage method needs a uniform grid")
    n = grid.n
    L = np.zeros((n, n))
    idx = np.arange(n - 1)
    L[idx, idx] = -1.0 / dt
    L[idx + 1, idx] = 1.0 / dt
    return SmootherOperators(S=np.eye(n), L=L, kind=KIND_SIMPLE, grid=grid)


def _deriv_design(x: np.ndarray, t: np.ndarray, p: int, nu: int):
    """Sparse design matrix of nu-th derivatives of the degree-p basis at x.

    Uses the B-spline derivative recurrence
    B'_{a,p} = p * (B_{a,p-1}/(t[a+p]-t[a]) - B_{a+1,p-1}/(t[a+p+1]-t[a+1])),
    with 0 coefficients where a knot span collapses.
    """
    if nu == 0:
        return BSpline.design_matrix(x, t, p)
    lower = _deriv_design(x, t, p - 1, nu - 1)  # len(x) x (B+1)
    B = len(t) - p - 1
    d1 = t[p : p + B] - t[:B]
    d2 = t[p + 1 : p + 1 + B] - t[1 : 1 + B]
    c1 = np.where(d1 > 0, p / np.where(d1 > 0, d1, 1.0), 0.0)
    c2 = np.where(d2 > 0, p / np.where(d2 > 0, d2, 1.0), 0.0)
    D = lower[:, :B].multiply(c1[None, :]) - lower[:, 1 : B + 1].multiply(c2[None, :])
    return scipy.sparse.csr_matrix(D)


def _gauss_points(breaks: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    xg, wg = np.polynomial.legendre.leggauss(q)
    mid = (breaks[1:] + breaks[:-1]) / 2.0
    half = (breaks[1:] - breaks[:-1]) / 2.0
    X = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    W = (half[:, None] * np.broadcast_to(wg, (half.size, q))).ravel()
    return X, W


def _basis_gram(t: np.ndarray, p: int, nu1: int, nu2: int) -> np.ndarray:
    """Exact integral of (d^nu1 basis_a)(d^nu2 basis_b) via per-interval Gauss rule."""
    breaks = np.unique(t)
    X, W = _gauss_points(breaks, p + 1)
    D1 = _deriv_design(X, t, p, nu1)
    D2 = D1 if nu2 == nu1 else _deriv_design(X, t, p, nu2)
    G = (D1.multiply(W[:, None])).T @ D2
    return np.asarray(G.todense())


def spline_operators(
    grid: TimeGrid,
    lam: float,
    order: int = 4,
    knots=None,
) -> SmootherOperators:
    """Roughness-penalized B-spline operators.

    Parameters
    ----------
    grid : TimeGrid
    lam : float
        Roughness penalty weight on the integrated squared second derivative.
    order : int
        Spline order (degree + 1); 4 = cubic.
    knots : array_like, optional
        Interior knots.  Default places a knot at every observation time (the
        smoothing-spline layout), giving basis size n + order - 2.
    """
    if lam < 0:
        raise IllConditionedBasis("lambda must be nonnegative", lam=lam)
    if order < 3:
        raise IllConditionedBasis("order must be at least 3 for a second-derivative penalty")
    pts = grid.points
    p = order - 1
    interior = pts[1:-1] if knots is None else np.asarray(knots, dtype=float)
    t = np.concatenate([np.full(order, pts[0]), interior, np.full(order, pts[-1])])
    B = len(t) - order
    if B < order:
        raise IllConditionedBasis("too few basis functions for this order", basis=B)

    Phi = BSpline.design_matrix(pts, t, p).toarray()
    J = _basis_gram(t, p, 0, 0)
    W1 = _basis_gram(t, p, 1, 0)  # rows: derivative index, columns: value index
    R = _basis_gram(t, p, 2, 2)

    M = Phi.T @ Phi + lam * R
    anorm = np.abs(M).sum(axis=0).max()
    chol = None
    for attempt in range(2):
        try:
            chol = scipy.linalg.cho_factor(M, lower=False)
            break
        except np.linalg.LinAlgError:
            M = M + (HAT_JITTER * np.trace(M)) * np.eye(B)
    if chol is None:
        try:
            chol = scipy.linalg.cho_factor(M, lower=False)
        except np.linalg.LinAlgError:
            raise IllConditionedBasis("penalized normal matrix is not positive definite")
    rcond, info = scipy.linalg.lapack.dpocon(chol[0], anorm)
    cond = np.inf if rcond == 0 else 1.0 / rcond
    if info != 0 or cond > BASIS_COND_LIMIT:
        raise IllConditionedBasis(
            "penalized basis is numerically singular", cond=float(cond)
        )

    hat = scipy.linalg.cho_solve(chol, Phi.T).T  # n x B
    HJ = hat @ J
    S = HJ @ hat.T
    S = (S + S.T) / 2.0
    L = (hat @ W1) @ hat.T
    return SmootherOperators(
        S=S,
        L=L,
        kind=KIND_SPLINE,
        grid=grid,
        lam=float(lam),
        order=order,
        basis_size=B,
        knots=t,
        hat=hat,
    )


def fitted_curves(data, ops: SmootherOperators, tnew=None, deriv: int = 0) -> np.ndarray:
    """Evaluate the spline fit (or one of its derivatives) at new times."""
    if ops.kind != KIND_SPLINE:
        raise DimensionMismatch("fitted curves are only defined for spline operators")
    Y = values(data)
    coef = Y @ ops.hat  # d x B
    x = ops.grid.points if tnew is None else np.asarray(tnew, dtype=float).ravel()
    D = _deriv_design(x, ops.knots, ops.order - 1, deriv)
    return coef @ D.toarray().T


def _gram_pair(data, ops: SmootherOperators) -> tuple[np.ndarray, np.ndarray]:
    Y = values(data)
    g = grid_of(data)
    if g is not None and g.n != ops.n:
        raise DimensionMismatch("data grid does not match the operators", n=ops.n)
    if Y.shape[1] != ops.n:
        raise DimensionMismatch("data has the wrong number of time points", n=ops.n)
    GS = Y @ ops.S @ Y.T
    GS = (GS + GS.T) / 2.0
    GL = Y @ ops.L @ Y.T
    return GS, GL


def two_stage_estimate(data, ops: SmootherOperators, truth=None) -> EstimateReport:
    """Estimate the system matrix from sampled data.

    Solves ``A_hat (Y S Y') = Y L Y'`` by a symmetric linear solve rather than
    forming the inverse; raises :class:`~odeid.errors.SingularGram` when the
    smoothed Gram matrix is numerically singular (the practical
    unidentifiability signal), carrying its condition number.
    """
    GS, GL = _gram_pair(data, ops)
    sv = np.linalg.svd(GS, compute_uv=False)
    cond = frobenius_cond_from_sv(sv)
    if is_singular(sv):
        raise SingularGram("smoothed Gram matrix is numerically singular", cond=cond)
    A_hat = np.linalg.solve(GS, GL.T).T
    out_ree = None
    if truth is not None:
        out_ree = ree(A_hat, truth)
    return EstimateReport(A_hat=A_hat, gram_cond=cond, ree=out_ree)


def ree(A_hat, A) -> float:
    """Relative estimation error ||A_hat - A||_F / ||A||_F."""
    A_hat = np.asarray(A_hat, dtype=float)
    A = np.asarray(A, dtype=float)
    if A_hat.shape != A.shape:
        raise DimensionMismatch("shapes differ", got=list(A_hat.shape), expected=list(A.shape))
    denom = np.linalg.norm(A)
    if denom == 0.0:
        raise ZeroTruth("REE is undefined for a zero truth matrix")
    return float(np.linalg.norm(A_hat - A) / denom)
