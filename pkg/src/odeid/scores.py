"""The four identifiability scores: ICIS, Stanhope's kappa, SCN, and PIS.

All condition numbers are Frobenius-norm condition numbers, and a smallest
singular value below 1e-14 of the largest counts as singular (scored +inf).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .conditioning import frobenius_cond_from_sv, is_singular
from .dynamics import Observations, values
from .errors import DimensionMismatch, SingularGram, TooFewTimePoints
from .identcore import block_coefficients
from .realjordan import real_jordan
from .twostage import SmootherOperators, two_stage_estimate


@dataclass(frozen=True)
class IdentReport:
    """One (A, x0, data) instance scored four ways."""

    kappa: float
    scn: float
    pis: float
    icis: float | None = None
    metadata: dict = field(default_factory=dict)


def icis_score(A, x0) -> float:
    """ICIS through a forced block decomposition (never raises on repeated eigenvalues).

    For distinct eigenvalues this equals the canonical ICIS; for (near-)
    repeated ones it reports whatever the numerical block basis yields, which
    is the value a plain numerical Jordan decomposition would produce.
    """
    jf = real_jordan(np.asarray(A, dtype=float), eig_tol=0.0)
    return block_coefficients(jf, x0).icis


def stanhope_kappa(Y) -> float:
    """Frobenius condition number of the first d observation columns."""
    Yv = values(Y)
    d, n = Yv.shape
    if n < d:
        raise TooFewTimePoints("need at least d time points", d=d, n=n)
    sv = np.linalg.svd(Yv[:, :d], compute_uv=False)
    return frobenius_cond_from_sv(sv)


def scn(Y, ops: SmootherOperators) -> float:
    """Smoothed condition number: Frobenius condition of Y S Y'."""
    Yv = values(Y)
    if Yv.shape[1] != ops.n:
        raise DimensionMismatch("data has the wrong number of time points", n=ops.n)
    G = Yv @ ops.S @ Yv.T
    G = (G + G.T) / 2.0
    sv = np.linalg.svd(G, compute_uv=False)
    return frobenius_cond_from_sv(sv)


def w_function(X, A, ops: SmootherOperators) -> float:
    """Noise-sensitivity functional W(X | A, S, L).

    Trace expression bounding the estimator mean squared error per unit noise
    variance: nine sandwich terms contracted against N^2 = (X S X')^-2 plus
    three trace scalars multiplied by tr(N^2).  Reported as computed; it is
    not clamped at zero.
    """
    Xv = values(X)
    A = np.asarray(A, dtype=float)
    d = Xv.shape[0]
    if A.shape != (d, d):
        raise DimensionMismatch("A must be d x d", d=d, got=list(A.shape))
    if Xv.shape[1] != ops.n:
        raise DimensionMismatch("data has the wrong number of time points", n=ops.n)
    S, L = ops.S, ops.L

    # All sandwich terms are built from four d x n products; note
    # (X @ M.T).T = M @ X', so e.g. X L' L X' = XLt @ XLt'.
    XS = Xv @ S
    XSt = Xv @ S.T
    XL = Xv @ L
    XLt = Xv @ L.T

    GS = XS @ Xv.T
    GS = (GS + GS.T) / 2.0
    sv = np.linalg.svd(GS, compute_uv=False)
    if is_singular(sv):
        raise SingularGram(
            "X S X' is numerically singular", cond=frobenius_cond_from_sv(sv)
        )
    N = np.linalg.solve(GS, np.eye(d))
    N2 = N @ N

    trA = float(np.trace(A))
    AtA = A.T @ A

    sandwich = (
        XL @ XLt.T                       # X L^2 X'
        + d * (XLt @ XLt.T)              # d * X L' L X'
        + XLt @ XL.T                     # X (L')^2 X'
        - 2.0 * (A @ (XS @ XLt.T))       # A X S L X'
        - 2.0 * trA * (XSt @ XLt.T)      # tr(A) X S' L X'
        - 2.0 * (XSt @ XL.T) @ A         # X S' L' X' A
        + AtA @ (XS @ XSt.T)             # A'A X S^2 X'
        + float(np.trace(AtA)) * (XSt @ XSt.T)  # tr(A'A) X S' S X'
        + (XSt @ XS.T) @ AtA             # X (S')^2 X' A'A
    )

    trace_scalar = (
        float(np.sum(XL * XL))                  # tr(L' X' X L)
        - 2.0 * float(np.sum(XS * (A.T @ XL)))  # tr(S' X' A' X L)
        + float(np.sum((A @ XS) ** 2))          # tr(S' X' A'A X S)
    )

    return float(np.trace(N2 @ sandwich) + trace_scalar * np.trace(N2))


def pis(Y, ops: SmootherOperators) -> float:
    """Practical identifiability score: W evaluated at the data and its own estimate."""
    report = two_stage_estimate(Y, ops)
    return w_function(Y, report.A_hat, ops)


def ident_report(Y, ops: SmootherOperators, A=None, x0=None) -> IdentReport:
    """Assemble all applicable scores for one dataset.

    A singular smoothed Gram is scored as +inf for SCN and PIS (worst
    practical identifiability) rather than raised, and noted in the metadata.
    ICIS is included only when the system and initial condition are supplied.
    """
    Yv = values(Y)
    d, n = Yv.shape
    meta: dict = {"d": d, "n": n}
    if isinstance(Y, Observations) and Y.sigma is not None:
        meta["sigma"] = Y.sigma
    if ops.lam is not None:
        meta["lambda"] = ops.lam

    kappa = stanhope_kappa(Y)
    tau = scn(Y, ops)
    try:
        w = pis(Y, ops)
    except SingularGram:
        w = float("inf")
        meta["singular_gram"] = True
    if np.isfinite(w) and w < 0:
        meta["pis_negative"] = True

    icis = None
    if A is not None:
        if x0 is None:
            raise DimensionMismatch("x0 is required when A is supplied")
        icis = icis_score(A, x0)
    return IdentReport(kappa=kappa, scn=tau, pis=w, icis=icis, metadata=meta)
