"""Frobenius-norm condition numbers and the shared singularity threshold."""

from __future__ import annotations

import numpy as np

# Smallest singular value below SINGULAR_RTOL * largest counts as numerically zero.
SINGULAR_RTOL = 1e-14


def singular_values(M: np.ndarray) -> np.ndarray:
    return np.linalg.svd(np.asarray(M, dtype=float), compute_uv=False)


def is_singular(sv: np.ndarray) -> bool:
    if sv.size == 0 or sv[0] == 0.0 or not np.all(np.isfinite(sv)):
        return True
    return sv[-1] < SINGULAR_RTOL * sv[0]


def frobenius_cond_from_sv(sv: np.ndarray) -> float:
    """kappa_F = ||M||_F * ||M^-1||_F from the singular values; +inf when singular."""
    if is_singular(sv):
        return float("inf")
    return float(np.sqrt(np.sum(sv**2)) * np.sqrt(np.sum(sv**-2.0)))


def frobenius_cond(M: np.ndarray) -> float:
    M = np.asarray(M, dtype=float)
    if M.shape[0] != M.shape[1]:
        raise ValueError("condition number requires a square matrix")
    return frobenius_cond_from_sv(singular_values(M))
