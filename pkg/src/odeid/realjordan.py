"""Real Jordan canonical form for matrices with distinct eigenvalues.

A real square matrix ``A`` with distinct eigenvalues factors as ``A = Q L Q^-1``
where ``L`` is block diagonal: 1x1 blocks ``(c)`` for the real eigenvalues and
2x2 blocks ``[[a, -b], [b, a]]`` (``b > 0``) for each complex-conjugate pair
``a +- b i``.  The columns of ``Q`` spanning one block form a basis of the
corresponding invariant subspace.

Canonical choices pinned here (the factorization is otherwise non-unique;
block-coefficient magnitudes, and therefore the ICIS, depend on them):

* real blocks first, sorted by ascending eigenvalue; complex blocks next,
  sorted by ascending real part then ascending imaginary part;
* real eigenvector columns have unit Euclidean norm; the two columns of a
  complex pair are rotated within their plane until they share the same norm
  (in-plane rotations commute with the 2x2 block, so its entries are
  unchanged) and then scaled to norm 1/sqrt(2) each, so the underlying
  complex eigenvector u + i v has unit norm -- the normalization standard
  eigensolvers emit;
* signs fixed so the largest-magnitude entry of each real eigenvector, and of
  the first column of each pair, is positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, NonFinite, RepeatedEigenvalues

KIND_REAL = "real"
KIND_COMPLEX = "complex-pair"

DEFAULT_EIG_TOL = 1e-8


@dataclass(frozen=True)
class EigenBlock:
    """One Jordan block: a real eigenvalue or a complex-conjugate pair."""

    kind: str
    column_start: int
    width: int
    c: float | None = None
    a: float | None = None
    b: float | None = None

    @property
    def is_real(self) -> bool:
        return self.kind == KIND_REAL

    def matrix(self) -> np.ndarray:
        if self.is_real:
            return np.array([[self.c]])
        return np.array([[self.a, -self.b], [self.b, self.a]])

    def eigenvalues(self) -> list[complex]:
        if self.is_real:
            return [complex(self.c)]
        return [complex(self.a, self.b), complex(self.a, -self.b)]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "column_start": self.column_start}
        if self.is_real:
            out["c"] = self.c
        else:
            out["a"] = self.a
            out["b"] = self.b
        return out


@dataclass(frozen=True)
class RealJordanForm:
    """The factorization A = Q L Q^-1 with block bookkeeping."""

    Q: np.ndarray
    Qinv: np.ndarray
    blocks: tuple[EigenBlock, ...]
    K1: int
    K2: int

    @property
    def d(self) -> int:
        return self.Q.shape[0]

    @property
    def n_blocks(self) -> int:
        return self.K1 + self.K2

    def block_diagonal(self) -> np.ndarray:
        """Assemble the block-diagonal middle factor L from the blocks."""
        L = np.zeros((self.d, self.d))
        for blk in self.blocks:
            i = blk.column_start
            L[i : i + blk.width, i : i + blk.width] = blk.matrix()
        return L

    def matrix(self) -> np.ndarray:
        """Reconstruct the original matrix Q L Q^-1."""
        return self.Q @ self.block_diagonal() @ self.Qinv

    def columns_of_block(self, k: int) -> range:
        blk = self.blocks[k]
        return range(blk.column_start, blk.column_start + blk.width)

    def block_of_column(self, i: int) -> int:
        """Inverse of the column map: index k of the block owning column i."""
        if i < self.K1:
            return i
        return self.K1 + (i - self.K1) // 2

    def eigenvalues(self) -> np.ndarray:
        return np.array([lam for blk in self.blocks for lam in blk.eigenvalues()])

    def to_json(self) -> dict:
        return {
            "Q": self.Q.tolist(),
            "blocks": [blk.to_json() for blk in self.blocks],
            "K1": self.K1,
            "K2": self.K2,
        }


def _validate_square(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise NonFinite("expected a nonempty square matrix", shape=list(A.shape))
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix contains NaN or Inf")
    return A


def _balanced_pair(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Canonical basis of a complex pair: balanced columns of norm 1/sqrt(2).

    The rotation family (u, v) -> (c*u - s*v, s*u + c*v) is exactly the set of
    transformations commuting with [[a,-b],[b,a]], so the stored block entries
    are preserved.  Solving cos(2t) * (|u|^2 - |v|^2) = 2 sin(2t) * <u, v>
    equalizes the norms; the common scale then normalizes u + i v to a unit
    complex vector.
    """
    diff = float(u @ u - v @ v)
    cross = float(u @ v)
    t = 0.5 * np.arctan2(diff, 2.0 * cross)
    c, s = np.cos(t), np.sin(t)
    up = c * u - s * v
    vp = s * u + c * v
    nu, nv = np.linalg.norm(up), np.linalg.norm(vp)
    if nu == 0.0 or nv == 0.0:
        raise NonFinite("degenerate complex eigenvector pair")
    return up / (nu * np.sqrt(2.0)), vp / (nv * np.sqrt(2.0))


def _fix_sign_real(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec)))
    return -vec if vec[k] < 0 else vec


def min_eigen_gap(A: np.ndarray) -> float:
    """Minimum complex-plane distance between any two eigenvalues of A.

    Zero iff an eigenvalue is exactly repeated; +inf for 1x1 matrices (no pair).
    """
    A = _validate_square(A)
    w = np.linalg.eigvals(A)
    if w.size < 2:
        return float("inf")
    diff = np.abs(w[:, None] - w[None, :])
    iu = np.triu_indices(w.size, k=1)
    return float(diff[iu].min())


def real_jordan(A: np.ndarray, eig_tol: float = DEFAULT_EIG_TOL) -> RealJordanForm:
    """Compute the canonical real Jordan form of a matrix with distinct eigenvalues.

    Parameters
    ----------
    A : (d, d) array_like
        Real matrix with finite entries.
    eig_tol : float
        Relative eigenvalue-separation tolerance.  Any two eigenvalues closer
        than ``eig_tol * max(1, spectral radius)`` raise
        :class:`~odeid.errors.RepeatedEigenvalues`, signalling the caller to
        use the repeated-eigenvalue pathway.  Pass ``0.0`` to force a
        decomposition regardless (used when scoring systems that are known to
        have repeated eigenvalues; the result is then not guaranteed to be
        well conditioned).

    Returns
    -------
    RealJordanForm
    """
    A = _validate_square(A)
    w, V = np.linalg.eig(A)

    scale = max(1.0, float(np.abs(w).max()))
    if eig_tol > 0.0 and w.size >= 2:
        diff = np.abs(w[:, None] - w[None, :])
        iu = np.triu_indices(w.size, k=1)
        close = diff[iu] < eig_tol * scale
        if np.any(close):
            rows, cols = iu[0][close], iu[1][close]
            pairs = [
                (complex(w[i]), complex(w[j])) for i, j in zip(rows, cols)
            ]
            raise RepeatedEigenvalues(
                "eigenvalues are repeated within tolerance",
                pairs=[[p[0].real, p[0].imag, p[1].real, p[1].imag] for p in pairs],
            )

    # LAPACK dgeev returns complex conjugate pairs adjacently, positive
    # imaginary part first, and exactly-zero imaginary parts for real
    # eigenvalues of a real matrix.
    reals: list[tuple[float, np.ndarray]] = []
    pairs: list[tuple[float, float, np.ndarray, np.ndarray]] = []
    i = 0
    while i < w.size:
        lam = w[i]
        if np.iscomplexobj(w) and lam.imag != 0.0:
            if not (i + 1 < w.size and w[i + 1] == np.conj(lam)):
                raise NonFinite("unexpected eigenvalue ordering from LAPACK")
            if lam.imag < 0:
                lam = w[i + 1]
                vec = np.asarray(V[:, i + 1])
            else:
                vec = np.asarray(V[:, i])
            # eigenvector u + i*v of a + i*b; the basis (u, -v) realizes the
            # canonical block [[a,-b],[b,a]]
            up, vp = _balanced_pair(vec.real, -vec.imag)
            pairs.append((float(lam.real), float(lam.imag), up, vp))
            i += 2
        else:
            vec = np.asarray(V[:, i]).real.copy()
            vec /= np.linalg.norm(vec)
            reals.append((float(np.real(lam)), vec))
            i += 1

    reals.sort(key=lambda item: item[0])
    pairs.sort(key=lambda item: (item[0], item[1]))

    d = A.shape[0]
    Q = np.empty((d, d))
    blocks: list[EigenBlock] = []
    col = 0
    for c, vec in reals:
        Q[:, col] = _fix_sign_real(vec)
        blocks.append(EigenBlock(KIND_REAL, column_start=col, width=1, c=c))
        col += 1
    for a, b, up, vp in pairs:
        k = int(np.argmax(np.abs(up)))
        if up[k] < 0:
            up, vp = -up, -vp
        Q[:, col] = up
        Q[:, col + 1] = vp
        blocks.append(EigenBlock(KIND_COMPLEX, column_start=col, width=2, a=a, b=b))
        col += 2

    Qinv = np.linalg.inv(Q)
    return RealJordanForm(
        Q=Q, Qinv=Qinv, blocks=tuple(blocks), K1=len(reals), K2=len(pairs)
    )


def invariant_subspace_basis(jf: RealJordanForm, block_set) -> np.ndarray:
    """Concatenated Q-columns of the selected blocks (0-based block indices).

    The returned columns span an A-invariant subspace: the span of any union
    of block subspaces is invariant, and every invariant subspace arises this
    way when the eigenvalues are distinct.
    """
    ks = sorted(set(int(k) for k in block_set))
    if not ks:
        raise IndexOutOfRange("block_set must be nonempty")
    if ks[0] < 0 or ks[-1] >= jf.n_blocks:
        raise IndexOutOfRange(
            "block index out of range", n_blocks=jf.n_blocks, requested=ks
        )
    cols = [i for k in ks for i in jf.columns_of_block(k)]
    return jf.Q[:, cols].copy()
