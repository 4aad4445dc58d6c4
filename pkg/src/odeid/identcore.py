"""Identifiability of (A, x0) pairs and the structure of unidentifiable classes.

A system with distinct eigenvalues is identifiable at ``x0`` exactly when
every Jordan block receives a nonzero share of the initial condition; the
minimum block-coefficient magnitude is the initial-condition identifiability
score (ICIS).  When some blocks receive nothing, every matrix of the form
``A + Q (I0 D I0) Q^-1`` produces the identical trajectory, and when an
eigenvalue is repeated no initial condition identifies ``A`` at all -- the
class is then ``P diag(J1 + U D U', J2) P^-1`` with ``U`` spanning the
orthogonal complement of the initial condition inside the repeated block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DefectiveBlock,
    DimensionMismatch,
    FullyIdentifiable,
    NonFinite,
    NoRepeatedEigenvalue,
    ZeroInitialCondition,
)
from .realjordan import DEFAULT_EIG_TOL, RealJordanForm, real_jordan

DEFAULT_ZERO_TOL = 1e-8
DEFAULT_ICIS_TOL = 1e-8

RANK_RTOL = 1e-10

VERDICT_IDENTIFIABLE = "Identifiable"
VERDICT_INITIAL_CONDITION = "UnidentifiableInitialCondition"
VERDICT_REPEATED_EIGEN = "UnidentifiableRepeatedEigen"

KIND_INVARIANT_SUBSPACE = "invariant-subspace"
KIND_REPEATED_EIGEN = "repeated-eigen"


@dataclass(frozen=True)
class BlockCoefficients:
    """Per-block decomposition of x0 in the Jordan basis, and its minimum."""

    w0: tuple
    magnitudes: np.ndarray
    icis: float


@dataclass(frozen=True)
class IdentVerdict:
    status: str
    icis: float | None = None
    gap: float | None = None

    @property
    def identifiable(self) -> bool:
        return self.status == VERDICT_IDENTIFIABLE


@dataclass(frozen=True)
class UnidentifiableClass:
    """Affine family of system matrices sharing one trajectory with ``base``.

    ``kind == "invariant-subspace"``: members are ``base + Q (I0 D I0) Q^-1``
    where ``i0`` marks the starved dimensions; the free parameter has
    ``dof = d0^2`` entries.

    ``kind == "repeated-eigen"``: members are
    ``base + P1 (U D U') R1`` where ``P1``/``R1`` are the repeated block's
    columns of ``Q`` / rows of ``Qinv`` and ``U' v = 0`` (plus the rotated
    companion condition in the complex case).
    """

    kind: str
    base: np.ndarray
    Q: np.ndarray
    Qinv: np.ndarray
    dof: int
    i0: np.ndarray | None = None          # 0/1 diagonal, invariant-subspace kind
    base_block: np.ndarray | None = None  # J restricted to the marked dims
    U: np.ndarray | None = None           # repeated-eigen kind
    block_width: int = 0
    multiplicity: int = 0
    eigenvalue: complex = 0j
    free_dim: int = field(default=0)      # side length of the compact D

    @property
    def d(self) -> int:
        return self.base.shape[0]

    def i0_matrix(self) -> np.ndarray:
        return np.diag(self.i0.astype(float))


def block_coefficients(jf: RealJordanForm, x0) -> BlockCoefficients:
    """Split ``Qinv @ x0`` into per-block pieces and take magnitudes.

    Real blocks contribute scalars, complex pairs 2-vectors; the ICIS is the
    minimum magnitude over all blocks.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    if x0.shape[0] != jf.d:
        raise DimensionMismatch(
            "x0 length does not match system dimension", d=jf.d, got=x0.shape[0]
        )
    if not np.all(np.isfinite(x0)):
        raise NonFinite("x0 contains NaN or Inf")
    if np.linalg.norm(x0) == 0.0:
        raise ZeroInitialCondition("ICIS is undefined for x0 = 0")
    xt = jf.Qinv @ x0
    w0 = []
    mags = np.empty(jf.n_blocks)
    for k, blk in enumerate(jf.blocks):
        piece = xt[blk.column_start : blk.column_start + blk.width]
        if blk.width == 1:
            w0.append(float(piece[0]))
            mags[k] = abs(piece[0])
        else:
            w0.append(piece.copy())
            mags[k] = np.linalg.norm(piece)
    return BlockCoefficients(w0=tuple(w0), magnitudes=mags, icis=float(mags.min()))


def is_identifiable(
    A,
    x0,
    icis_tol: float = DEFAULT_ICIS_TOL,
    eig_tol: float = DEFAULT_EIG_TOL,
) -> IdentVerdict:
    """Classify (A, x0): identifiable, starved initial condition, or repeated eigenvalues.

    Repeated eigenvalues dominate: they preclude identifiability at every
    initial condition, so that verdict is returned before the ICIS test.
    """
    A = np.asarray(A, dtype=float)
    x0 = np.asarray(x0, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("A must be square", shape=list(A.shape))
    if A.shape[0] != x0.shape[0]:
        raise DimensionMismatch("x0 length does not match A", d=A.shape[0])
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(x0))):
        raise NonFinite("inputs contain NaN or Inf")
    w = np.linalg.eigvals(A)
    if w.size >= 2:
        diff = np.abs(w[:, None] - w[None, :])
        gap = float(diff[np.triu_indices(w.size, k=1)].min())
    else:
        gap = float("inf")
    scale = max(1.0, float(np.abs(w).max()))
    if gap < eig_tol * scale:
        return IdentVerdict(status=VERDICT_REPEATED_EIGEN, gap=gap)
    bc = block_coefficients(real_jordan(A, eig_tol=eig_tol), x0)
    if bc.icis > icis_tol * np.linalg.norm(x0):
        return IdentVerdict(status=VERDICT_IDENTIFIABLE, icis=bc.icis)
    return IdentVerdict(status=VERDICT_INITIAL_CONDITION, icis=bc.icis)


def unidentifiable_class(
    jf: RealJordanForm, x0, zero_tol: float = DEFAULT_ZERO_TOL
) -> UnidentifiableClass:
    """Construct the invariant-subspace unidentifiable class at x0.

    The marked dimensions are those whose block coefficient is (numerically)
    zero relative to ``|x0|``; raises
    :class:`~odeid.errors.FullyIdentifiable` when there are none.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    bc = block_coefficients(jf, x0)
    thresh = zero_tol * np.linalg.norm(x0)
    s0 = [k for k in range(jf.n_blocks) if bc.magnitudes[k] <= thresh]
    if not s0:
        raise FullyIdentifiable(
            "all block coefficients are nonzero", icis=bc.icis
        )
    i0 = np.zeros(jf.d, dtype=int)
    for k in s0:
        for i in jf.columns_of_block(k):
            i0[i] = 1
    marked = np.flatnonzero(i0)
    J = jf.block_diagonal()
    base_block = J[np.ix_(marked, marked)]
    d0 = int(marked.size)
    return UnidentifiableClass(
        kind=KIND_INVARIANT_SUBSPACE,
        base=jf.matrix(),
        Q=jf.Q,
        Qinv=jf.Qinv,
        dof=d0 * d0,
        i0=i0,
        base_block=base_block,
        free_dim=d0,
    )


def _compact_free_matrix(cls: UnidentifiableClass, D) -> np.ndarray:
    q = cls.free_dim
    D = np.atleast_2d(np.asarray(D, dtype=float))
    if D.shape == (q, q):
        return D
    if cls.kind == KIND_INVARIANT_SUBSPACE and D.shape == (cls.d, cls.d):
        marked = np.flatnonzero(cls.i0)
        return D[np.ix_(marked, marked)]
    raise DimensionMismatch(
        "free-parameter matrix has the wrong shape",
        expected=[q, q],
        got=list(D.shape),
    )


def class_member(cls: UnidentifiableClass, D) -> np.ndarray:
    """Member of the class for free parameter D; ``class_member(cls, 0)`` is the base.

    For the invariant-subspace kind ``D`` is the compact ``d0 x d0`` offset
    (a full ``d x d`` matrix is accepted and masked, matching the paper-level
    parameterization); for the repeated-eigen kind it is the
    ``(m-1) x (m-1)`` / ``(2m-2) x (2m-2)`` free matrix.
    """
    Dc = _compact_free_matrix(cls, D)
    if cls.kind == KIND_INVARIANT_SUBSPACE:
        marked = np.flatnonzero(cls.i0)
        Dfull = np.zeros((cls.d, cls.d))
        Dfull[np.ix_(marked, marked)] = Dc
        return cls.base + cls.Q @ Dfull @ cls.Qinv
    P1 = cls.Q[:, : cls.block_width]
    R1 = cls.Qinv[: cls.block_width, :]
    return cls.base + P1 @ (cls.U @ Dc @ cls.U.T) @ R1


def class_member_from_block(cls: UnidentifiableClass, block_values) -> np.ndarray:
    """Invariant-subspace member with the marked Jordan block replaced wholesale.

    ``block_values`` is the d0 x d0 matrix that substitutes the starved block
    (the parameterization used in the worked 3-D example, where a scalar b
    replaces the eigenvalue of the dead block); the offset form is recovered
    as ``block_values - base_block``.
    """
    if cls.kind != KIND_INVARIANT_SUBSPACE:
        raise DimensionMismatch("block replacement applies to the invariant-subspace kind")
    B = np.atleast_2d(np.asarray(block_values, dtype=float))
    if B.shape != (cls.free_dim, cls.free_dim):
        raise DimensionMismatch(
            "block_values has the wrong shape",
            expected=[cls.free_dim, cls.free_dim],
            got=list(B.shape),
        )
    return class_member(cls, B - cls.base_block)


def _group_eigenvalues(w: np.ndarray, tol: float) -> list[list[int]]:
    """Greedy grouping of eigenvalues within ``tol`` (complex-plane distance)."""
    order = np.lexsort((w.imag, w.real))
    groups: list[list[int]] = []
    for idx in order:
        placed = False
        for g in groups:
            if abs(w[idx] - w[g[0]]) <= tol:
                g.append(int(idx))
                placed = True
                break
        if not placed:
            groups.append([int(idx)])
    return groups


def repeated_eigen_class(
    A, x0, eig_tol: float = DEFAULT_EIG_TOL, group_index: int = 0
) -> UnidentifiableClass:
    """Unidentifiable class of a matrix with a repeated (diagonalizable) eigenvalue.

    Picks the ``group_index``-th repeated eigenvalue group (sorted by real
    then imaginary part); raises
    :class:`~odeid.errors.DefectiveBlock` when the eigenspace is smaller than
    the multiplicity (nilpotent structure, out of scope) and
    :class:`~odeid.errors.NoRepeatedEigenvalue` when all eigenvalues are
    separated.
    """
    A = np.asarray(A, dtype=float)
    x0 = np.asarray(x0, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("A must be square", shape=list(A.shape))
    d = A.shape[0]
    if x0.shape[0] != d:
        raise DimensionMismatch("x0 length does not match A", d=d)
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(x0))):
        raise NonFinite("inputs contain NaN or Inf")

    w, V = np.linalg.eig(A)
    scale = max(1.0, float(np.abs(w).max()))
    tol = eig_tol * scale
    groups = [g for g in _group_eigenvalues(w, tol) if len(g) >= 2]
    # keep one group per conjugate family: drop the negative-imaginary twin
    groups = [g for g in groups if np.mean(w[g]).imag >= -tol]
    if not groups:
        raise NoRepeatedEigenvalue("all eigenvalues are separated", tol=tol)
    groups.sort(key=lambda g: (np.mean(w[g]).real, abs(np.mean(w[g]).imag)))
    if group_index < 0 or group_index >= len(groups):
        raise NoRepeatedEigenvalue(
            "group_index out of range", n_groups=len(groups)
        )
    group = groups[group_index]
    lam = complex(np.mean(w[group]))
    is_complex = abs(lam.imag) > tol
    m = len(group)

    # eigenspace basis from the null space of (A - lam I)
    if is_complex:
        lam = complex(lam.real, abs(lam.imag))
        M = A.astype(complex) - lam * np.eye(d)
    else:
        lam = complex(lam.real, 0.0)
        M = A - lam.real * np.eye(d)
    _, sv, Vh = np.linalg.svd(M)
    null_mask = sv <= max(tol, sv[0] * RANK_RTOL)
    geo = int(np.count_nonzero(null_mask))
    if geo < m:
        raise DefectiveBlock(
            "eigenspace dimension below multiplicity",
            multiplicity=m,
            geometric=geo,
        )
    null_basis = Vh[d - geo :].conj().T[:, :m]  # d x m, orthonormal

    if is_complex:
        cols = []
        for j in range(m):
            wj = null_basis[:, j]
            cols.append(wj.real)
            cols.append(-wj.imag)
        P1 = np.column_stack(cols)  # block is I_m (x) [[a,-b],[b,a]]
        width = 2 * m
    else:
        P1 = null_basis.real
        width = m

    # complement: eigenvectors of the remaining eigenvalues, realified
    rest = [i for i in range(d) if i not in group]
    if is_complex:
        conj_partner = {
            i
            for i in rest
            if any(abs(w[i] - np.conj(w[g])) <= tol for g in group)
        }
        rest = [i for i in rest if i not in conj_partner]
    cols = []
    used = set()
    for i in rest:
        if i in used:
            continue
        if abs(w[i].imag) <= tol:
            cols.append(np.asarray(V[:, i]).real)
            used.add(i)
        else:
            partner = next(
                j for j in rest if j not in used and j != i and abs(w[j] - np.conj(w[i])) <= tol
            )
            vec = V[:, i] if w[i].imag > 0 else V[:, partner]
            cols.append(vec.real)
            cols.append(-vec.imag)
            used.update((i, partner))
    P = np.column_stack([P1] + cols) if cols else P1
    if P.shape != (d, d):
        raise DefectiveBlock("could not assemble a full basis", got=list(P.shape))
    Pinv = np.linalg.inv(P)

    v = Pinv[:width, :] @ x0
    if is_complex:
        rot = np.kron(np.eye(m), np.array([[0.0, -1.0], [1.0, 0.0]]))
        span = np.column_stack([v, rot @ v])
        n_fixed = 2
    else:
        span = v.reshape(-1, 1)
        n_fixed = 1
    Qfull, _ = np.linalg.qr(span, mode="complete")
    U = Qfull[:, n_fixed:]
    dof = (width - n_fixed) ** 2

    return UnidentifiableClass(
        kind=KIND_REPEATED_EIGEN,
        base=A.copy(),
        Q=P,
        Qinv=Pinv,
        dof=dof,
        U=U,
        block_width=width,
        multiplicity=m,
        eigenvalue=lam,
        free_dim=width - n_fixed,
    )


@dataclass(frozen=True)
class AffinePrior:
    """Affine constraints S vec(A - A0) = 0 acting on the system matrix.

    ``vec`` is column-major throughout.
    """

    S: np.ndarray
    A0: np.ndarray

    @property
    def n_constraints(self) -> int:
        return self.S.shape[0]


def entry_prior(d: int, entries) -> AffinePrior:
    """Prior fixing individual entries: ``entries`` is a list of (i, j, value)."""
    rows = np.zeros((len(entries), d * d))
    A0 = np.zeros((d, d))
    for r, (i, j, value) in enumerate(entries):
        rows[r, j * d + i] = 1.0  # column-major vec position of (i, j)
        A0[i, j] = value
    return AffinePrior(S=rows, A0=A0)


PRIOR_PROPER = "Proper"
PRIOR_COMPATIBLE = "CompatibleNonUnique"
PRIOR_INCOMPATIBLE = "Incompatible"


@dataclass(frozen=True)
class PriorCompatibility:
    status: str
    member: np.ndarray | None = None
    residual_dof: int | None = None


def _rank(M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > RANK_RTOL * sv[0]))


def prior_compatibility(
    prior: AffinePrior, cls: UnidentifiableClass
) -> PriorCompatibility:
    """Decide whether affine prior information pins down a unique class member.

    Substituting the class structure into the constraints turns them into the
    linear system ``S~ vec(D) = b`` with
    ``S~ = S ((I0 Q^-1)' (x) (Q I0))`` and ``b = S vec(A0 - A)``: incompatible
    when inconsistent, proper when the consistent system determines all
    ``dof`` free parameters, compatible-non-unique otherwise.
    """
    if cls.kind != KIND_INVARIANT_SUBSPACE:
        raise DimensionMismatch(
            "prior compatibility is defined for the invariant-subspace kind"
        )
    d = cls.d
    S = np.atleast_2d(np.asarray(prior.S, dtype=float))
    if S.size == 0:
        S = S.reshape(0, d * d)
    if S.shape[1] != d * d:
        raise DimensionMismatch(
            "constraint matrix must have d^2 columns", expected=d * d, got=S.shape[1]
        )
    A0 = np.asarray(prior.A0, dtype=float)
    if A0.shape != (d, d):
        raise DimensionMismatch("anchor matrix must be d x d")

    I0 = cls.i0_matrix()
    St = S @ np.kron((I0 @ cls.Qinv).T, cls.Q @ I0)
    b = S @ (A0 - cls.base).ravel(order="F")

    r = _rank(St)
    r_aug = _rank(np.column_stack([St, b])) if S.shape[0] else 0
    if r_aug > r:
        return PriorCompatibility(status=PRIOR_INCOMPATIBLE)
    if r == cls.dof:
        vecD, *_ = np.linalg.lstsq(St, b, rcond=None)
        D = vecD.reshape(d, d, order="F")
        return PriorCompatibility(status=PRIOR_PROPER, member=class_member(cls, D))
    return PriorCompatibility(status=PRIOR_COMPATIBLE, residual_dof=cls.dof - r)


def augment_inhomogeneous(A, b) -> np.ndarray:
    """Embed Dx = Ax + b as the homogeneous (d+1)-system [[A, b], [0, 0]].

    The first d coordinates of the augmented trajectory started at (x0, 1)
    solve the inhomogeneous equation.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("A must be square", shape=list(A.shape))
    if b.shape[0] != A.shape[0]:
        raise DimensionMismatch("b length does not match A", d=A.shape[0])
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise NonFinite("inputs contain NaN or Inf")
    d = A.shape[0]
    out = np.zeros((d + 1, d + 1))
    out[:d, :d] = A
    out[:d, d] = b
    return out
