import numpy as np
import pytest

from odeid import (
    augment_inhomogeneous,
    block_coefficients,
    class_member,
    class_member_from_block,
    entry_prior,
    is_identifiable,
    prior_compatibility,
    real_jordan,
    repeated_eigen_class,
    solve,
    unidentifiable_class,
)
from odeid.dynamics import TimeGrid
from odeid.errors import (
    DefectiveBlock,
    DimensionMismatch,
    FullyIdentifiable,
    NoRepeatedEigenvalue,
    ZeroInitialCondition,
)
from odeid.identcore import (
    PRIOR_COMPATIBLE,
    PRIOR_INCOMPATIBLE,
    PRIOR_PROPER,
    VERDICT_IDENTIFIABLE,
    VERDICT_INITIAL_CONDITION,
    VERDICT_REPEATED_EIGEN,
)
from odeid.randgen import SeededRng, haar_orthogonal

from conftest import EXAMPLE_3D_MEMBER


def test_block_coefficients_worked_example(eq3d_jf):
    x0a = eq3d_jf.Q @ np.array([2.0, -1.0, 0.0])
    bc = block_coefficients(eq3d_jf, x0a)
    assert bc.w0[0] == pytest.approx(2.0, abs=1e-10)
    assert np.allclose(bc.w0[1], [-1.0, 0.0], atol=1e-10)
    assert np.allclose(bc.magnitudes, [2.0, 1.0], atol=1e-10)
    assert bc.icis == pytest.approx(1.0, abs=1e-10)

    x0b = eq3d_jf.Q @ np.array([0.0, -2.0, 3.0])
    bc = block_coefficients(eq3d_jf, x0b)
    assert bc.w0[0] == pytest.approx(0.0, abs=1e-12)
    assert bc.icis <= 1e-12


def test_block_coefficients_minimal_signal(eq2d):
    # eigenbasis is the pi/6 rotation, so the coefficients are plain projections
    jf = real_jordan(eq2d)
    mags = np.sort(block_coefficients(jf, np.array([1.0, 1.0])).magnitudes)
    assert mags[0] == pytest.approx((np.sqrt(3) - 1) / 2, abs=1e-9)  # 0.366
    assert mags[1] == pytest.approx((np.sqrt(3) + 1) / 2, abs=1e-9)  # 1.366

    bc = block_coefficients(jf, np.array([1.72, 1.0]))
    assert bc.icis == pytest.approx((np.sqrt(3) - 1.72) / 2, abs=1e-9)  # 0.006


def test_block_coefficients_rejects_bad_input(eq3d_jf):
    with pytest.raises(ZeroInitialCondition):
        block_coefficients(eq3d_jf, np.zeros(3))
    with pytest.raises(DimensionMismatch):
        block_coefficients(eq3d_jf, np.ones(4))


def test_icis_scale_equivariance(eq3d_jf):
    gen = SeededRng(21).generator()
    x0 = gen.standard_normal(3)
    base = block_coefficients(eq3d_jf, x0).icis
    for c in (0.5, -2.0, 11.0):
        assert block_coefficients(eq3d_jf, c * x0).icis == pytest.approx(abs(c) * base, rel=1e-12)


def test_is_identifiable_verdicts(eq3d, eq3d_jf):
    x0a = eq3d_jf.Q @ np.array([2.0, -1.0, 0.0])
    assert is_identifiable(eq3d, x0a).status == VERDICT_IDENTIFIABLE

    x0b = eq3d_jf.Q @ np.array([0.0, -2.0, 3.0])
    verdict = is_identifiable(eq3d, x0b)
    assert verdict.status == VERDICT_INITIAL_CONDITION
    assert verdict.icis <= 1e-10

    verdict = is_identifiable(np.eye(2), np.array([1.0, 0.0]))
    assert verdict.status == VERDICT_REPEATED_EIGEN
    assert verdict.gap == pytest.approx(0.0, abs=1e-12)


def test_unidentifiable_class_structure(eq3d, eq3d_jf):
    x0b = eq3d_jf.Q @ np.array([0.0, -2.0, 3.0])
    cls = unidentifiable_class(eq3d_jf, x0b)
    assert np.array_equal(cls.i0, [1, 0, 0])
    assert cls.dof == 1
    # replaced-block parameterization: b = 3 gives the alternative topology,
    # b = -1 recovers the original system
    assert np.allclose(class_member_from_block(cls, 3.0), EXAMPLE_3D_MEMBER, atol=1e-8)
    assert np.allclose(class_member_from_block(cls, -1.0), eq3d, atol=1e-8)
    # offset parameterization: D = 0 is exactly the base
    assert np.array_equal(class_member(cls, np.zeros((1, 1))), cls.base)
    # full d x d free matrix is masked down to the marked entries
    gen = SeededRng(3).generator()
    D = gen.standard_normal((3, 3))
    compact = D[np.ix_([0], [0])]
    assert np.allclose(class_member(cls, D), class_member(cls, compact), atol=1e-14)


def test_unidentifiable_class_diagonal():
    jf = real_jordan(np.diag([1.0, 2.0]))
    cls = unidentifiable_class(jf, np.array([1.0, 0.0]))
    assert np.array_equal(cls.i0, [0, 1])
    member = class_member(cls, np.array([[0.7]]))
    delta = member - np.diag([1.0, 2.0])
    assert np.allclose(delta, np.diag([0.0, 0.7]), atol=1e-12)


def test_unidentifiable_class_errors(eq3d_jf):
    with pytest.raises(FullyIdentifiable):
        unidentifiable_class(eq3d_jf, eq3d_jf.Q @ np.array([2.0, -1.0, 0.0]))
    with pytest.raises(ZeroInitialCondition):
        unidentifiable_class(eq3d_jf, np.zeros(3))


def test_class_members_share_the_trajectory(eq3d, eq3d_jf):
    x0b = eq3d_jf.Q @ np.array([0.0, -2.0, 3.0])
    cls = unidentifiable_class(eq3d_jf, x0b)
    grid = TimeGrid.uniform(0.0, 1.0, 51)
    base = solve(eq3d, x0b, grid).X
    gen = SeededRng(8).generator()
    for _ in range(5):
        B = class_member(cls, gen.standard_normal((1, 1)))
        assert np.abs(solve(B, x0b, grid).X - base).max() <= 1e-7 * np.linalg.norm(x0b)
    # the trajectories separate at the identifiable initial condition
    x0a = eq3d_jf.Q @ np.array([2.0, -1.0, 0.0])
    tilde = solve(EXAMPLE_3D_MEMBER, x0a, grid).X
    assert np.abs(tilde - solve(eq3d, x0a, grid).X).max() > 1e-4 * np.linalg.norm(x0a)


def test_repeated_eigen_doubled_identity():
    cls = repeated_eigen_class(np.eye(2), np.array([1.0, 0.0]))
    assert cls.dof == 1 and cls.free_dim == 1
    assert np.allclose(np.abs(cls.U.ravel()), [0.0, 1.0], atol=1e-12)
    member = class_member(cls, np.array([[0.3]]))
    assert np.allclose(member, np.diag([1.0, 1.3]), atol=1e-12)

    theta = np.pi / 4
    cls = repeated_eigen_class(np.eye(2), np.array([np.cos(theta), np.sin(theta)]))
    member = class_member(cls, np.array([[1.0]]))
    assert np.allclose(member, [[1.5, -0.5], [-0.5, 1.5]], atol=1e-12)


def test_repeated_eigen_trajectories_match():
    grid = TimeGrid.uniform(0.0, 1.0, 31)
    gen = SeededRng(9).generator()
    for theta in (0.3, 2.0, 4.5):
        r = float(gen.uniform(0.5, 2.0))
        x0 = r * np.array([np.cos(theta), np.sin(theta)])
        cls = repeated_eigen_class(np.eye(2), x0)
        base = solve(np.eye(2), x0, grid).X
        expected = r * np.exp(grid.points) * np.array([[np.cos(theta)], [np.sin(theta)]])
        assert np.abs(base - expected).max() <= 1e-10
        for _ in range(3):
            B = class_member(cls, gen.standard_normal((1, 1)))
            assert np.abs(solve(B, x0, grid).X - base).max() <= 1e-8

    # 3 I_2 (+) diag(5), hidden by a random orthogonal basis change
    P = haar_orthogonal(3, gen)
    A = P @ np.diag([3.0, 3.0, 5.0]) @ P.T
    x0 = gen.standard_normal(3)
    cls = repeated_eigen_class(A, x0)
    assert cls.multiplicity == 2 and cls.dof == 1
    base = solve(A, x0, grid).X
    for _ in range(5):
        B = class_member(cls, gen.standard_normal((1, 1)))
        assert np.abs(solve(B, x0, grid).X - base).max() <= 1e-8 * max(1.0, np.abs(base).max())


def test_repeated_complex_pair_class():
    # a +- b i with multiplicity 2: block I_2 (x) [[a,-b],[b,a]]
    a, b = -0.2, 1.5
    core = np.kron(np.eye(2), [[a, -b], [b, a]])
    gen = SeededRng(10).generator()
    P = haar_orthogonal(4, gen)
    A = P @ core @ P.T
    x0 = gen.standard_normal(4)
    cls = repeated_eigen_class(A, x0)
    assert cls.block_width == 4
    assert cls.dof == 4 and cls.free_dim == 2
    assert np.linalg.norm(cls.U.T @ cls.U - np.eye(2)) <= 1e-10
    v = cls.Qinv[:4, :] @ x0
    vbar = np.kron(np.eye(2), [[0.0, -1.0], [1.0, 0.0]]) @ v
    assert np.abs(cls.U.T @ v).max() <= 1e-10
    assert np.abs(cls.U.T @ vbar).max() <= 1e-10
    grid = TimeGrid.uniform(0.0, 1.0, 31)
    base = solve(A, x0, grid).X
    for _ in range(5):
        B = class_member(cls, gen.standard_normal((2, 2)))
        assert np.abs(solve(B, x0, grid).X - base).max() <= 1e-7 * max(1.0, np.abs(base).max())


def test_repeated_eigen_errors(eq3d):
    with pytest.raises(NoRepeatedEigenvalue):
        repeated_eigen_class(eq3d, np.ones(3))
    with pytest.raises(DefectiveBlock):
        repeated_eigen_class(np.array([[1.0, 1.0], [0.0, 1.0]]), np.ones(2))


def test_prior_compatibility_worked_example(eq3d, eq3d_jf):
    x0b = eq3d_jf.Q @ np.array([0.0, -2.0, 3.0])
    cls = unidentifiable_class(eq3d_jf, x0b)

    proper = prior_compatibility(entry_prior(3, [(0, 2, 0.0)]), cls)
    assert proper.status == PRIOR_PROPER
    assert np.allclose(proper.member, EXAMPLE_3D_MEMBER, atol=1e-8)

    clash = prior_compatibility(entry_prior(3, [(0, 0, 0.0), (0, 2, 0.0)]), cls)
    assert clash.status == PRIOR_INCOMPATIBLE

    vacuous = prior_compatibility(entry_prior(3, []), cls)
    assert vacuous.status == PRIOR_COMPATIBLE
    assert vacuous.residual_dof == cls.dof


def test_prior_compatibility_partial_constraints():
    # two starved diagonal modes leave a 2x2 free block (dof 4); one consistent
    # constraint removes a single degree of freedom
    jf = real_jordan(np.diag([1.0, 2.0, 3.0]))
    cls = unidentifiable_class(jf, np.array([1.0, 0.0, 0.0]))
    assert cls.dof == 4
    verdict = prior_compatibility(entry_prior(3, [(1, 1, 5.0)]), cls)
    assert verdict.status == PRIOR_COMPATIBLE
    assert verdict.residual_dof == 3


def test_augment_inhomogeneous_scalar():
    aug = augment_inhomogeneous(np.array([[-1.0]]), np.array([2.0]))
    assert np.array_equal(aug, [[-1.0, 2.0], [0.0, 0.0]])
    grid = TimeGrid.uniform(0.0, 2.0, 41)
    x0 = 5.0
    traj = solve(aug, np.array([x0, 1.0]), grid)
    closed_form = 2.0 + (x0 - 2.0) * np.exp(-grid.points)
    assert np.abs(traj.X[0] - closed_form).max() <= 1e-10
    assert np.abs(traj.X[1] - 1.0).max() <= 1e-12


def test_augment_inhomogeneous_zero_forcing(eq3d):
    aug = augment_inhomogeneous(eq3d, np.zeros(3))
    grid = TimeGrid.uniform(0.0, 1.0, 21)
    x0 = np.array([0.4, -0.2, 0.9])
    hom = solve(eq3d, x0, grid).X
    lifted = solve(aug, np.concatenate([x0, [1.0]]), grid).X
    assert np.abs(lifted[:3] - hom).max() <= 1e-10

    aug2 = augment_inhomogeneous(np.diag([-1.0, -2.0]), np.array([1.0, 1.0]))
    assert aug2.shape == (3, 3)
    assert np.array_equal(aug2[2], np.zeros(3))
