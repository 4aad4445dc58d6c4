import numpy as np
import pytest
from scipy.stats import ks_2samp

import odeid.randgen as randgen
from odeid import (
    SeededRng,
    ginoe,
    goe,
    haar_orthogonal,
    min_eigen_gap,
    sim2_pair,
    uniform_sphere,
)
from odeid.errors import ResampleLimit
from odeid.scores import icis_score


def test_stream_reproducibility():
    assert np.array_equal(ginoe(4, SeededRng(1, 3)), ginoe(4, SeededRng(1, 3)))
    assert not np.array_equal(ginoe(4, SeededRng(1, 3)), ginoe(4, SeededRng(1, 4)))
    assert not np.array_equal(ginoe(4, SeededRng(1, 3)), ginoe(4, SeededRng(2, 3)))


def test_ginoe_moments():
    gen = SeededRng(100).generator()
    entries = np.concatenate([ginoe(100, gen).ravel() for _ in range(10)])
    assert abs(entries.mean()) <= 0.02
    assert 0.97 <= entries.var() <= 1.03


def test_ginoe_distinct_eigenvalues():
    gen = SeededRng(101).generator()
    hits = sum(min_eigen_gap(ginoe(5, gen)) > 1e-6 for _ in range(1000))
    assert hits >= 999


def test_goe_symmetry_and_variances():
    gen = SeededRng(102).generator()
    diags, offs = [], []
    for _ in range(100):
        H = goe(30, gen)
        assert np.array_equal(H, H.T)
        diags.append(np.diag(H))
        offs.append(H[np.triu_indices(30, k=1)])
    diag_var = np.concatenate(diags).var()
    off_var = np.concatenate(offs).var()
    assert diag_var == pytest.approx(2.0, rel=0.05)
    assert off_var == pytest.approx(1.0, rel=0.05)


def test_goe_orthogonal_invariance():
    # the largest eigenvalue has the same law after a fixed rotation
    gen = SeededRng(103).generator()
    T = haar_orthogonal(4, gen)
    raw, rotated = [], []
    for _ in range(2000):
        H = goe(4, gen)
        raw.append(np.linalg.eigvalsh(H).max())
        rotated.append(np.linalg.eigvalsh(T @ H @ T.T).max())
    assert ks_2samp(raw, rotated).pvalue > 0.01


def test_haar_orthogonality_and_determinant():
    gen = SeededRng(104).generator()
    dets = []
    first_coord = []
    for _ in range(10_000):
        Q = haar_orthogonal(3, gen)
        dets.append(np.linalg.det(Q))
        first_coord.append(Q[0, 0])
    Q = haar_orthogonal(6, SeededRng(7).generator())
    assert np.linalg.norm(Q.T @ Q - np.eye(6)) <= 1e-12 * 6
    dets = np.array(dets)
    assert np.all(np.abs(np.abs(dets) - 1.0) <= 1e-10)
    assert 0.45 <= np.mean(dets > 0) <= 0.55
    assert abs(np.mean(first_coord)) <= 0.02


def test_uniform_sphere_contract():
    gen = SeededRng(105).generator()
    coords = []
    for _ in range(10_000):
        x = uniform_sphere(5, gen)
        coords.append(x[0])
    x = uniform_sphere(8, SeededRng(9).generator())
    assert abs(np.linalg.norm(x) - 1.0) <= 1e-12
    assert abs(np.mean(coords)) <= 0.02


def test_sim2_pair_construction():
    gen = SeededRng(106).generator()
    for _ in range(10):
        pair = sim2_pair(gen)
        # B has an exactly repeated eigenvalue by construction
        assert min_eigen_gap(pair.B) <= 1e-12
        assert icis_score(pair.A, pair.x0a) > 0.2
        assert icis_score(pair.A, pair.x0b) <= 1e-10
        assert abs(pair.x0b @ pair.Q[:, 3]) <= 1e-12
        assert abs(np.linalg.norm(pair.x0b) - 1.0) <= 1e-12
        assert 2.0 <= pair.b <= 4.0
        assert -0.8 <= pair.lam3 <= -0.4
        assert -2.0 <= pair.lam4 <= -1.2
        core = np.zeros((4, 4))
        core[0, 0] = core[1, 1] = -0.1
        core[0, 1], core[1, 0] = pair.b, -pair.b
        core[2, 2], core[3, 3] = pair.lam3, pair.lam4
        assert np.linalg.norm(pair.Q @ core @ pair.Q.T - pair.A) <= 1e-10 * np.linalg.norm(pair.A)


def test_sim2_pair_deterministic():
    a = sim2_pair(SeededRng(55, 2))
    b = sim2_pair(SeededRng(55, 2))
    assert np.array_equal(a.A, b.A) and np.array_equal(a.x0a, b.x0a)


def test_sim2_resample_cap(monkeypatch):
    monkeypatch.setattr(randgen, "ICIS_FLOOR", 2.0)  # unattainable on the unit sphere
    monkeypatch.setattr(randgen, "RESAMPLE_CAP", 50)
    with pytest.raises(ResampleLimit):
        sim2_pair(SeededRng(1).generator())
