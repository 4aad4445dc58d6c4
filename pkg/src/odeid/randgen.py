"""Seedable generators for the random objects the experiments need.

PRNG contract: every stream is a PCG64 generator keyed by
``SeedSequence(entropy=seed, spawn_key=(stream_id,))``; normal variates come
from numpy's ziggurat implementation.  Identical (seed, stream_id) pairs give
bit-identical sequences on every platform; distinct stream ids give
statistically independent streams, so replicates can run in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResampleLimit

ICIS_FLOOR = 0.2
RESAMPLE_CAP = 10_000


@dataclass(frozen=True)
class SeededRng:
    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))

    def stream(self, stream_id: int) -> "SeededRng":
        return SeededRng(seed=self.seed, stream_id=stream_id)


def as_generator(rng) -> np.random.Generator:
    """Accept a SeededRng, a raw integer seed, or an existing Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, SeededRng):
        return rng.generator()
    return SeededRng(seed=int(rng)).generator()


def ginoe(d: int, rng) -> np.ndarray:
    """Real Ginibre ensemble: d x d i.i.d. standard normal entries."""
    gen = as_generator(rng)
    return gen.standard_normal((d, d))


def goe(d: int, rng) -> np.ndarray:
    """Gaussian orthogonal ensemble (G + G') / sqrt(2): diagonal variance 2, off-diagonal 1."""
    G = ginoe(d, rng)
    return (G + G.T) / np.sqrt(2.0)


def haar_orthogonal(d: int, rng) -> np.ndarray:
    """Haar-uniform orthogonal matrix via QR of a Ginibre draw with sign correction."""
    G = ginoe(d, rng)
    Q, R = np.linalg.qr(G)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


def uniform_sphere(d: int, rng) -> np.ndarray:
    """Uniform direction on the unit sphere: Z / |Z| for standard normal Z."""
    gen = as_generator(rng)
    while True:
        z = gen.standard_normal(d)
        nrm = np.linalg.norm(z)
        if nrm > 0:
            return z / nrm


@dataclass(frozen=True)
class Sim2Pair:
    """One replicate of the paired-system construction.

    A has the spiral pair -0.1 +- b i plus two separated real eigenvalues;
    B replaces the fourth eigenvalue with the third, creating an exactly
    repeated real eigenvalue.  x0a is kept only when its ICIS clears the
    floor; x0b is the unit vector with the fourth eigen-direction projected
    out, so its ICIS is zero.
    """

    A: np.ndarray
    B: np.ndarray
    x0a: np.ndarray
    x0b: np.ndarray
    Q: np.ndarray
    b: float
    lam3: float
    lam4: float


def sim2_pair(rng) -> Sim2Pair:
    from .identcore import block_coefficients
    from .realjordan import real_jordan

    gen = as_generator(rng)
    b = gen.uniform(2.0, 4.0)
    lam3 = gen.uniform(-0.8, -0.4)
    lam4 = gen.uniform(-2.0, -1.2)
    Q = haar_orthogonal(4, gen)

    core = np.zeros((4, 4))
    core[0, 0] = core[1, 1] = -0.1
    core[0, 1] = b
    core[1, 0] = -b
    core[2, 2] = lam3

    DA = core.copy()
    DA[3, 3] = lam4
    DB = core.copy()
    DB[3, 3] = lam3

    A = Q @ DA @ Q.T
    B = Q @ DB @ Q.T

    jf = real_jordan(A)
    for _ in range(RESAMPLE_CAP):
        x0a = uniform_sphere(4, gen)
        if block_coefficients(jf, x0a).icis > ICIS_FLOOR:
            break
    else:
        raise ResampleLimit(
            "could not draw an initial condition above the ICIS floor",
            cap=RESAMPLE_CAP,
        )

    q4 = Q[:, 3]
    proj = x0a - q4 * (q4 @ x0a)
    x0b = proj / np.linalg.norm(proj)

    return Sim2Pair(A=A, B=B, x0a=x0a, x0b=x0b, Q=Q, b=float(b), lam3=float(lam3), lam4=float(lam4))
