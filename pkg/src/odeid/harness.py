"""Simulation studies, asymptotic checks, and the small statistics they need.

SIM1 correlates the ICIS with the relative estimation error on a fixed 3-D
system; SIM2 classifies identifiable against unidentifiable 4-D systems with
all four scores and reports ROC/AUC per score and noise condition.  Replicates
are embarrassingly parallel over independent RNG streams keyed by replicate
index, so results are deterministic for a given seed regardless of the worker
count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc
from scipy.stats import kstest, rankdata

from .dynamics import TimeGrid, add_noise, solve
from .errors import DegenerateInput, IdentError
from .identcore import block_coefficients
from .randgen import SeededRng, ginoe, goe, uniform_sphere, sim2_pair
from .realjordan import real_jordan
from .scores import icis_score, pis, scn, stanhope_kappa
from .twostage import spline_operators, two_stage_estimate

# Fixed SIM1 system: one spiral pair (-0.1 +- 3i) and one real mode (-0.5).
SIM1_SYSTEM = np.array(
    [
        [-0.1, 3.0, 0.0],
        [-3.0, -0.1, 0.0],
        [0.0, 0.0, -0.5],
    ]
)

SCORE_NAMES = ("icis", "kappa", "scn", "pis")
# ICIS: larger means more identifiable; the rest: smaller means more identifiable.
SCORE_ORIENTATION = {
    "icis": "higher-is-positive",
    "kappa": "lower-is-positive",
    "scn": "lower-is-positive",
    "pis": "lower-is-positive",
}


# ---------------------------------------------------------------------------
# statistics plumbing
# ---------------------------------------------------------------------------

def spearman(x, y) -> float:
    """Spearman rank correlation: Pearson correlation of average ranks."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise DegenerateInput("need two equal-length lists with at least 2 entries")
    if np.any(np.isnan(x)) or np.any(np.isnan(y)):
        raise DegenerateInput("NaN in correlation input")
    rx, ry = rankdata(x), rankdata(y)
    if np.std(rx) == 0 or np.std(ry) == 0:
        raise DegenerateInput("constant input has no rank correlation")
    return float(np.corrcoef(rx, ry)[0, 1])


@dataclass(frozen=True)
class RocResult:
    auc: float
    curve: list  # (fpr, tpr) points, monotone in both coordinates

    def to_json(self) -> dict:
        return {"auc": self.auc, "curve": [[float(a), float(b)] for a, b in self.curve]}


def roc_auc(scores, labels, orientation: str = "higher-is-positive") -> RocResult:
    """ROC curve and trapezoidal AUC with tied scores grouped into one threshold.

    ``orientation`` states whether larger or smaller scores predict the
    positive class; +inf/-inf scores are legal, NaN is not.
    """
    s = np.asarray(scores, dtype=float)
    y = np.asarray(labels, dtype=bool)
    if s.shape != y.shape or s.ndim != 1 or s.size < 2:
        raise DegenerateInput("need equal-length scores and labels, at least 2")
    if np.any(np.isnan(s)):
        raise DegenerateInput("NaN score")
    if y.all() or not y.any():
        raise DegenerateInput("both label classes must be present")
    if orientation in ("higher-is-positive", "higher"):
        pass
    elif orientation in ("lower-is-positive", "lower"):
        s = -s
    else:
        raise DegenerateInput("unknown orientation", orientation=orientation)

    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    y_sorted = y[order]
    # last index of each tie group (equality is well defined for +-inf)
    boundary = np.flatnonzero(s_sorted[1:] != s_sorted[:-1])
    idx = np.r_[boundary, s.size - 1]
    tp = np.cumsum(y_sorted)[idx]
    fp = np.cumsum(~y_sorted)[idx]
    tpr = np.r_[0.0, tp / tp[-1]]
    fpr = np.r_[0.0, fp / fp[-1]]
    auc = float(np.trapezoid(tpr, fpr))
    return RocResult(auc=auc, curve=list(zip(fpr.tolist(), tpr.tolist())))


def _parallel_map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (threads * 4))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


# ---------------------------------------------------------------------------
# SIM1: ICIS against estimation error
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimConfig:
    """Shared trajectory/estimator settings for SIM1 and SIM2."""

    sigma: float = 0.05
    t0: float = 0.0
    t1: float = 6.0
    n: int = 61
    lam: float = 1e-3
    order: int = 4

    def grid(self) -> TimeGrid:
        return TimeGrid.uniform(self.t0, self.t1, self.n)


@dataclass(frozen=True)
class Sim1Record:
    replicate: int
    icis: float
    ree_noisy: float
    ree_clean: float
    failed: bool = False


@dataclass(frozen=True)
class Sim1Result:
    records: list
    spearman_noisy: float
    spearman_clean: float
    n_failed: int
    config: SimConfig


def _sim1_replicate(args) -> Sim1Record:
    seed, rep, cfg = args
    gen = SeededRng(seed, rep).generator()
    grid = cfg.grid()
    ops = spline_operators(grid, cfg.lam, cfg.order)
    jf = real_jordan(SIM1_SYSTEM)
    x0 = uniform_sphere(3, gen)
    icis = block_coefficients(jf, x0).icis
    traj = solve(SIM1_SYSTEM, x0, grid)
    obs = add_noise(traj, cfg.sigma, gen)
    try:
        ree_noisy = two_stage_estimate(obs, ops, truth=SIM1_SYSTEM).ree
        ree_clean = two_stage_estimate(traj, ops, truth=SIM1_SYSTEM).ree
    except IdentError:
        return Sim1Record(rep, icis, np.nan, np.nan, failed=True)
    return Sim1Record(rep, icis, ree_noisy, ree_clean)


def run_sim1(
    reps: int, seed: int, config: SimConfig = SimConfig(), threads: int = 1
) -> Sim1Result:
    """SIM1: fixed system, random unit-sphere initial conditions.

    Returns per-replicate (ICIS, noisy REE, clean REE) plus the Spearman
    correlations of ICIS against each REE.  Failed estimations are flagged and
    excluded from the correlations.
    """
    if reps < 2:
        raise DegenerateInput("need at least 2 replicates")
    records = _parallel_map(
        _sim1_replicate, [(seed, r, config) for r in range(reps)], threads
    )
    ok = [r for r in records if not r.failed]
    if len(ok) < 2:
        raise DegenerateInput("not enough successful replicates", failed=len(records) - len(ok))
    icis = [r.icis for r in ok]
    rho_noisy = spearman(icis, [r.ree_noisy for r in ok])
    rho_clean = spearman(icis, [r.ree_clean for r in ok])
    return Sim1Result(
        records=records,
        spearman_noisy=rho_noisy,
        spearman_clean=rho_clean,
        n_failed=len(records) - len(ok),
        config=config,
    )


# ---------------------------------------------------------------------------
# SIM2: score-based classification of unidentifiable systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sim2Record:
    replicate: int
    case: str  # A: identifiable; B: starved initial condition; C: repeated eigenvalues
    icis: float
    kappa_noisy: float
    scn_noisy: float
    pis_noisy: float
    kappa_clean: float
    scn_clean: float
    pis_clean: float
    failed: bool = False


@dataclass(frozen=True)
class Sim2Result:
    records: list
    auc_table: dict  # auc_table[condition][score] -> RocResult
    n_failed: int
    config: SimConfig


def _case_scores(system, x0, grid, ops, sigma, gen):
    traj = solve(system, x0, grid)
    obs = add_noise(traj, sigma, gen)
    icis = icis_score(system, x0)
    out = {"icis": icis}
    for tag, data in (("noisy", obs), ("clean", traj)):
        out[f"kappa_{tag}"] = stanhope_kappa(data)
        out[f"scn_{tag}"] = scn(data, ops)
        try:
            out[f"pis_{tag}"] = pis(data, ops)
        except IdentError:
            out[f"pis_{tag}"] = float("inf")
    return out


def _sim2_replicate(args) -> list:
    seed, rep, cfg = args
    gen = SeededRng(seed, rep).generator()
    grid = cfg.grid()
    ops = spline_operators(grid, cfg.lam, cfg.order)
    pair = sim2_pair(gen)
    cases = (("A", pair.A, pair.x0a), ("B", pair.A, pair.x0b), ("C", pair.B, pair.x0a))
    records = []
    for name, system, x0 in cases:
        try:
            sc = _case_scores(system, x0, grid, ops, cfg.sigma, gen)
            records.append(Sim2Record(replicate=rep, case=name, **sc))
        except (IdentError, np.linalg.LinAlgError):
            records.append(
                Sim2Record(
                    rep, name, *([np.nan] * 7), failed=True
                )
            )
    return records


def run_sim2(
    reps: int, seed: int, config: SimConfig = SimConfig(), threads: int = 1
) -> Sim2Result:
    """SIM2: per replicate, one identifiable case (A) against two unidentifiable ones.

    Case A is (A, x0a) with ICIS above the construction floor, case B is
    (A, x0b) with the fourth eigen-direction projected out of x0, case C is
    (B, x0a) where B has an exactly repeated eigenvalue.  Every case is scored
    with ICIS / kappa / SCN / PIS on both noisy and noise-free data; ROC
    treats case A as the positive class.  Singular Grams are scored +inf
    (worst identifiability) rather than dropped.
    """
    if reps < 10:
        raise DegenerateInput("need at least 10 replicates")
    nested = _parallel_map(
        _sim2_replicate, [(seed, r, config) for r in range(reps)], threads
    )
    records = [rec for group in nested for rec in group]
    ok = [r for r in records if not r.failed]
    labels = [r.case == "A" for r in ok]
    auc_table: dict = {"noisy": {}, "clean": {}}
    for condition in ("noisy", "clean"):
        for score in SCORE_NAMES:
            attr = "icis" if score == "icis" else f"{score}_{condition}"
            vals = [getattr(r, attr) for r in ok]
            auc_table[condition][score] = roc_auc(
                vals, labels, SCORE_ORIENTATION[score]
            )
    return Sim2Result(
        records=records,
        auc_table=auc_table,
        n_failed=len(records) - len(ok),
        config=config,
    )


# ---------------------------------------------------------------------------
# dimension scaling of the ICIS
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimScaleRecord:
    d: int
    replicate: int
    icis: float
    failed: bool = False


_ENSEMBLES = {"ginoe": ginoe, "goe": goe}


def _dimscale_replicate(args) -> DimScaleRecord:
    seed, stream, d, rep, ensemble = args
    gen = SeededRng(seed, stream).generator()
    A = _ENSEMBLES[ensemble](d, gen)
    x0 = gen.standard_normal(d)
    try:
        icis = block_coefficients(real_jordan(A), x0).icis
    except IdentError:
        return DimScaleRecord(d, rep, np.nan, failed=True)
    return DimScaleRecord(d, rep, icis)


def run_dimension_scaling(
    dims, reps: int, ensemble: str, seed: int, threads: int = 1
) -> list:
    """ICIS samples of random (A, x0) pairs across dimensions.

    A comes from the chosen ensemble, x0 from N(0, I_d).  Replicates whose
    eigen-decomposition trips the repeated-eigenvalue guard are flagged.
    """
    dims = list(dims)
    if not dims:
        raise DegenerateInput("dims must be nonempty")
    if ensemble not in _ENSEMBLES:
        raise DegenerateInput("unknown ensemble", ensemble=ensemble)
    tasks = []
    for di, d in enumerate(dims):
        for r in range(reps):
            tasks.append((seed, di * reps + r, int(d), r, ensemble))
    return _parallel_map(_dimscale_replicate, tasks, threads)


# ---------------------------------------------------------------------------
# closed-form / limit-law checks
# ---------------------------------------------------------------------------

def expected_min_halfnormal(d: int) -> float:
    """E[min of d i.i.d. standard half-normals] by quadrature of the survival function.

    P(min > x) = [2(1 - Phi(x))]^d = erfc(x / sqrt(2))^d, integrated on
    [0, 8/sqrt(d) + 8] (the integrand is far below any tolerance beyond that).
    """
    if d < 1:
        raise DegenerateInput("d must be positive")
    upper = 8.0 / np.sqrt(d) + 8.0
    val, _ = quad(lambda x: erfc(x / np.sqrt(2.0)) ** d, 0.0, upper, epsabs=1e-9, limit=200)
    return float(val)


def weibull_half_cdf(x) -> np.ndarray:
    """CDF of the Weibull law with scale 1 and shape 1/2: 1 - exp(-sqrt(x))."""
    x = np.asarray(x, dtype=float)
    return np.where(x > 0, 1.0 - np.exp(-np.sqrt(np.maximum(x, 0.0))), 0.0)


@dataclass(frozen=True)
class WeibullTestResult:
    ks_distance: float
    passed: bool


def weibull_limit_test(d: int, draws: int, seed: int) -> WeibullTestResult:
    """KS check of (2 d^3 / pi) * min_i U_i^2 against Weibull(1, 1/2) for U uniform on the sphere."""
    gen = SeededRng(seed).generator()
    Z = gen.standard_normal((draws, d))
    U = Z / np.linalg.norm(Z, axis=1, keepdims=True)
    scaled = (2.0 * d**3 / np.pi) * (U**2).min(axis=1)
    ks = kstest(scaled, weibull_half_cdf).statistic
    return WeibullTestResult(ks_distance=float(ks), passed=bool(ks < 0.05))


@dataclass(frozen=True)
class MatrixExpectationResult:
    max_rel_err: float
    rel_err_eae: float
    rel_err_ebe: float


def matrix_expectation_test(d: int, n: int, draws: int, seed: int) -> MatrixExpectationResult:
    """Monte Carlo check of E(eps A eps) = sigma^2 A' and E(eps B eps') = sigma^2 tr(B) I."""
    gen = SeededRng(seed).generator()
    A = gen.standard_normal((n, d))
    B = gen.standard_normal((n, n))
    E = gen.standard_normal((draws, d, n))
    M1 = np.einsum("kin,nm,kmj->ij", E, A, E) / draws
    M2 = np.einsum("kin,nm,kjm->ij", E, B, E) / draws
    exact1 = A.T
    exact2 = np.trace(B) * np.eye(d)
    rel1 = float(np.linalg.norm(M1 - exact1) / np.linalg.norm(exact1))
    rel2 = float(np.linalg.norm(M2 - exact2) / np.linalg.norm(exact2))
    return MatrixExpectationResult(
        max_rel_err=max(rel1, rel2), rel_err_eae=rel1, rel_err_ebe=rel2
    )
