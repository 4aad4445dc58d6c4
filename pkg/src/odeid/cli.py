"""Command-line entry point ``ident``.

Exit codes: 0 success, 1 usage error (message on stderr), 2 numerical failure
(JSON error object on stdout with the failure kind).  Every randomized
command requires an explicit --seed.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click
import numpy as np

from . import fileio, harness, identcore, randgen, scores, twostage
from .dynamics import Observations, TimeGrid, add_noise, solve
from .errors import IdentError
from .harness import SimConfig
from .identcore import (
    VERDICT_INITIAL_CONDITION,
    VERDICT_REPEATED_EIGEN,
    is_identifiable,
    repeated_eigen_class,
    unidentifiable_class,
)
from .realjordan import real_jordan
from .twostage import simple_operators, spline_operators


def _threads_option(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("IDENT_THREADS")
    return max(1, int(env)) if env else 1


def _operators(grid: TimeGrid, method: str, lam: float, order: int):
    if method == "simple":
        return simple_operators(grid)
    if order < 3:
        raise click.UsageError("--order must be at least 3 for the spline method")
    return spline_operators(grid, lam, order)


def _positive(ctx, param, value):
    if value is not None and value <= 0:
        raise click.BadParameter("must be positive")
    return value


def _nonnegative(ctx, param, value):
    if value is not None and value < 0:
        raise click.BadParameter("must be nonnegative")
    return value


@click.group()
def cli():
    """Identifiability analysis of linear ODE systems from a single trajectory."""


@cli.command()
@click.option("--system", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x0", "x0_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--icis-tol", default=identcore.DEFAULT_ICIS_TOL, show_default=True, callback=_nonnegative)
@click.option("--eig-tol", default=1e-8, show_default=True, callback=_nonnegative)
def analyze(system, x0_path, icis_tol, eig_tol):
    """Decide (A, x0)-identifiability and report scores and class structure."""
    A = fileio.read_matrix(system)
    x0 = fileio.read_vector(x0_path)
    verdict = is_identifiable(A, x0, icis_tol=icis_tol, eig_tol=eig_tol)

    report: dict = {"verdict": verdict.status, "icis": verdict.icis, "dof": 0, "class": None}
    if verdict.status == VERDICT_REPEATED_EIGEN:
        report["gap"] = verdict.gap
        report["icis"] = scores.icis_score(A, x0)
        cls = repeated_eigen_class(A, x0, eig_tol=eig_tol)
        report["dof"] = cls.dof
        report["class"] = {
            "repeated_block": {
                "eigenvalue": [cls.eigenvalue.real, cls.eigenvalue.imag],
                "multiplicity": cls.multiplicity,
                "width": cls.block_width,
            }
        }
        jf = real_jordan(A, eig_tol=0.0)
    else:
        jf = real_jordan(A, eig_tol=eig_tol)
        if verdict.status == VERDICT_INITIAL_CONDITION:
            cls = unidentifiable_class(jf, x0, zero_tol=max(icis_tol, 1e-15))
            report["dof"] = cls.dof
            report["class"] = {"I0_diagonal": cls.i0.tolist()}
    bc = identcore.block_coefficients(jf, x0)
    report["w0_magnitudes"] = bc.magnitudes.tolist()
    click.echo(fileio.dump_report(report))


@cli.command("class-sample")
@click.option("--system", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x0", "x0_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "count", required=True, type=int, callback=_positive)
@click.option("--seed", required=True, type=int)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--zero-tol", default=identcore.DEFAULT_ZERO_TOL, show_default=True)
@click.option("--eig-tol", default=1e-8, show_default=True)
def class_sample(system, x0_path, count, seed, out_dir, zero_tol, eig_tol):
    """Sample member matrices of the unidentifiable class as CSV files."""
    A = fileio.read_matrix(system)
    x0 = fileio.read_vector(x0_path)
    verdict = is_identifiable(A, x0, icis_tol=zero_tol, eig_tol=eig_tol)
    if verdict.status == VERDICT_REPEATED_EIGEN:
        cls = repeated_eigen_class(A, x0, eig_tol=eig_tol)
    elif verdict.status == VERDICT_INITIAL_CONDITION:
        cls = unidentifiable_class(real_jordan(A, eig_tol=eig_tol), x0, zero_tol=zero_tol)
    else:
        raise identcore.FullyIdentifiable(
            "the system is identifiable at x0; there is no class to sample",
            icis=verdict.icis,
        )
    gen = randgen.SeededRng(seed).generator()
    outdir = Path(out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for k in range(count):
        D = gen.standard_normal((cls.free_dim, cls.free_dim))
        member = identcore.class_member(cls, D)
        path = outdir / f"member_{k:03d}.csv"
        fileio.write_matrix(path, member)
        written.append(str(path))
    click.echo(fileio.dump_report({"kind": cls.kind, "dof": cls.dof, "written": written}))


@cli.command()
@click.option("--system", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x0", "x0_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--t0", default=0.0, show_default=True)
@click.option("--t1", required=True, type=float)
@click.option("--n", "npoints", required=True, type=int)
@click.option("--sigma", default=0.0, show_default=True, callback=_nonnegative)
@click.option("--seed", type=int, default=None, help="Required when sigma > 0.")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def simulate(system, x0_path, t0, t1, npoints, sigma, seed, out):
    """Sample a trajectory (optionally noisy) to long-format CSV."""
    if npoints < 2:
        raise click.UsageError("--n must be at least 2")
    if t1 <= t0:
        raise click.UsageError("--t1 must exceed --t0")
    if sigma > 0 and seed is None:
        raise click.UsageError("--seed is required when sigma > 0 (no hidden entropy)")
    A = fileio.read_matrix(system)
    x0 = fileio.read_vector(x0_path)
    grid = TimeGrid.uniform(t0, t1, npoints)
    traj = solve(A, x0, grid)
    if sigma > 0:
        data = add_noise(traj, sigma, randgen.SeededRng(seed).generator())
    else:
        data = Observations(grid=grid, Y=traj.X.copy(), sigma=0.0)
    fileio.write_long(out, data)
    click.echo(
        fileio.dump_report({"out": out, "d": data.d, "n": grid.n, "sigma": sigma})
    )


@cli.command()
@click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(["simple", "spline"]), default="spline", show_default=True)
@click.option("--lambda", "lam", default=1e-3, show_default=True, callback=_nonnegative)
@click.option("--order", default=4, show_default=True, callback=_positive)
@click.option("--truth", type=click.Path(exists=True, dir_okay=False), default=None)
def estimate(data, method, lam, order, truth):
    """Two-stage estimate of the system matrix from sampled data."""
    obs = fileio.read_long(data)
    ops = _operators(obs.grid, method, lam, order)
    truth_matrix = fileio.read_matrix(truth) if truth else None
    report = twostage.two_stage_estimate(obs, ops, truth=truth_matrix)
    payload = {"A_hat": report.A_hat.tolist(), "gram_cond": report.gram_cond}
    if report.ree is not None:
        payload["ree"] = report.ree
    click.echo(fileio.dump_report(payload))


@cli.command("scores")
@click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(["simple", "spline"]), default="spline", show_default=True)
@click.option("--lambda", "lam", default=1e-3, show_default=True, callback=_nonnegative)
@click.option("--order", default=4, show_default=True, callback=_positive)
@click.option("--system", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--x0", "x0_path", type=click.Path(exists=True, dir_okay=False), default=None)
def scores_cmd(data, method, lam, order, system, x0_path):
    """Identifiability scores (kappa, SCN, PIS, and ICIS when A and x0 are given)."""
    if (system is None) != (x0_path is None):
        raise click.UsageError("--system and --x0 must be given together")
    obs = fileio.read_long(data)
    ops = _operators(obs.grid, method, lam, order)
    A = fileio.read_matrix(system) if system else None
    x0 = fileio.read_vector(x0_path) if x0_path else None
    report = scores.ident_report(obs, ops, A=A, x0=x0)
    payload = {
        "kappa": report.kappa,
        "scn": report.scn,
        "pis": report.pis,
        "metadata": report.metadata,
    }
    if report.icis is not None:
        payload = {"icis": report.icis, **payload}
    click.echo(fileio.dump_report(payload))


@cli.command()
@click.option("--ensemble", type=click.Choice(["ginoe", "goe", "haar", "sphere"]), required=True)
@click.option("--d", "dim", required=True, type=int, callback=_positive)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def gen(ensemble, dim, seed, out):
    """Draw one random matrix/vector from a named ensemble."""
    g = randgen.SeededRng(seed).generator()
    draw = {
        "ginoe": randgen.ginoe,
        "goe": randgen.goe,
        "haar": randgen.haar_orthogonal,
        "sphere": randgen.uniform_sphere,
    }[ensemble](dim, g)
    fileio.write_matrix(out, draw.reshape(-1, 1) if draw.ndim == 1 else draw)
    click.echo(fileio.dump_report({"out": out, "ensemble": ensemble, "d": dim}))


def _write_rows(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _f(x) -> str:
    return f"{float(x):.17g}"


@cli.command()
@click.option("--reps", default=100, show_default=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--sigma", default=0.05, show_default=True, callback=_nonnegative)
@click.option("--t1", default=6.0, show_default=True)
@click.option("--n", "npoints", default=61, show_default=True)
@click.option("--lambda", "lam", default=1e-3, show_default=True, callback=_nonnegative)
@click.option("--threads", type=int, default=None, help="Worker processes (or IDENT_THREADS).")
@click.option("--plot", is_flag=True, help="Also render a PNG figure next to the CSV.")
def sim1(reps, seed, out, sigma, t1, npoints, lam, threads, plot):
    """ICIS against estimation error on the fixed 3-D benchmark system."""
    if reps < 2:
        raise click.UsageError("--reps must be at least 2")
    cfg = SimConfig(sigma=sigma, t1=t1, n=npoints, lam=lam)
    result = harness.run_sim1(reps, seed, config=cfg, threads=_threads_option(threads))
    _write_rows(
        out,
        "replicate,icis,ree_noisy,ree_clean,failed",
        [
            [str(r.replicate), _f(r.icis), _f(r.ree_noisy), _f(r.ree_clean), str(int(r.failed))]
            for r in result.records
        ],
    )
    if plot:
        from . import plotting

        plotting.sim1_figure(result.records, str(Path(out).with_suffix(".png")))
    click.echo(
        fileio.dump_report(
            {
                "out": out,
                "spearman_noisy": result.spearman_noisy,
                "spearman_clean": result.spearman_clean,
                "n_failed": result.n_failed,
            }
        )
    )


@cli.command()
@click.option("--reps", default=200, show_default=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--out-records", required=True, type=click.Path(dir_okay=False))
@click.option("--out-auc", required=True, type=click.Path(dir_okay=False))
@click.option("--sigma", default=0.05, show_default=True, callback=_nonnegative)
@click.option("--t1", default=6.0, show_default=True)
@click.option("--n", "npoints", default=61, show_default=True)
@click.option("--lambda", "lam", default=1e-3, show_default=True, callback=_nonnegative)
@click.option("--threads", type=int, default=None, help="Worker processes (or IDENT_THREADS).")
@click.option("--plot", is_flag=True, help="Also render PNG figures next to the records CSV.")
def sim2(reps, seed, out_records, out_auc, sigma, t1, npoints, lam, threads, plot):
    """Score-based classification of identifiable vs unidentifiable 4-D systems."""
    if reps < 10:
        raise click.UsageError("--reps must be at least 10")
    cfg = SimConfig(sigma=sigma, t1=t1, n=npoints, lam=lam)
    result = harness.run_sim2(reps, seed, config=cfg, threads=_threads_option(threads))
    _write_rows(
        out_records,
        "replicate,case,icis,kappa_noisy,scn_noisy,pis_noisy,kappa_clean,scn_clean,pis_clean,failed",
        [
            [
                str(r.replicate),
                r.case,
                _f(r.icis),
                _f(r.kappa_noisy),
                _f(r.scn_noisy),
                _f(r.pis_noisy),
                _f(r.kappa_clean),
                _f(r.scn_clean),
                _f(r.pis_clean),
                str(int(r.failed)),
            ]
            for r in result.records
        ],
    )
    auc_payload = {
        cond: {score: roc.to_json() for score, roc in table.items()}
        for cond, table in result.auc_table.items()
    }
    fileio.dump_report({"auc": auc_payload, "n_failed": result.n_failed}, path=out_auc)
    if plot:
        from . import plotting

        stem = Path(out_records)
        plotting.sim2_box_figure(result.records, str(stem.with_suffix(".box.png")))
        plotting.sim2_roc_figure(result.auc_table, str(stem.with_suffix(".roc.png")))
    summary = {
        cond: {score: table[score].auc for score in table}
        for cond, table in result.auc_table.items()
    }
    click.echo(fileio.dump_report({"out_records": out_records, "out_auc": out_auc, "auc": summary}))


@cli.command()
@click.option("--dims", required=True, help="Comma-separated dimensions, e.g. 3,5,100.")
@click.option("--reps", default=50, show_default=True, type=int, callback=_positive)
@click.option("--ensemble", type=click.Choice(["ginoe", "goe"]), default="ginoe", show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--threads", type=int, default=None, help="Worker processes (or IDENT_THREADS).")
@click.option("--plot", is_flag=True, help="Also render a PNG figure next to the CSV.")
def dimscale(dims, reps, ensemble, seed, out, threads, plot):
    """ICIS samples of random systems across dimensions (box-plot ready)."""
    try:
        dim_list = [int(tok) for tok in dims.split(",") if tok.strip()]
    except ValueError as exc:
        raise click.UsageError(f"bad --dims value: {exc}")
    if not dim_list or any(d < 1 for d in dim_list):
        raise click.UsageError("--dims needs positive integers")
    records = harness.run_dimension_scaling(
        dim_list, reps, ensemble, seed, threads=_threads_option(threads)
    )
    _write_rows(
        out,
        "d,replicate,icis,failed",
        [[str(r.d), str(r.replicate), _f(r.icis), str(int(r.failed))] for r in records],
    )
    if plot:
        from . import plotting

        plotting.dimscale_figure(records, str(Path(out).with_suffix(".png")))
    click.echo(fileio.dump_report({"out": out, "n_records": len(records)}))


@cli.command()
def selftest():
    """Run every module's property suite and print a pass/fail table."""
    from . import selftest as st

    results = st.run_all()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name:<{width}}"
        if r.detail:
            line += f"  {r.detail}"
        click.echo(line)
        failed += 0 if r.passed else 1
    click.echo(f"{len(results) - failed}/{len(results)} checks passed")
    if failed:
        raise click.exceptions.Exit(2)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except IdentError as exc:
        payload = {"error": exc.kind, "message": str(exc)}
        payload.update(exc.payload)
        click.echo(fileio.dump_report(payload))
        return 2
    except np.linalg.LinAlgError as exc:
        click.echo(fileio.dump_report({"error": "LinAlgError", "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
