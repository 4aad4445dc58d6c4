"""CSV and JSON conventions shared by the CLI.

Matrices are headerless numeric grids; trajectories/observations are
long-format CSV with header ``time,dim,value`` and 1-indexed dims.  All
floats are written with 17 significant digits so every file round-trips to
bit-identical values.  JSON reports carry ``schema_version`` 1 and encode
non-finite floats as the strings "inf" / "-inf".
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .dynamics import Observations, TimeGrid, Trajectory
from .errors import DegenerateInput

SCHEMA_VERSION = 1

FLOAT_FMT = "%.17g"


def write_matrix(path, M) -> None:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    np.savetxt(path, M, fmt=FLOAT_FMT, delimiter=",")


def read_matrix(path) -> np.ndarray:
    M = np.loadtxt(path, delimiter=",", ndmin=2)
    return M


def read_vector(path) -> np.ndarray:
    v = read_matrix(path)
    if 1 not in v.shape and v.ndim == 2 and min(v.shape) != 1:
        raise DegenerateInput("expected a vector file", shape=list(v.shape))
    return v.ravel()


def write_long(path, data) -> None:
    """Write a Trajectory/Observations as long-format time,dim,value rows."""
    grid = data.grid
    Y = data.X if isinstance(data, Trajectory) else data.Y
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("time,dim,value\n")
        for j, t in enumerate(grid.points):
            for i in range(Y.shape[0]):
                fh.write(f"{t:.17g},{i + 1},{Y[i, j]:.17g}\n")


def read_long(path) -> Observations:
    raw = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if raw.shape[1] != 3:
        raise DegenerateInput("long format needs exactly time,dim,value columns")
    times = np.unique(raw[:, 0])
    dims = np.unique(raw[:, 1]).astype(int)
    if dims.min() != 1 or dims.max() != dims.size:
        raise DegenerateInput("dims must be 1..d", dims=dims.tolist())
    d, n = dims.size, times.size
    if raw.shape[0] != d * n:
        raise DegenerateInput("incomplete long-format grid", rows=raw.shape[0])
    Y = np.empty((d, n))
    t_index = {t: j for j, t in enumerate(times)}
    for time, dim, value in raw:
        Y[int(dim) - 1, t_index[time]] = value
    return Observations(grid=TimeGrid(times), Y=Y, sigma=None)  # noise scale unknown


def jsonable(obj):
    """Recursively convert report values into JSON-encodable data."""
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    return obj


def dump_report(payload: dict, path=None) -> str:
    """Serialize a report dict (schema_version added) to a file or a string."""
    body = {"schema_version": SCHEMA_VERSION}
    body.update(jsonable(payload))
    text = json.dumps(body, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
