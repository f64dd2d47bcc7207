"""Writers for time series (CSV) and sampled fields (legacy VTK, CSV).

Floats are written with 17 significant digits so that every value
round-trips exactly through text.
"""

from __future__ import annotations

import csv
import io
import os
from typing import Callable, Iterable

import numpy as np

from .riccati_core import RiccatiState, Trajectory, stereographic_components
from .stencils import Grid

FMT = "%.17g"
TIMESERIES_COLUMNS = ("t", "a", "b", "U", "V", "W")
FIELD_COLUMNS = ("x", "y", "z", "u", "v", "w", "p")


def _fmt(v) -> str:
    return FMT % v


def timeseries_table(source, gamma: float, times: Iterable[float] | None = None) -> np.ndarray:
    """Rows ``(t, a, b, U, V, W)``.

    ``source`` is a scalar :class:`Trajectory` or a callable ``t -> RiccatiState``
    (closed forms); the callable form needs ``times``.
    """
    if isinstance(source, Trajectory):
        if source.states.ndim != 2:
            raise ValueError("time series need a single-point trajectory")
        t = np.asarray(source.times, dtype=float)
        a, b = source.a, source.b
    else:
        if times is None:
            raise ValueError("times are required for a closed-form source")
        t = np.asarray(list(times), dtype=float)
        states = [source(s) for s in t]
        a = np.array([s.a if isinstance(s, RiccatiState) else s[0] for s in states])
        b = np.array([s.b if isinstance(s, RiccatiState) else s[1] for s in states])
    U, V, W = stereographic_components(a, b, gamma)
    return np.column_stack((t, a, b, U, V, W))


def write_csv(rows: np.ndarray, header, path_or_stream):
    own = isinstance(path_or_stream, (str, os.PathLike))
    fh = open(path_or_stream, "w", newline="") if own else path_or_stream
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if own:
            fh.close()


def emit_timeseries(source, gamma: float, path_or_stream=None, times=None) -> str | None:
    """Write the ``t,a,b,U,V,W`` CSV; returns the text when no target is given."""
    table = timeseries_table(source, gamma, times)
    if path_or_stream is None:
        buf = io.StringIO()
        write_csv(table, TIMESERIES_COLUMNS, buf)
        return buf.getvalue()
    write_csv(table, TIMESERIES_COLUMNS, path_or_stream)
    return None


def read_csv(path) -> tuple[list, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return header, np.array(rows, dtype=float).reshape(-1, len(header))


def _check_shapes(grid: Grid, velocity: np.ndarray, pressure: np.ndarray):
    if velocity.shape != grid.dims + (3,) or pressure.shape != grid.dims:
        raise ValueError(f"arrays {velocity.shape}/{pressure.shape} do not match grid dims {grid.dims}")


def field_table(grid: Grid, velocity: np.ndarray, pressure: np.ndarray) -> np.ndarray:
    _check_shapes(grid, velocity, pressure)
    pts = grid.points().reshape(-1, 3)
    return np.column_stack((pts, velocity.reshape(-1, 3), pressure.reshape(-1)))


def write_fields_csv(path, grid: Grid, velocity: np.ndarray, pressure: np.ndarray):
    """Columns ``x,y,z,u,v,w,p`` in row-major grid order (z fastest)."""
    write_csv(field_table(grid, velocity, pressure), FIELD_COLUMNS, path)


def read_fields_csv(path, grid: Grid):
    header, table = read_csv(path)
    if tuple(header) != FIELD_COLUMNS:
        raise ValueError(f"unexpected header {header}")
    return table[:, 3:6].reshape(grid.dims + (3,)), table[:, 6].reshape(grid.dims)


def write_vtk(path, grid: Grid, velocity: np.ndarray, pressure: np.ndarray,
              title: str = "riccati-flow fields"):
    """Legacy ASCII ``STRUCTURED_POINTS`` with ``velocity`` vectors and ``pressure`` scalars.

    VTK wants x varying fastest, so arrays are written in Fortran order.
    """
    _check_shapes(grid, velocity, pressure)
    n = grid.size
    vel = velocity.transpose(2, 1, 0, 3).reshape(-1, 3)
    prs = pressure.transpose(2, 1, 0).reshape(-1)
    with open(path, "w") as fh:
        fh.write("# vtk DataFile Version 3.0\n")
        fh.write(title.replace("\n", " ")[:255] + "\n")
        fh.write("ASCII\nDATASET STRUCTURED_POINTS\n")
        fh.write("DIMENSIONS %d %d %d\n" % grid.dims)
        fh.write("ORIGIN %s %s %s\n" % tuple(_fmt(v) for v in grid.origin))
        fh.write("SPACING %s %s %s\n" % ((_fmt(grid.h),) * 3))
        fh.write("POINT_DATA %d\n" % n)
        fh.write("VECTORS velocity double\n")
        for row in vel:
            fh.write("%s %s %s\n" % tuple(_fmt(v) for v in row))
        fh.write("SCALARS pressure double 1\nLOOKUP_TABLE default\n")
        for v in prs:
            fh.write(_fmt(v) + "\n")


def read_vtk(path):
    """Minimal reader for files produced by :func:`write_vtk`."""
    with open(path) as fh:
        lines = fh.read().split("\n")
    dims = origin = spacing = None
    i = 0
    vel = prs = None
    while i < len(lines):
        parts = lines[i].split()
        if not parts:
            i += 1
            continue
        key = parts[0]
        if key == "DIMENSIONS":
            dims = tuple(int(v) for v in parts[1:4])
        elif key == "ORIGIN":
            origin = tuple(float(v) for v in parts[1:4])
        elif key == "SPACING":
            spacing = float(parts[1])
        elif key == "VECTORS":
            n = int(np.prod(dims))
            vel = np.array([[float(v) for v in lines[i + 1 + j].split()] for j in range(n)])
            i += n
        elif key == "LOOKUP_TABLE":
            n = int(np.prod(dims))
            prs = np.array([float(lines[i + 1 + j]) for j in range(n)])
            i += n
        i += 1
    grid = Grid(origin, spacing, dims)
    nx, ny, nz = dims
    velocity = vel.reshape(nz, ny, nx, 3).transpose(2, 1, 0, 3)
    pressure = prs.reshape(nz, ny, nx).transpose(2, 1, 0)
    return grid, velocity, pressure


def closed_form_source(a_of_t: Callable, alpha: float) -> Callable:
    """Wrap a closed form ``t -> a`` on the tangent line ``b = alpha a``."""
    return lambda t: RiccatiState(a_of_t(t), alpha * a_of_t(t))
