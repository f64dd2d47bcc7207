"""Finite-difference verification of candidate flows.

Residuals are computed from sampled velocity and pressure only (plus the
analytic vorticity for the rotation law), so they are independent of the
analytic derivative code used to build the solutions.  Time derivatives are
central differences in ``t``; space derivatives are central stencils of
order 2 or 4 on interior grid points.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .assembly import (FlowSolution, irrotational_velocity, pressure_from_velocity,
                       solenoidal_velocity, velocity, vorticity)
from .errors import DomainError
from .stencils import (Grid, fd_curl, fd_divergence, fd_gradient, fd_laplacian,
                       interior)

COMPONENTS = ("x", "y", "z")
THREADS_ENV = "RICCATI_FLOW_THREADS"


def max_workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise DomainError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class Norm:
    max: float
    l2: float

    @classmethod
    def of(cls, r) -> "Norm":
        r = np.asarray(r, dtype=float)
        if r.size == 0:
            return cls(0.0, 0.0)
        return cls(float(np.max(np.abs(r))), math.sqrt(math.fsum((r * r).ravel())))


ZERO = Norm(0.0, 0.0)


def _vector_norms(r) -> tuple:
    return tuple(Norm.of(r[..., i]) for i in range(3))


@dataclass
class ResidualReport:
    t: float
    grid: Grid
    orders: dict
    continuity: Norm = ZERO
    momentum: tuple = (ZERO, ZERO, ZERO)
    curl_free: tuple = (ZERO, ZERO, ZERO)
    potential_continuity: Norm = ZERO
    heat: tuple = (ZERO, ZERO, ZERO)
    rotation: tuple = (ZERO, ZERO, ZERO)
    notes: list = field(default_factory=list)

    def max_of(self, name: str) -> float:
        val = getattr(self, name)
        if isinstance(val, Norm):
            return val.max
        return max(n.max for n in val)

    def as_dict(self) -> dict:
        """Flat ``name.component.norm -> value`` mapping in a fixed key order."""
        out = {}
        for name in ("continuity", "potential_continuity"):
            n = getattr(self, name)
            out[f"{name}.max"] = n.max
            out[f"{name}.l2"] = n.l2
        for name in ("momentum", "curl_free", "heat", "rotation"):
            for comp, n in zip(COMPONENTS, getattr(self, name)):
                out[f"{name}.{comp}.max"] = n.max
                out[f"{name}.{comp}.l2"] = n.l2
        return out


def default_dt_fd(t: float) -> float:
    return 1e-4 * max(1.0, t)


def _time_levels(t: float, dt_fd: float | None):
    dt = default_dt_fd(t) if dt_fd is None else dt_fd
    if not dt > 0:
        raise DomainError("dt_fd must be positive")
    if t - dt < 0:
        raise DomainError(f"need t - dt_fd >= 0 (t={t}, dt_fd={dt})")
    return dt


def continuity_residual(sol: FlowSolution, grid: Grid, t: float, order: int = 2) -> Norm:
    grid.check_stencil(order)
    u = velocity(sol, grid.points(), t)
    return Norm.of(fd_divergence(u, grid.h, order))


def _momentum_from_samples(sol, pts, u_minus, u, u_plus, dt, h, order):
    dudt = interior((u_plus - u_minus) / (2.0 * dt), order)
    jac = fd_gradient(u, h, order)
    conv = np.einsum("...j,...ij->...i", interior(u, order), jac)
    p = pressure_from_velocity(sol, pts, u)
    grad_p = fd_gradient(p, h, order)
    grad_phi = fd_gradient(sol.potential.value(pts), h, order)
    lap = fd_laplacian(u, h, order)
    return dudt + conv + grad_p - sol.nu * lap + grad_phi


def momentum_residual(sol: FlowSolution, grid: Grid, t: float, dt_fd: float | None = None,
                      order: int = 2) -> tuple:
    """Componentwise norms of ``du/dt + (u.grad)u + grad(p/rho) - nu lap u + grad phi``."""
    grid.check_stencil(order)
    dt = _time_levels(t, dt_fd)
    pts = grid.points()
    r = _momentum_from_samples(sol, pts, velocity(sol, pts, t - dt), velocity(sol, pts, t),
                               velocity(sol, pts, t + dt), dt, grid.h, order)
    return _vector_norms(r)


def decomposition_residuals(sol: FlowSolution, grid: Grid, t: float, dt_fd: float | None = None,
                            order: int = 2) -> dict:
    """Heat equation for ``u_w``, rotation law and curl/div conditions for ``u_p``.

    An absent part contributes zero residuals.  The rotation law uses
    ``u_p x w`` only: the Lamb term ``u_w x w`` vanishes identically because
    ``u_w = beta w``.
    """
    grid.check_stencil(order)
    dt = _time_levels(t, dt_fd)
    pts = grid.points()
    out = {"heat": (ZERO,) * 3, "rotation": (ZERO,) * 3, "curl_free": (ZERO,) * 3,
           "potential_continuity": ZERO}
    if sol.vorticity is not None:
        uw_m, uw, uw_p = (solenoidal_velocity(sol, pts, s) for s in (t - dt, t, t + dt))
        r = interior((uw_p - uw_m) / (2 * dt), order) - sol.nu * fd_laplacian(uw, grid.h, order)
        out["heat"] = _vector_norms(r)
    if sol.irrotational is not None:
        up_m, up, up_p = (irrotational_velocity(sol, pts, s) for s in (t - dt, t, t + dt))
        w = vorticity(sol, pts, t)
        rot = interior((up_p - up_m) / (2 * dt) - np.cross(up, w), order)
        out["rotation"] = _vector_norms(rot)
        out["curl_free"] = _vector_norms(fd_curl(up, grid.h, order))
        out["potential_continuity"] = Norm.of(fd_divergence(up, grid.h, order))
    return out


def verify(sol: FlowSolution, grid: Grid, t: float, dt_fd: float | None = None,
           order: int = 2, continuity_order: int | None = None) -> ResidualReport:
    """All residuals at one time on one grid."""
    continuity_order = order if continuity_order is None else continuity_order
    grid.check_stencil(max(order, continuity_order))
    report = ResidualReport(t=t, grid=grid,
                            orders={"space": order, "continuity": continuity_order, "time": 2})
    report.continuity = continuity_residual(sol, grid, t, continuity_order)
    report.momentum = momentum_residual(sol, grid, t, dt_fd, order)
    for name, value in decomposition_residuals(sol, grid, t, dt_fd, order).items():
        setattr(report, name, value)
    if not sol.is_helical:
        report.notes.append("solenoidal part is not helical")
    return report


@dataclass(frozen=True)
class ConvergenceResult:
    hs: tuple
    values: tuple
    order: float | str

    @property
    def is_exact(self) -> bool:
        return self.order == "exact"


def observed_order(hs, values, exact_floor: float = 1e-10) -> float | str:
    """Least-squares slope of ``log(value)`` against ``log(h)``; ``"exact"`` at round-off."""
    values = np.asarray(values, dtype=float)
    if np.all(values <= exact_floor):
        return "exact"
    logs = np.log(np.maximum(values, np.finfo(float).tiny))
    slope, _ = np.polyfit(np.log(np.asarray(hs, dtype=float)), logs, 1)
    return float(slope)


STUDY_RESIDUALS = ("momentum", "continuity", "heat", "rotation", "curl_free", "potential_continuity")


def convergence_study(sol: FlowSolution, grids, t: float, dt_fd: float | None = None,
                      order: int = 2, continuity_order: int | None = None,
                      exact_floor: float = 1e-10) -> dict:
    """Observed order of every residual (max-norm) across grids of decreasing ``h``.

    Grids are evaluated concurrently up to ``RICCATI_FLOW_THREADS`` workers;
    results do not depend on the worker count.
    """
    grids = list(grids)
    if len(grids) < 3:
        raise DomainError("a convergence study needs at least 3 grids")
    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        reports = list(pool.map(lambda g: verify(sol, g, t, dt_fd, order, continuity_order), grids))
    hs = tuple(g.h for g in grids)
    out = {}
    for name in STUDY_RESIDUALS:
        vals = tuple(r.max_of(name) for r in reports)
        out[name] = ConvergenceResult(hs, vals, observed_order(hs, vals, exact_floor))
    return out
