"""Assembling full candidate flows ``u = u_p + beta * w`` with Bernoulli pressure."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BindingError, DomainError
from .gamma_constraints import GammaExponential, a_from_wy
from .riccati_core import RiccatiState, integrate, stereographic_components
from .stencils import Grid
from .vorticity_fields import BeltramiABC, VorticityFieldSpec, eval_field, eval_jacobian

BINDING_TOL = 1e-12


@dataclass(frozen=True)
class PolynomialPotential:
    """Body-force potential ``phi = c + g.x + x.Q.x / 2`` (``Q`` symmetric)."""

    constant: float = 0.0
    linear: tuple = (0.0, 0.0, 0.0)
    quadratic: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(float(v) for v in self.linear))
        if self.quadratic is not None:
            q = np.asarray(self.quadratic, dtype=float)
            if q.shape != (3, 3) or not np.allclose(q, q.T, rtol=0, atol=1e-15):
                raise DomainError("quadratic potential must be a symmetric 3x3 matrix")
            object.__setattr__(self, "quadratic", tuple(map(tuple, q)))

    @property
    def is_zero(self) -> bool:
        return self.constant == 0 and not any(self.linear) and self.quadratic is None

    def value(self, x):
        x = np.asarray(x, dtype=float)
        out = self.constant + x @ np.asarray(self.linear)
        if self.quadratic is not None:
            out = out + 0.5 * np.einsum("...i,ij,...j->...", x, np.asarray(self.quadratic), x)
        return out

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        out = np.broadcast_to(np.asarray(self.linear), x.shape).copy()
        if self.quadratic is not None:
            out = out + x @ np.asarray(self.quadratic)
        return out


@dataclass(frozen=True)
class UniformIrrotational:
    """Frozen Riccati state with constant gamma: a uniform potential flow."""

    state: RiccatiState
    gamma: float

    def sample(self, points, t):
        u = np.array(stereographic_components(self.state.a, self.state.b, self.gamma))
        return np.broadcast_to(u, np.shape(points)).copy()


@dataclass(frozen=True)
class TangentIrrotational:
    """Tangent-line family with exponential gamma; ``a`` comes from ``w_y(z, t)``.

    ``source`` supplies ``w_y`` and its z-derivative; normally it is the same
    vorticity field that drives the solenoidal part.
    """

    gamma: GammaExponential
    source: VorticityFieldSpec
    convention: str = "printed"

    @property
    def alpha(self) -> float:
        return self.gamma.alpha

    def riccati_a(self, points, t):
        w_y = eval_field(self.source, points, t)[..., 1]
        dwy_dz = eval_jacobian(self.source, points, t)[..., 1, 2]
        pts = np.asarray(points)

        def where(idx):
            p = pts[idx] if pts.ndim > 1 else pts
            return {"x": float(p[0]), "y": float(p[1]), "z": float(p[2]), "t": float(t)}

        return a_from_wy(self.gamma, w_y, dwy_dz, self.convention, locations=where)

    def sample(self, points, t):
        a = self.riccati_a(points, t)
        gam = self.gamma.value(points)
        return np.stack(stereographic_components(a, self.alpha * a, gam), axis=-1)

    def sample_masked(self, points, t):
        """Like :meth:`sample` but with NaN rows and a mask where ``a`` is inadmissible."""
        w_y = eval_field(self.source, points, t)[..., 1]
        dwy_dz = eval_jacobian(self.source, points, t)[..., 1, 2]
        with np.errstate(divide="ignore", invalid="ignore"):
            arg = np.where(w_y != 0, _raw_arcsin_argument(self.gamma, w_y, dwy_dz), np.inf)
        bad = ~(np.abs(arg) <= 1.0 + 1e-12)
        a = np.where(bad, np.nan, 0.0)
        ok = ~bad
        if np.any(ok):
            a[ok] = a_from_wy(self.gamma, w_y[ok], dwy_dz[ok], self.convention)
        gam = self.gamma.value(points)
        u = np.stack(stereographic_components(a, self.alpha * a, gam), axis=-1)
        return u, bad


def _raw_arcsin_argument(g: GammaExponential, w_y, dw_y_dz):
    return 2.0 * np.asarray(dw_y_dz) / (g.alpha * g.gy_over_gamma() * np.asarray(w_y))


@dataclass(frozen=True)
class RiccatiIrrotational:
    """Per-point RK4 solution of the Riccati system driven by ``w(x, t)``.

    Every point starts from ``state0`` at ``t = 0``; ``gamma`` is a constant
    or a :class:`GammaExponential`.  Nothing forces the result to be curl-free
    or divergence-free; the verifier measures that.
    """

    state0: RiccatiState
    gamma: object
    source: VorticityFieldSpec
    dt: float = 1e-3

    def states(self, points, t):
        pts = np.asarray(points, dtype=float)
        y0 = np.broadcast_to(np.array([self.state0.a, self.state0.b]), pts.shape[:-1] + (2,))
        if t == 0:
            return y0.copy()
        traj = integrate(y0, lambda s: eval_field(self.source, pts, s), (0.0, t), self.dt)
        if traj.escaped:
            raise DomainError(f"Riccati state escaped to infinity at t={traj.escape_time}")
        return traj.states[-1]

    def sample(self, points, t):
        st = self.states(points, t)
        gam = self.gamma.value(points) if isinstance(self.gamma, GammaExponential) else self.gamma
        return np.stack(stereographic_components(st[..., 0], st[..., 1], gam), axis=-1)


@dataclass(frozen=True)
class FlowSolution:
    irrotational: object | None = None
    beta: float = 0.0
    vorticity: VorticityFieldSpec | None = None
    potential: PolynomialPotential = field(default_factory=PolynomialPotential)
    nu: float = 1.0
    rho: float = 1.0
    pressure_model: str = "bernoulli"

    def __post_init__(self):
        if not self.nu > 0:
            raise DomainError("nu must be positive")
        if not self.rho > 0:
            raise DomainError("rho must be positive")
        if self.pressure_model not in ("bernoulli", "zero"):
            raise ValueError(f"unknown pressure model {self.pressure_model!r}")
        if self.vorticity is not None:
            if not math.isclose(self.vorticity.nu, self.nu, rel_tol=1e-14):
                raise DomainError("vorticity field viscosity differs from the flow viscosity")
            if self.beta == 0:
                raise DomainError("beta must be nonzero when a solenoidal part is present")
            kappa = self.vorticity.helical_kappa
            if kappa is not None and abs(kappa * self.beta - 1.0) > BINDING_TOL:
                raise BindingError(f"helical field needs kappa * beta = 1, got {kappa * self.beta!r}")

    @property
    def is_helical(self) -> bool:
        return self.vorticity is None or self.vorticity.is_helical


def irrotational_velocity(sol: FlowSolution, x, t):
    x = np.asarray(x, dtype=float)
    if sol.irrotational is None:
        return np.zeros(x.shape)
    return sol.irrotational.sample(x, t)


def solenoidal_velocity(sol: FlowSolution, x, t):
    x = np.asarray(x, dtype=float)
    if sol.vorticity is None:
        return np.zeros(x.shape)
    return sol.beta * eval_field(sol.vorticity, x, t)


def vorticity(sol: FlowSolution, x, t):
    x = np.asarray(x, dtype=float)
    if sol.vorticity is None:
        return np.zeros(x.shape)
    return eval_field(sol.vorticity, x, t)


def velocity(sol: FlowSolution, x, t):
    if t < 0:
        raise DomainError("t must be non-negative")
    return irrotational_velocity(sol, x, t) + solenoidal_velocity(sol, x, t)


def pressure_from_velocity(sol: FlowSolution, x, u):
    """``p / rho = -phi - |u|^2 / 2`` (gauge constant zero)."""
    if sol.pressure_model == "zero":
        return np.zeros(np.shape(u)[:-1])
    return -sol.potential.value(x) - 0.5 * np.sum(np.asarray(u) ** 2, axis=-1)


def pressure(sol: FlowSolution, x, t):
    """Pressure divided by density at ``x``; a float for a single point."""
    x = np.asarray(x, dtype=float)
    out = pressure_from_velocity(sol, x, velocity(sol, x, t))
    return float(out) if np.ndim(out) == 0 else out


def trkal_solution(beta: float, abc: BeltramiABC, rho: float = 1.0,
                   potential: PolynomialPotential | None = None) -> FlowSolution:
    """Decaying Beltrami flow ``u = beta * w`` with ``kappa = 1 / beta``."""
    if beta == 0 or abs(abc.kappa * beta - 1.0) > BINDING_TOL:
        raise BindingError(f"Trkal flow needs kappa * beta = 1 (kappa={abc.kappa}, beta={beta})")
    return FlowSolution(
        irrotational=None, beta=beta, vorticity=VorticityFieldSpec((abc,), abc.nu),
        potential=potential or PolynomialPotential(), nu=abc.nu, rho=rho,
    )


@dataclass
class SampledFields:
    grid: Grid
    t: float
    velocity: np.ndarray
    pressure: np.ndarray
    failures: list = field(default_factory=list)


def sample_grid(sol: FlowSolution, grid: Grid, t: float) -> SampledFields:
    """Velocity and ``p / rho`` at every grid point, row-major (z fastest).

    Inadmissible points of a tangent-family irrotational part are set to NaN
    and listed in ``failures`` instead of aborting the whole sample.
    """
    pts = grid.points()
    failures = []
    if isinstance(sol.irrotational, TangentIrrotational):
        u_p, bad = sol.irrotational.sample_masked(pts, t)
        for idx in np.argwhere(bad):
            p = pts[tuple(idx)]
            failures.append({"index": tuple(int(i) for i in idx),
                             "x": float(p[0]), "y": float(p[1]), "z": float(p[2]), "t": float(t)})
    else:
        u_p = irrotational_velocity(sol, pts, t)
    u = u_p + solenoidal_velocity(sol, pts, t)
    return SampledFields(grid, t, u, pressure_from_velocity(sol, pts, u), failures)


def kinetic_energy(u: np.ndarray, h: float) -> float:
    """``sum |u|^2 / 2 * h^3`` with an order-independent compensated sum."""
    return math.fsum((0.5 * np.sum(np.asarray(u) ** 2, axis=-1) * h ** 3).ravel())

