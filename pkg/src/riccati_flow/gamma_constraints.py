"""Scale function gamma and the constraints tying it to the Riccati field.

On the tangent line ``b = alpha a`` the curl-free and continuity conditions
for (U, V, W) can be solved for the spatial gradient of ``a`` in terms of
the gradient of ``gamma``.  With the exponential family
``gamma = gamma0 exp(-k x - alpha k y)`` the x and y derivatives of ``a``
vanish, and ``a`` follows algebraically from ``w_y(z, t)`` and its
z-derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AdmissibilityError, DomainError
from .riccati_core import RiccatiState
from .stencils import Grid, fd_curl, fd_divergence

ADMISSIBILITY_SLACK = 1e-12


@dataclass(frozen=True)
class GammaExponential:
    """``gamma(x, y) = gamma0 * exp(-k x - alpha k y)``."""

    gamma0: float
    k: float
    alpha: float

    def __post_init__(self):
        if self.alpha == 0:
            raise DomainError("alpha must be nonzero")

    def value(self, x, y=None):
        if y is None:
            pts = np.asarray(x, dtype=float)
            x, y = pts[..., 0], pts[..., 1]
        out = self.gamma0 * np.exp(-self.k * np.asarray(x) - self.alpha * self.k * np.asarray(y))
        return float(out) if np.ndim(out) == 0 else out

    def gradient(self, x, y=None):
        g = np.asarray(self.value(x, y))
        return np.stack((-self.k * g, -self.alpha * self.k * g, np.zeros_like(g)), axis=-1)

    def gy_over_gamma(self) -> float:
        """``(d gamma/dy) / gamma``, the same everywhere for this family."""
        return -self.alpha * self.k


@dataclass(frozen=True)
class ConstraintResiduals:
    continuity: float
    curl_x: float
    curl_y: float
    curl_z: float

    def as_dict(self) -> dict:
        return {"continuity": self.continuity, "curl_x": self.curl_x,
                "curl_y": self.curl_y, "curl_z": self.curl_z}


def gamma_eval(g: GammaExponential, x, y):
    """Value and analytic gradient ``(-k gamma, -alpha k gamma, 0)``."""
    return g.value(x, y), g.gradient(x, y)


def grad_a_from_gamma(state, g, x=0.0, y=0.0, z=0.0, tol: float = 1e-12) -> np.ndarray:
    """Spatial gradient of ``a`` forced by the zero-curl and continuity conditions.

    ``state`` must lie on the tangent line ``b = alpha a``.  ``g`` can be any
    object with ``value``/``gradient`` taking a point and an ``alpha``
    attribute; for :class:`GammaExponential` the x and y components are zero.
    """
    if isinstance(state, RiccatiState):
        a, b = state.a, state.b
    else:
        a, b = state
    alpha = g.alpha
    if abs(b - alpha * a) > tol * (1.0 + abs(b)):
        raise DomainError("state is not on the tangent line b = alpha a")
    point = np.array([x, y, z], dtype=float)
    gam = float(g.value(point))
    if gam == 0.0:
        raise DomainError("gamma vanishes")
    gx, gy, gz = (float(c) for c in g.gradient(point))
    s2 = alpha * alpha + 1.0
    lift = 1.0 + s2 * a * a
    da_dy = alpha / (2.0 * s2 * gam) * lift * gz
    da_dz = -lift * gy / (2.0 * alpha * gam)
    bracket = (1.0 - s2 * a * a) * (gx - gy / alpha) + 2.0 * a * gz
    if bracket == 0.0:
        da_dx = 0.0
    elif a == 0.0:
        raise DomainError("d a/dx is undefined at a = 0 unless the gamma gradient satisfies the reduction")
    else:
        da_dx = bracket * lift / (4.0 * s2 * a * gam)
    return np.array([da_dx, da_dy, da_dz])


def _scale(alpha: float, convention: str) -> float:
    s2 = alpha * alpha + 1.0
    if convention == "printed":
        return s2
    if convention == "corrected":
        return math.sqrt(s2)
    raise ValueError(f"unknown convention {convention!r}")


def arcsin_argument(g: GammaExponential, w_y, dw_y_dz):
    """``2 gamma (d w_y/dz) / (alpha (d gamma/dy) w_y)``."""
    w_y = np.asarray(w_y, dtype=float)
    if np.any(w_y == 0.0):
        raise DomainError("w_y vanishes")
    return 2.0 * np.asarray(dw_y_dz, dtype=float) / (g.alpha * g.gy_over_gamma() * w_y)


def a_from_wy(g: GammaExponential, w_y, dw_y_dz, convention: str = "printed",
              locations: Callable | None = None):
    """``a = tan(arcsin(arg) / 2) / scale`` with ``arg`` from :func:`arcsin_argument`.

    ``scale`` is ``alpha^2 + 1`` (``convention="printed"``) or its square root
    (``"corrected"``).  Raises :class:`AdmissibilityError` when ``|arg| > 1``;
    ``locations(index)`` may map the first bad array index to coordinates for
    the error report.
    """
    arg = arcsin_argument(g, w_y, dw_y_dz)
    bad = np.abs(arg) > 1.0 + ADMISSIBILITY_SLACK
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(np.atleast_1d(bad))[0])
        value = float(np.atleast_1d(arg)[idx])
        loc = locations(idx) if locations else {"index": idx}
        raise AdmissibilityError(f"arcsin argument {value:.6g} outside [-1, 1]", loc)
    arg = np.clip(arg, -1.0, 1.0)
    out = np.tan(0.5 * np.arcsin(arg)) / _scale(g.alpha, convention)
    return float(out) if np.ndim(out) == 0 else out


def wy_integral_from_a(alpha: float, a, convention: str = "printed"):
    """Invert the tangent-line solution: recover ``int w_y dt`` from ``a``."""
    scale = _scale(alpha, convention)
    return 2.0 / scale * np.arctan(scale * np.asarray(a))


def wy_constraint_residual(g: GammaExponential, w_y, dw_y_dz, a, convention: str = "printed"):
    """Residual of ``dw_y/dz = (alpha/(2 gamma)) (dgamma/dy) sin((alpha^2+1) int w_y dt) w_y``.

    ``int w_y dt`` is recovered from ``a`` with the tangent-line inversion of
    the chosen convention.
    """
    integral = wy_integral_from_a(g.alpha, a, convention)
    s2 = g.alpha ** 2 + 1.0
    rhs = 0.5 * g.alpha * g.gy_over_gamma() * np.sin(s2 * integral) * np.asarray(w_y)
    return np.asarray(dw_y_dz) - rhs


def constraint_residuals(sampler: Callable, grid: Grid, t: float, order: int = 2) -> ConstraintResiduals:
    """Max-norm FD residuals of div and the three curl components of a velocity sampler.

    ``sampler(points, t)`` must return an array of shape ``points.shape``.
    """
    grid.check_stencil(order)
    u = np.asarray(sampler(grid.points(), t))
    div = fd_divergence(u, grid.h, order)
    curl = fd_curl(u, grid.h, order)
    return ConstraintResiduals(
        float(np.max(np.abs(div))),
        *(float(np.max(np.abs(curl[..., i]))) for i in range(3)),
    )
