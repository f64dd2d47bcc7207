"""Special cases of the Riccati system that can be solved in closed form.

All solutions here are for the real part ``a`` (and, where the case fixes
it, ``b``).  Times are measured from ``t = 0``, where the initial value or
the phase is given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as sp_integrate
from scipy import optimize

from .errors import BoundaryEscape, DomainError, PreconditionError, SingularityError
from .riccati_core import RiccatiState, VorticitySample, riccati_rhs_ab

CONST_CONDITION_TOL = 1e-12
VARYING_CONDITION_TOL = 1e-8


@dataclass(frozen=True)
class RiccatiCoefficients:
    """Coefficients of ``a' = A a^2 + B a + D`` at one instant."""

    A: float
    B: float
    D: float

    def rhs(self, a):
        return self.A * a * a + self.B * a + self.D


@dataclass(frozen=True)
class CircleCase:
    C: float

    def __post_init__(self):
        if not self.C > 0:
            raise DomainError("circle radius C must be positive")


@dataclass(frozen=True)
class TangentCase:
    """Invariant subspace ``b = alpha a`` with ``wx = -alpha wy``, ``wz = 0``."""

    alpha: float

    def __post_init__(self):
        if self.alpha == 0:
            raise DomainError("alpha must be nonzero")

    def vorticity(self, wy: float) -> VorticitySample:
        return VorticitySample(-self.alpha * wy, wy, 0.0)


def riccati_coefficients(w, b: float, db_dt: float) -> RiccatiCoefficients:
    """Eliminate ``b'`` between the two real equations to get one Riccati ODE in ``a``."""
    if isinstance(w, VorticitySample):
        wx, wy, wz = w.wx, w.wy, w.wz
    else:
        wx, wy, wz = w
    if wy == 0:
        raise DomainError("w_y must be nonzero")
    s = wx * wx + wy * wy
    A = s / (2.0 * wy)
    B = -wx * wz / wy
    D = -(wx / wy) * db_dt - A * b * b + wz * b + 0.5 * wy - wx * wx / (2.0 * wy)
    return RiccatiCoefficients(A, B, D)


def bernoulli_condition(A, B, D, delta, epsilon) -> float:
    return delta * delta * A + epsilon * delta * B + epsilon * epsilon * D


def bernoulli_case_solve(A: float, B: float, D: float, delta: float, epsilon: float,
                         a0: float, t: float) -> float:
    """Solve ``a' = A a^2 + B a + D`` with constant coefficients when
    ``delta^2 A + epsilon delta B + epsilon^2 D = 0``.

    Shifting by the root ``delta/epsilon`` leaves a Bernoulli equation
    ``s' = A s^2 + P s``, whose reciprocal is linear.
    """
    if epsilon == 0:
        raise PreconditionError("epsilon must be nonzero")
    if abs(bernoulli_condition(A, B, D, delta, epsilon)) > CONST_CONDITION_TOL:
        raise PreconditionError("delta^2 A + epsilon delta B + epsilon^2 D != 0")

    root = delta / epsilon
    s0 = a0 - root
    if s0 == 0.0:
        return root
    P = 2.0 * root * A + B
    y0 = 1.0 / s0
    if P == 0.0:
        y = y0 - A * t
    else:
        y = (y0 + A / P) * math.exp(-P * t) - A / P
    # 1/s is monotone in t, so a sign change means s passed through infinity
    if y == 0.0 or (y > 0) != (y0 > 0):
        raise SingularityError(f"solution blows up before t={t}")
    return root + 1.0 / y


def _derivative(f: Callable, t: float, h: float = 1e-3) -> float:
    # fourth-order central difference
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h)


def condition_44_residual(A: Callable, B: Callable, D: Callable, t: float,
                          d_ratio: Callable | None = None) -> float:
    """``4D - B^2/A + 2 (B/A)'`` at time ``t``; zero when the algebraic case applies.

    ``d_ratio`` is the analytic derivative of ``B/A`` if the caller has one,
    otherwise a fourth-order central difference is used.
    """
    a_val = A(t)
    if a_val == 0:
        raise DomainError("A(t) must be nonzero")
    if d_ratio is None:
        dr = _derivative(lambda s: B(s) / A(s), t)
    else:
        dr = d_ratio(t)
    return 4.0 * D(t) - B(t) ** 2 / a_val + 2.0 * dr


def check_condition_44(A: Callable, B: Callable, D: Callable, t: float,
                       d_ratio: Callable | None = None, tol: float | None = None) -> bool:
    if tol is None:
        tol = CONST_CONDITION_TOL if d_ratio is not None else VARYING_CONDITION_TOL
    return abs(condition_44_residual(A, B, D, t, d_ratio)) <= tol


def algebraic_case_solution(A: Callable, B: Callable, t: float) -> float:
    a_val = A(t)
    if a_val == 0:
        raise DomainError("A(t) must be nonzero")
    return -B(t) / (2.0 * a_val)


def circle_solution(wz_integral: Callable, t: float, phase0: float = 0.0) -> RiccatiState:
    """Unit-circle case: ``a = sin(int wz dt + phase0)``, ``b = sqrt(1 - a^2)``.

    ``wz_integral(t)`` must return the integral of ``wz`` from 0 to ``t``.
    """
    a = math.sin(wz_integral(t) + phase0)
    return RiccatiState(a, math.sqrt(max(0.0, 1.0 - a * a)))


def tangent_solution(alpha: float, wy_integral: float, phase0: float = 0.0,
                     convention: str = "corrected", tol: float = 1e-9) -> float:
    """``a`` on the invariant line ``b = alpha a`` given ``int wy dt``.

    ``convention="corrected"`` solves ``a' = ((alpha^2+1) wy / 2) a^2 + wy/2``:
    ``a = tan(s/2 * int wy + phase0) / s`` with ``s = sqrt(alpha^2+1)``.
    ``convention="printed"`` gives ``tan((alpha^2+1)/2 * int wy + phase0) / (alpha^2+1)``,
    which does not satisfy that ODE; it is kept for comparison and because the
    gamma-constraint chain is built on it.
    """
    s2 = alpha * alpha + 1.0
    if convention == "corrected":
        scale = math.sqrt(s2)
    elif convention == "printed":
        scale = s2
    else:
        raise ValueError(f"unknown convention {convention!r}")
    arg = 0.5 * scale * wy_integral + phase0
    if abs(math.cos(arg)) < tol:
        raise SingularityError(f"tan argument {arg} is at a pole")
    return math.tan(arg) / scale


def tangent_rhs(alpha: float, wy: float, a):
    """Reduced ODE on the line ``b = alpha a``."""
    return 0.5 * (alpha * alpha + 1.0) * wy * a * a + 0.5 * wy


def _elliptic_g(C: float, R: Callable):
    def g(a):
        root = math.sqrt(max(0.0, C * C - a * a))
        val = R(a, root) * root
        if C != 1.0:
            # pole at a = 0; only its sign matters to callers
            val += 0.5 * (1.0 - C * C) * root / a if a != 0.0 else math.inf
        return val
    return g


def elliptic_rhs(C: float, R: Callable, wx: float, a: float) -> float:
    """``a' = wx * [(1-C^2)/2 * sqrt(C^2-a^2)/a + R(a, sqrt(C^2-a^2)) * sqrt(C^2-a^2)]``."""
    return wx * _elliptic_g(C, R)(a)


def _branch_interval(C: float, a0: float, side: int, g: Callable, samples: int = 4000):
    """Interval from ``a0`` towards ``side`` on which ``g`` keeps one sign."""
    end = side * C
    if a0 * side < 0:
        end = 0.0
    grid = np.linspace(a0, end, samples + 1)[1:-1]
    vals = [g(x) for x in grid]
    start_sign = np.sign(vals[0])
    if start_sign == 0:
        return None
    for i, v in enumerate(vals):
        if np.sign(v) != start_sign:
            if v == 0.0 or i == 0:
                return a0, grid[i], start_sign
            return a0, optimize.brentq(g, grid[i - 1], grid[i]), start_sign
    return a0, end, start_sign


def elliptic_case_solve(C: float, R: Callable, wx_of_t: Callable, a0: float, t: float,
                        tol: float = 1e-10) -> float:
    """Invert ``int_{a0}^{a} da/g(a) = int_0^t wx dt`` for ``a``.

    ``g`` is the bracket in :func:`elliptic_rhs`; ``R(a, root)`` receives
    ``root = sqrt(C^2 - a^2)``.  The left side is evaluated by adaptive
    quadrature and the equation solved with Brent's method on the branch of
    ``a`` that starts at ``a0`` and is bounded by ``a = 0``, ``|a| = C`` or an
    equilibrium.
    """
    if not abs(a0) < C:
        raise DomainError("need |a0| < C")
    g = _elliptic_g(C, R)
    target, _ = sp_integrate.quad(wx_of_t, 0.0, t, epsabs=1e-14, epsrel=1e-13, limit=200)
    if target == 0.0:
        return a0

    def inv_g(a):
        v = g(a)
        return 0.0 if math.isinf(v) else 1.0 / v

    if a0 != 0.0 and g(a0) == 0.0:
        return a0  # equilibrium

    sides = (1, -1) if a0 >= 0 else (-1, 1)
    for side in sides:
        branch = _branch_interval(C, a0, side, g)
        if branch is None:
            continue
        lo, hi, sign = branch
        # F(a) = int_{a0}^{a} da/g has sign(sign * side) on this branch
        if np.sign(sign * side) != np.sign(target):
            continue

        def F(a):
            val, _ = sp_integrate.quad(inv_g, a0, a, epsabs=1e-14, epsrel=1e-13, limit=200)
            return val

        f_end = F(hi)
        if abs(target) > abs(f_end):
            raise BoundaryEscape(
                f"solution leaves the branch ({lo}, {hi}) before t={t}")
        a = optimize.brentq(lambda x: F(x) - target, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200)
        if abs(F(a) - target) > tol:
            raise BoundaryEscape("implicit relation could not be met to tolerance")
        return a
    if all(g(a0 + s * 1e-9 * C) == 0.0 for s in (1, -1)):
        return a0
    raise BoundaryEscape("no branch from a0 reaches the requested integral")


def decaying_integral(amplitude: float, decay: float, t: float) -> float:
    """``int_0^t amplitude * exp(-decay s) ds``."""
    if decay == 0:
        return amplitude * t
    return amplitude * -math.expm1(-decay * t) / decay


def tangent_decaying_state(alpha: float, amplitude: float, decay: float, t: float,
                           convention: str = "corrected") -> RiccatiState:
    """Tangent-line state under ``wy = amplitude * exp(-decay t)`` (self-similar decay)."""
    a = tangent_solution(alpha, decaying_integral(amplitude, decay, t), convention=convention)
    return RiccatiState(a, alpha * a)


def tangent_decaying_limit(alpha: float, amplitude: float, decay: float,
                           convention: str = "corrected") -> RiccatiState:
    """``t -> infinity`` limit: the integral of ``wy`` saturates at ``amplitude / decay``."""
    if not decay > 0:
        raise DomainError("the limit exists only for a positive decay rate")
    a = tangent_solution(alpha, amplitude / decay, convention=convention)
    return RiccatiState(a, alpha * a)


def elliptic_system_rhs(C: float, R: Callable, wx_of_t: Callable) -> Callable:
    """Right side ``f(t, (a, b))`` of the full system under the elliptic-case vorticity.

    The vorticity is fed back from the state, ``w = (wx, wx b / a, R(a, b) wx)``,
    which keeps ``a^2 + b^2`` constant; used as the RK4 oracle for
    :func:`elliptic_case_solve`.
    """
    def f(t, y):
        a, b = float(y[0]), float(y[1])
        if a == 0.0:
            raise DomainError("elliptic-case vorticity is singular at a = 0")
        wx = wx_of_t(t)
        return np.array(riccati_rhs_ab(a, b, wx, wx * b / a, R(a, b) * wx))
    return f
