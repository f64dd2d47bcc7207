"""The coupled real Riccati system for the irrotational velocity.

The irrotational part of the flow, (U, V, W), is parametrised at each
spatial point by a complex number ``eta = a + i*b`` through a stereographic
map onto a sphere of radius ``gamma``.  Rigid rotation of (U, V, W) by the
local vorticity then becomes a pair of Riccati equations for (a, b), which
are integrated here with fixed-step RK4.

Every function accepts plain floats or numpy arrays; arrays broadcast, so a
whole grid of independent points can be advanced in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

DEFAULT_BLOWUP_BOUND = 1e12


@dataclass(frozen=True)
class RiccatiState:
    """Real and imaginary parts of ``eta`` at a single point."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"non-finite Riccati state ({self.a}, {self.b})")

    @property
    def eta(self) -> complex:
        return complex(self.a, self.b)

    @classmethod
    def from_eta(cls, eta: complex) -> "RiccatiState":
        return cls(eta.real, eta.imag)


@dataclass(frozen=True)
class VorticitySample:
    wx: float
    wy: float
    wz: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.wx, self.wy, self.wz)):
            raise DomainError("non-finite vorticity sample")

    def as_array(self) -> np.ndarray:
        return np.array([self.wx, self.wy, self.wz])


@dataclass(frozen=True)
class PotentialVelocity:
    U: float
    V: float
    W: float

    def as_array(self) -> np.ndarray:
        return np.array([self.U, self.V, self.W])


@dataclass
class Trajectory:
    """Sampled solution of the Riccati system.

    ``states`` has shape ``(len(times), ..., 2)`` where the trailing axis is
    (a, b) and the middle axes are whatever batch shape the initial state
    had.  If the bound was exceeded the integration stops early and
    ``escape_time`` records when; the stored samples end at the last state
    that was still inside the bound.
    """

    times: np.ndarray
    states: np.ndarray
    escape_time: float | None = None
    bound: float = DEFAULT_BLOWUP_BOUND
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states differ in length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    @property
    def escaped(self) -> bool:
        return self.escape_time is not None

    @property
    def a(self) -> np.ndarray:
        return self.states[..., 0]

    @property
    def b(self) -> np.ndarray:
        return self.states[..., 1]


def _components(state):
    if isinstance(state, RiccatiState):
        return state.a, state.b
    arr = np.asarray(state, dtype=float)
    return arr[..., 0], arr[..., 1]


def _vorticity(w):
    if isinstance(w, VorticitySample):
        return w.wx, w.wy, w.wz
    arr = np.asarray(w, dtype=float)
    return arr[..., 0], arr[..., 1], arr[..., 2]


def riccati_rhs_ab(a, b, wx, wy, wz):
    """Right-hand side of the real system on bare components."""
    da = 0.5 * wy * a * a - wx * b * a - (0.5 * wy * (b * b - 1.0) - wz * b)
    db = -0.5 * wx * b * b + wy * a * b + 0.5 * wx * (a * a - 1.0) - wz * a
    return da, db


def riccati_rhs(state, w):
    """Return ``(da/dt, db/dt)`` for a state and the local vorticity."""
    a, b = _components(state)
    return riccati_rhs_ab(a, b, *_vorticity(w))


def complex_riccati_rhs(eta, w):
    """Complex form: ``((wy + i wx)/2) eta^2 - i wz eta + (wy - i wx)/2``."""
    wx, wy, wz = _vorticity(w)
    return 0.5 * (wy + 1j * wx) * eta * eta - 1j * wz * eta + 0.5 * (wy - 1j * wx)


def xi_from_eta(eta):
    """Companion function ``xi = c + i d`` tied to ``eta`` by ``1/eta = -conj(xi)``."""
    eta_arr = np.asarray(eta, dtype=complex)
    mag2 = eta_arr.real ** 2 + eta_arr.imag ** 2
    if np.any(mag2 == 0.0):
        raise DomainError("xi is undefined for eta = 0")
    xi = -(eta_arr.real + 1j * eta_arr.imag) / mag2
    return complex(xi) if xi.ndim == 0 else xi


def stereographic_components(a, b, gamma):
    """Vectorised (U, V, W) on the sphere of radius ``gamma``."""
    r2 = a * a + b * b
    den = 1.0 + r2
    return -gamma * (2.0 * a) / den, -gamma * (2.0 * b) / den, gamma * (1.0 - r2) / den


def stereographic_velocity(state, gamma) -> PotentialVelocity:
    a, b = _components(state)
    return PotentialVelocity(*stereographic_components(a, b, gamma))


def stereographic_array(states, gamma) -> np.ndarray:
    """Stack of (U, V, W) for an array of states with trailing axis (a, b)."""
    a, b = _components(states)
    return np.stack(stereographic_components(a, b, gamma), axis=-1)


def _step_times(t0: float, t1: float, dt: float) -> np.ndarray:
    n = int(math.floor((t1 - t0) / dt + 1e-9))
    times = t0 + dt * np.arange(n + 1)
    if times[-1] >= t1 or t1 - times[-1] <= 1e-9 * dt:
        times[-1] = t1
    else:
        times = np.append(times, t1)
    return times


def rk4(f: Callable, y0, t_span, dt: float, bound: float = DEFAULT_BLOWUP_BOUND) -> Trajectory:
    """Classical fixed-step RK4 for ``y' = f(t, y)``.

    The last step is shortened to land exactly on ``t_span[1]``.  ``y0`` may be
    a float or an array of any shape.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must satisfy t1 > t0")
    if not dt > 0:
        raise ValueError("dt must be positive")

    times = _step_times(t0, t1, dt)
    y = np.array(y0, dtype=float)
    out = np.empty((len(times),) + y.shape)
    out[0] = y
    scalar = y.ndim == 0
    if scalar:
        y = float(y)

    for i in range(1, len(times)):
        t = times[i - 1]
        h = times[i] - t
        k1 = f(t, y)
        k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if scalar:
            bad = not (abs(y) <= bound)
        else:
            bad = not bool(np.all(np.abs(y) <= bound))
        if bad:
            return Trajectory(times[:i], out[:i], escape_time=float(times[i]), bound=bound)
        out[i] = y
    return Trajectory(times, out, bound=bound)


def _as_w_array(sample):
    if isinstance(sample, VorticitySample):
        return sample.as_array()
    return np.asarray(sample, dtype=float)


def integrate(state0, w_of_t: Callable, t_span, dt: float,
              bound: float = DEFAULT_BLOWUP_BOUND) -> Trajectory:
    """Integrate the real Riccati system with vorticity ``w_of_t(t)``.

    ``state0`` is a :class:`RiccatiState` or an array with trailing axis (a, b);
    ``w_of_t`` returns a :class:`VorticitySample` or an array broadcastable to
    the batch shape with trailing axis (wx, wy, wz).
    """
    if isinstance(state0, RiccatiState):
        y0 = np.array([state0.a, state0.b])
    else:
        y0 = np.asarray(state0, dtype=float)
        if y0.shape[-1:] != (2,):
            raise ValueError("state0 must have a trailing axis of length 2")
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError("t_span must satisfy t1 > t0")
    if not dt > 0:
        raise ValueError("dt must be positive")

    scalar = y0.shape == (2,)

    def w_at(t):
        s = w_of_t(t)
        if isinstance(s, VorticitySample):
            return s.wx, s.wy, s.wz
        arr = np.asarray(s, dtype=float)
        if scalar and arr.shape == (3,):
            return float(arr[0]), float(arr[1]), float(arr[2])
        return arr[..., 0], arr[..., 1], arr[..., 2]

    times = _step_times(t0, t1, dt)
    out = np.empty((len(times),) + y0.shape)
    out[0] = y0
    if scalar:
        a, b = float(y0[0]), float(y0[1])
    else:
        a, b = y0[..., 0].copy(), y0[..., 1].copy()

    # stage vorticity is reused across steps: the end of one step is the start of the next
    w_start = w_at(times[0])
    for i in range(1, len(times)):
        t = times[i - 1]
        h = times[i] - t
        w_mid = w_at(t + 0.5 * h)
        w_end = w_at(t + h)
        ka1, kb1 = riccati_rhs_ab(a, b, *w_start)
        ka2, kb2 = riccati_rhs_ab(a + 0.5 * h * ka1, b + 0.5 * h * kb1, *w_mid)
        ka3, kb3 = riccati_rhs_ab(a + 0.5 * h * ka2, b + 0.5 * h * kb2, *w_mid)
        ka4, kb4 = riccati_rhs_ab(a + h * ka3, b + h * kb3, *w_end)
        a = a + (h / 6.0) * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4)
        b = b + (h / 6.0) * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4)
        w_start = w_end
        if scalar:
            ok = abs(a) <= bound and abs(b) <= bound
        else:
            ok = bool(np.all(np.abs(a) <= bound) and np.all(np.abs(b) <= bound))
        if not ok:
            return Trajectory(times[:i], out[:i], escape_time=float(times[i]), bound=bound)
        out[i, ..., 0] = a
        out[i, ..., 1] = b
    return Trajectory(times, out, bound=bound)


def radius_identity_residual(trajectory: Trajectory, w_of_t: Callable) -> float:
    """Max deviation from ``d/dt(a^2+b^2+1) = (a^2+b^2+1)(wy a - wx b)``.

    The derivative is taken by second-order finite differences over the
    trajectory samples (unequal spacing allowed); only interior samples count.
    """
    times = np.asarray(trajectory.times)
    if len(times) < 3:
        raise ValueError("need at least 3 samples")
    a, b = trajectory.a, trajectory.b
    q = a * a + b * b + 1.0
    dq = np.gradient(q, times, axis=0)
    # plain central differences where the spacing is uniform (exact on constants)
    h = np.diff(times)
    even = np.flatnonzero(np.isclose(h[1:], h[:-1], rtol=1e-9, atol=0)) + 1
    shape = (-1,) + (1,) * (q.ndim - 1)
    dq[even] = (q[even + 1] - q[even - 1]) / (times[even + 1] - times[even - 1]).reshape(shape)
    worst = 0.0
    for i in range(1, len(times) - 1):
        w = _as_w_array(w_of_t(times[i]))
        rhs = q[i] * (w[..., 1] * a[i] - w[..., 0] * b[i])
        worst = max(worst, float(np.max(np.abs(dq[i] - rhs))))
    return worst
