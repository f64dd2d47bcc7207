"""Closed-form vorticity fields that solve the vector heat equation.

Every mode is self-similar: a spatial eigenfunction of the Laplacian,
``lap w = -q^2 w``, times ``exp(-nu q^2 t)``.  Derivatives are coded by
hand for each mode so that finite differences can be used purely as an
independent check.

Points are arrays with a trailing axis of length 3; results keep the
leading shape, so a single point gives a length-3 vector and a grid of
shape ``(nx, ny, nz, 3)`` gives ``(nx, ny, nz, 3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


def _points(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (3,):
        raise ValueError("points need a trailing axis of length 3")
    return x


def curl_from_jacobian(jac: np.ndarray) -> np.ndarray:
    """Curl from ``jac[..., i, j] = d w_i / d x_j``."""
    return np.stack((
        jac[..., 2, 1] - jac[..., 1, 2],
        jac[..., 0, 2] - jac[..., 2, 0],
        jac[..., 1, 0] - jac[..., 0, 1],
    ), axis=-1)


@dataclass(frozen=True)
class PlaneMode:
    """``w_i = amplitude_i * cos(k.x + phase_i) * exp(-nu |k|^2 t)``.

    The mode is divergence-free exactly when the complex amplitude
    ``amplitude * exp(i phase)`` is orthogonal to ``k``; that is enforced
    unless ``check_divergence=False`` (useful for gradient-field controls).
    ``k = 0`` gives a uniform, steady field.
    """

    k: tuple
    amplitude: tuple
    phase: tuple = (0.0, 0.0, 0.0)
    check_divergence: bool = True

    def __post_init__(self):
        for name in ("k", "amplitude", "phase"):
            vec = tuple(float(v) for v in getattr(self, name))
            if len(vec) != 3:
                raise ValueError(f"{name} must have 3 components")
            object.__setattr__(self, name, vec)
        if self.check_divergence:
            c = np.asarray(self.amplitude) * np.exp(1j * np.asarray(self.phase))
            k = np.asarray(self.k)
            scale = np.linalg.norm(k) * np.linalg.norm(c)
            if abs(np.dot(k, c)) > 1e-12 * max(scale, 1e-300):
                raise DomainError("plane mode is not divergence-free (amplitude not orthogonal to k)")

    @property
    def wavenumber_sq(self) -> float:
        return float(np.dot(self.k, self.k))

    def decay_rate(self, nu: float) -> float:
        return nu * self.wavenumber_sq

    def _theta(self, x):
        return (x @ np.asarray(self.k))[..., None] + np.asarray(self.phase)

    def value(self, x, t, nu):
        return np.asarray(self.amplitude) * np.cos(self._theta(x)) * math.exp(-self.decay_rate(nu) * t)

    def jacobian(self, x, t, nu):
        s = -np.asarray(self.amplitude) * np.sin(self._theta(x)) * math.exp(-self.decay_rate(nu) * t)
        return s[..., :, None] * np.asarray(self.k)[None, :]

    def laplacian(self, x, t, nu):
        return -self.wavenumber_sq * self.value(x, t, nu)

    def time_derivative(self, x, t, nu):
        return -self.decay_rate(nu) * self.value(x, t, nu)


def shear_mode(q: float, amplitude, phase: float = -0.5 * math.pi) -> PlaneMode:
    """Mode varying only in ``z``; the default phase gives ``amplitude * sin(q z)``."""
    amp = tuple(float(v) for v in amplitude)
    if abs(amp[2]) > 0 and q != 0:
        raise DomainError("a z-shear mode cannot have a z component")
    return PlaneMode((0.0, 0.0, float(q)), amp, (phase, phase, phase))


@dataclass(frozen=True)
class BeltramiABC:
    """Arnold-Beltrami-Childress field with ``curl w = kappa w``.

    ``w = (A sin kz + C cos ky, B sin kx + A cos kz, C sin ky + B cos kx)``
    scaled by ``exp(-nu kappa^2 t)``.
    """

    A: float
    B: float
    C: float
    kappa: float
    nu: float

    def __post_init__(self):
        if self.kappa == 0:
            raise DomainError("kappa must be nonzero")
        if not self.nu > 0:
            raise DomainError("nu must be positive")

    @classmethod
    def helical(cls, beta: float, nu: float, A=1.0, B=1.0, C=1.0) -> "BeltramiABC":
        """Field whose velocity ``beta * w`` has ``w`` as its own curl."""
        if beta == 0:
            raise DomainError("beta must be nonzero")
        return cls(A, B, C, 1.0 / beta, nu)

    @property
    def wavenumber_sq(self) -> float:
        return self.kappa * self.kappa

    def decay_rate(self, nu=None) -> float:
        return self.nu * self.kappa * self.kappa

    def value(self, x, t, nu=None):
        k = self.kappa
        X, Y, Z = x[..., 0], x[..., 1], x[..., 2]
        f = math.exp(-self.decay_rate() * t)
        return f * np.stack((
            self.A * np.sin(k * Z) + self.C * np.cos(k * Y),
            self.B * np.sin(k * X) + self.A * np.cos(k * Z),
            self.C * np.sin(k * Y) + self.B * np.cos(k * X),
        ), axis=-1)

    def jacobian(self, x, t, nu=None):
        k = self.kappa
        X, Y, Z = x[..., 0], x[..., 1], x[..., 2]
        f = math.exp(-self.decay_rate() * t) * k
        zero = np.zeros_like(X)
        rows = (
            (zero, -self.C * np.sin(k * Y), self.A * np.cos(k * Z)),
            (self.B * np.cos(k * X), zero, -self.A * np.sin(k * Z)),
            (-self.B * np.sin(k * X), self.C * np.cos(k * Y), zero),
        )
        return f * np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)

    def laplacian(self, x, t, nu=None):
        return -self.wavenumber_sq * self.value(x, t)

    def time_derivative(self, x, t, nu=None):
        return -self.decay_rate() * self.value(x, t)


@dataclass(frozen=True)
class SphericalMode:
    """Scalar Helmholtz solution ``amplitude * sin(k r) / r`` about ``center``.

    Not a vorticity field (it is not solenoidal as a vector); kept as a
    scalar example of the spatial Helmholtz equation.
    """

    k: float
    amplitude: float = 1.0
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.k > 0:
            raise DomainError("k must be positive")

    def value(self, x, t=0.0, nu=0.0):
        r = np.linalg.norm(_points(x) - np.asarray(self.center), axis=-1)
        return spherical_value(self, r) * math.exp(-nu * self.k ** 2 * t)


def spherical_value(mode: SphericalMode, r):
    """``amplitude * sin(k r)/r`` with the series limit used for tiny ``r``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    kr = mode.k * r
    small = r < 1e-8 / mode.k
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(small, mode.k * (1.0 - kr * kr / 6.0), np.sin(kr) / np.where(small, 1.0, r))
    out = mode.amplitude * out
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class VorticityFieldSpec:
    modes: tuple = field(default_factory=tuple)
    nu: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if not self.nu > 0:
            raise DomainError("nu must be positive")
        for m in self.modes:
            if isinstance(m, SphericalMode):
                raise DomainError("spherical modes are scalar and cannot be vorticity modes")
            if isinstance(m, BeltramiABC) and not math.isclose(m.nu, self.nu, rel_tol=1e-14):
                raise DomainError(f"mode viscosity {m.nu} differs from field viscosity {self.nu}")

    @property
    def helical_kappa(self) -> float | None:
        """Common ``kappa`` if every mode is an ABC field with the same one."""
        if not self.modes or not all(isinstance(m, BeltramiABC) for m in self.modes):
            return None
        kappas = {m.kappa for m in self.modes}
        return kappas.pop() if len(kappas) == 1 else None

    @property
    def is_helical(self) -> bool:
        return self.helical_kappa is not None

    def _sum(self, method, x, t):
        x = _points(x)
        if t < 0:
            raise DomainError("t must be non-negative")
        out = None
        for m in self.modes:
            v = getattr(m, method)(x, t, self.nu)
            out = v if out is None else out + v
        return out


def _empty_like(x, trailing):
    return np.zeros(_points(x).shape[:-1] + trailing)


def eval_field(spec: VorticityFieldSpec, x, t: float) -> np.ndarray:
    out = spec._sum("value", x, t)
    return _empty_like(x, (3,)) if out is None else out


def eval_time_derivative(spec: VorticityFieldSpec, x, t: float) -> np.ndarray:
    out = spec._sum("time_derivative", x, t)
    return _empty_like(x, (3,)) if out is None else out


def eval_laplacian(spec: VorticityFieldSpec, x, t: float) -> np.ndarray:
    out = spec._sum("laplacian", x, t)
    return _empty_like(x, (3,)) if out is None else out


def eval_jacobian(spec: VorticityFieldSpec, x, t: float) -> np.ndarray:
    out = spec._sum("jacobian", x, t)
    return _empty_like(x, (3, 3)) if out is None else out


def eval_curl(spec: VorticityFieldSpec, x, t: float) -> np.ndarray:
    return curl_from_jacobian(eval_jacobian(spec, x, t))


def eval_divergence(spec: VorticityFieldSpec, x, t: float) -> np.ndarray:
    jac = eval_jacobian(spec, x, t)
    return jac[..., 0, 0] + jac[..., 1, 1] + jac[..., 2, 2]
