"""Uniform grids and central-difference operators.

Fields are sampled on a :class:`Grid` in ``ij`` (row-major, z fastest)
order: scalars have shape ``dims``, vectors ``dims + (3,)``.  Operators
return values on interior points only, i.e. with ``order // 2`` points
trimmed from each face; no one-sided stencils are used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridError

_FIRST = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1.0 / 12), (-1, -8.0 / 12), (1, 8.0 / 12), (2, -1.0 / 12)),
}
_SECOND = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    4: ((-2, -1.0 / 12), (-1, 16.0 / 12), (0, -30.0 / 12), (1, 16.0 / 12), (2, -1.0 / 12)),
}


@dataclass(frozen=True)
class Grid:
    origin: tuple
    h: float
    dims: tuple

    def __post_init__(self):
        origin = tuple(float(v) for v in self.origin)
        dims = tuple(int(d) for d in self.dims)
        if len(origin) != 3 or len(dims) != 3:
            raise GridError("origin and dims need 3 components")
        if not self.h > 0:
            raise GridError("spacing h must be positive")
        if any(d < 0 for d in dims):
            raise GridError("dims must be non-negative")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "h", float(self.h))

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    def axes(self):
        return [o + self.h * np.arange(n) for o, n in zip(self.origin, self.dims)]

    def points(self) -> np.ndarray:
        X, Y, Z = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack((X, Y, Z), axis=-1)

    def interior_points(self, order: int) -> np.ndarray:
        return interior(self.points(), order)

    def refined(self) -> "Grid":
        """Same box with the spacing halved."""
        return Grid(self.origin, self.h / 2, tuple(2 * (d - 1) + 1 for d in self.dims))

    def check_stencil(self, order: int):
        if order not in _FIRST:
            raise GridError(f"unsupported stencil order {order}")
        need = order + 1
        if min(self.dims) < need:
            raise GridError(f"grid dims {self.dims} too small for order-{order} stencils (need >= {need})")

    def describe(self) -> str:
        return "origin={} h={!r} dims={}".format(list(self.origin), self.h, list(self.dims))


def _check(f: np.ndarray, order: int):
    if order not in _FIRST:
        raise GridError(f"unsupported stencil order {order}")
    if min(f.shape[:3]) < order + 1:
        raise GridError(f"array of shape {f.shape[:3]} too small for order-{order} stencils")


def _apply(f: np.ndarray, axis: int, weights, m: int) -> np.ndarray:
    out = None
    n = f.shape[:3]
    for shift, wgt in weights:
        idx = [slice(m, n[d] - m) for d in range(3)]
        idx[axis] = slice(m + shift, n[axis] - m + shift)
        term = wgt * f[tuple(idx)]
        out = term if out is None else out + term
    return out


def fd_derivative(f: np.ndarray, axis: int, h: float, order: int = 2) -> np.ndarray:
    _check(f, order)
    return _apply(f, axis, _FIRST[order], order // 2) / h


def fd_gradient(f: np.ndarray, h: float, order: int = 2) -> np.ndarray:
    """Gradient of a scalar field (or Jacobian ``[..., i, j] = d f_i / d x_j`` of a vector)."""
    return np.stack([fd_derivative(f, ax, h, order) for ax in range(3)], axis=-1)


def fd_divergence(v: np.ndarray, h: float, order: int = 2) -> np.ndarray:
    return sum(fd_derivative(v[..., i], i, h, order) for i in range(3))


def fd_curl(v: np.ndarray, h: float, order: int = 2) -> np.ndarray:
    d = lambda comp, ax: fd_derivative(v[..., comp], ax, h, order)
    return np.stack((d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)), axis=-1)


def fd_laplacian(f: np.ndarray, h: float, order: int = 2) -> np.ndarray:
    _check(f, order)
    m = order // 2
    return sum(_apply(f, ax, _SECOND[order], m) for ax in range(3)) / (h * h)


def interior(f: np.ndarray, order: int) -> np.ndarray:
    """Crop a sampled field to the points where ``order`` stencils are defined."""
    m = order // 2
    n = f.shape[:3]
    return f[m:n[0] - m, m:n[1] - m, m:n[2] - m]
