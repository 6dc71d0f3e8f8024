"""Uniform 1-D grids, sampled fields, quadrature and differentiation.

Two grid flavours are supported. A ``dirichlet_line`` grid includes both
endpoints and is used for bound-state and residual work; a ``periodic`` grid
excludes the right endpoint so that FFT collocation is exact.

>>> g = make_uniform_grid(-20.0, 20.0, 4001)
>>> round(g.h, 12)
0.01
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .exceptions import GridMismatchError

DIRICHLET = "dirichlet_line"
PERIODIC = "periodic"
GRID_KINDS = (DIRICHLET, PERIODIC)

# Accuracy order of the interior central stencils.
_FD_ACCURACY = 4
_SPECTRAL_FLOOR = 1e-14


@dataclass(frozen=True)
class Grid:
    """Uniform sampling of ``[xmin, xmax]`` (``[xmin, xmax)`` when periodic)."""

    xmin: float
    xmax: float
    n: int
    kind: str = DIRICHLET

    def __post_init__(self):
        if not (math.isfinite(self.xmin) and math.isfinite(self.xmax)):
            raise ValueError("grid bounds must be finite")
        if not self.xmax > self.xmin:
            raise ValueError(f"degenerate domain [{self.xmin}, {self.xmax}]")
        if int(self.n) != self.n or self.n < 8:
            raise ValueError(f"need an integer n >= 8, got {self.n}")
        if self.kind not in GRID_KINDS:
            raise ValueError(f"unknown grid kind {self.kind!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def periodic(self) -> bool:
        return self.kind == PERIODIC

    @property
    def h(self) -> float:
        if self.periodic:
            return (self.xmax - self.xmin) / self.n
        return (self.xmax - self.xmin) / (self.n - 1)

    @property
    def length(self) -> float:
        return self.xmax - self.xmin

    @cached_property
    def x(self) -> np.ndarray:
        x = self.xmin + self.h * np.arange(self.n)
        x.setflags(write=False)
        return x

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Angular FFT wavenumbers in numpy's ordering (periodic grids only)."""
        if not self.periodic:
            raise ValueError("wavenumbers are defined for periodic grids only")
        k = 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.h)
        k.setflags(write=False)
        return k

    def sample(self, func: Callable[[np.ndarray], np.ndarray]) -> "SampledField":
        """Evaluate ``func`` at the abscissae."""
        values = np.broadcast_to(np.asarray(func(self.x), dtype=float), (self.n,))
        return SampledField(self, values)

    def constant(self, value: float) -> "SampledField":
        return SampledField(self, np.full(self.n, float(value)))


def make_uniform_grid(xmin: float, xmax: float, n: int, kind: str = DIRICHLET) -> Grid:
    """Build a :class:`Grid`, validating bounds, size and kind."""
    return Grid(float(xmin), float(xmax), n, kind)


@dataclass(frozen=True, eq=False)
class SampledField:
    """Real samples of a function on a grid, one value per grid point.

    Supports elementwise arithmetic with scalars and with fields on the same
    grid. Values are stored read-only.
    """

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def __len__(self):
        return self.grid.n

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def with_values(self, values) -> "SampledField":
        return SampledField(self.grid, values)

    def _other(self, other):
        if isinstance(other, SampledField):
            require_same_grid(self, other)
            return other.values
        return other

    def __add__(self, other):
        return self.with_values(self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.with_values(self.values - self._other(other))

    def __rsub__(self, other):
        return self.with_values(self._other(other) - self.values)

    def __mul__(self, other):
        return self.with_values(self.values * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.with_values(self.values / self._other(other))

    def __neg__(self):
        return self.with_values(-self.values)

    def __pow__(self, p):
        return self.with_values(self.values ** p)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def to_csv(self) -> str:
        """Serialize as ``x,value`` rows with 17 significant digits."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "value"])
        for xi, vi in zip(self.x, self.values):
            writer.writerow([f"{xi:.17g}", f"{vi:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, kind: str = DIRICHLET) -> "SampledField":
        """Parse CSV written by :meth:`to_csv`; the grid is rebuilt from ``x``.

        For periodic grids the right endpoint is inferred as ``x[-1] + h``.
        """
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0]] != ["x", "value"]:
            raise ValueError("CSV must start with header 'x,value'")
        data = np.array([[float(a), float(b)] for a, b in rows[1:]], dtype=float)
        if data.ndim != 2 or len(data) < 8:
            raise ValueError("CSV needs at least 8 data rows")
        x = data[:, 0]
        h = (x[-1] - x[0]) / (len(x) - 1)
        if not np.allclose(np.diff(x), h, rtol=1e-9, atol=1e-12 * max(1.0, abs(h))):
            raise ValueError("CSV abscissae are not uniformly spaced")
        xmax = x[-1] + h if kind == PERIODIC else x[-1]
        grid = Grid(float(x[0]), float(xmax), len(x), kind)
        return cls(grid, data[:, 1])


def require_same_grid(*fields: SampledField) -> Grid:
    grid = fields[0].grid
    for f in fields[1:]:
        if f.grid != grid:
            raise GridMismatchError(f"grid mismatch: {grid} vs {f.grid}")
    return grid


def fd_weights(offsets, order: int) -> np.ndarray:
    """Finite-difference weights at 0 for unit-spaced ``offsets`` (Fornberg)."""
    z = np.asarray(offsets, dtype=float)
    n = len(z)
    c = np.zeros((n, order + 1))
    c1, c4 = 1.0, z[0]
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2, c5, c4 = 1.0, c4, z[i]
        for j in range(i):
            c3 = z[i] - z[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (z[i] * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = z[i] * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def _stencil_width(order: int) -> int:
    # smallest symmetric stencil that is _FD_ACCURACY-order accurate
    return 2 * ((order + _FD_ACCURACY - 1) // 2) + 1


def derivative(f: SampledField, order: int) -> SampledField:
    """Fourth-order finite-difference derivative of order 1, 2 or 3.

    Periodic grids wrap around. On ``dirichlet_line`` grids the points within
    half a stencil of either edge use one-sided stencils of the same width,
    which lowers the local order by at most one for ``order=2``.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"derivative order must be 1, 2 or 3, got {order}")
    grid = f.grid
    y = f.values
    width = _stencil_width(order)
    half = width // 2
    offsets = np.arange(-half, half + 1)
    w = fd_weights(offsets, order)
    n = grid.n
    if grid.periodic:
        out = sum(wk * np.roll(y, -int(o)) for wk, o in zip(w, offsets))
    else:
        if n < width:
            raise ValueError("grid too small for the stencil")
        out = np.zeros(n)
        out[half:n - half] = sum(
            wk * y[half + o:n - half + o] for wk, o in zip(w, offsets))
        for i in list(range(half)) + list(range(n - half, n)):
            start = min(max(i - half, 0), n - width)
            local = np.arange(start, start + width)
            out[i] = fd_weights(local - i, order) @ y[local]
    return SampledField(grid, out / grid.h ** order)


def spectral_derivative(f: SampledField, order: int) -> SampledField:
    """Fourier-collocation derivative on a periodic grid.

    The Nyquist mode is dropped for odd orders so the result stays real.
    Coefficients below ``1e-14`` of the largest one are treated as round-off
    and zeroed, since high orders would otherwise amplify them by ``k**order``.
    """
    grid = f.grid
    if not grid.periodic:
        raise ValueError("spectral derivatives need a periodic grid")
    if order < 0:
        raise ValueError("order must be non-negative")
    k = grid.wavenumbers
    mult = (1j * k) ** order
    if order % 2 == 1 and grid.n % 2 == 0:
        mult = mult.copy()
        mult[grid.n // 2] = 0.0
    fh = np.fft.fft(f.values)
    if order > 0:
        fh[np.abs(fh) < _SPECTRAL_FLOOR * np.max(np.abs(fh))] = 0.0
    return SampledField(grid, np.fft.ifft(mult * fh).real)


def integrate(f: SampledField) -> float:
    """Trapezoid rule on a line, rectangle rule on a ring."""
    if f.grid.periodic:
        return float(np.sum(f.values) * f.grid.h)
    return float(np.trapezoid(f.values, dx=f.grid.h))


def interior(grid: Grid, margin: int = 3) -> slice:
    """Slice dropping ``margin`` points at each edge of a line grid."""
    if grid.periodic:
        return slice(None)
    return slice(margin, grid.n - margin)
