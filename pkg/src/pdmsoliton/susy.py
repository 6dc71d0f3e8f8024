"""Riccati/Cole-Hopf machinery, SUSY partners and bound-state addition.

Sign convention: ``v = psi'/psi`` throughout, so the usual superpotential is
``W = -v``. The partner potentials are ``V(+) = v^2 - v'`` and
``V(-) = v^2 + v'``; the zero mode ``exp(int v)`` belongs to ``V(-)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .exceptions import NodeError, NormalizationError
from .numgrid import (Grid, SampledField, derivative, integrate, interior,
                      require_same_grid)
from .spectral_solver import (continuum_threshold, count_nodes, first_node,
                              spectrum_of)

# v is formed only where |psi| exceeds this fraction of max|psi|
WINDOW_FLOOR = 1e-12
PAIRING_TOL = 2e-3


@dataclass(frozen=True)
class SuperPotential:
    v: SampledField
    mu: float = 0.0

    @property
    def grid(self) -> Grid:
        return self.v.grid


@dataclass(frozen=True)
class SusyPair:
    v_plus: SampledField
    v_minus: SampledField
    mu_shift: float = 0.0


def cole_hopf(psi: SampledField) -> SampledField:
    """``v = psi'/psi`` for a nodeless ``psi``.

    Outside the window where ``|psi| > 1e-12 max|psi|`` the field is
    continued by its value at the nearest window edge.
    """
    if count_nodes(psi) > 0:
        loc = first_node(psi)
        raise NodeError(f"psi has a node near x = {loc:.6g}", loc)
    vals = psi.values
    dpsi = derivative(psi, 1).values
    ok = np.abs(vals) > WINDOW_FLOOR * np.max(np.abs(vals))
    idx = np.flatnonzero(ok)
    if len(idx) == 0:
        raise ValueError("psi vanishes identically")
    v = np.zeros_like(vals)
    v[ok] = dpsi[ok] / vals[ok]
    v[:idx[0]] = v[idx[0]]
    v[idx[-1] + 1:] = v[idx[-1]]
    return SampledField(psi.grid, v)


def riccati_residual(v: SampledField, u: SampledField, mu: float,
                     sign: int = 1) -> float:
    """Max interior ``|v^2 + sign*v' + mu - u|``.

    ``sign=-1`` checks the second Miura branch ``u = v^2 - v' + mu``.
    """
    grid = require_same_grid(v, u)
    r = v.values ** 2 + sign * derivative(v, 1).values + mu - u.values
    return float(np.max(np.abs(r[interior(grid)])))


def partner_potentials(v: SampledField, mu: float = 0.0) -> SusyPair:
    dv = derivative(v, 1)
    v2 = v * v
    return SusyPair(v2 - dv, v2 + dv, mu)


def _cumulative_integral(f: SampledField, start: int) -> np.ndarray:
    """Integral of ``f`` from ``x[start]`` to every grid point.

    Trapezoid sums with the Euler-Maclaurin end correction, which makes the
    rule fourth-order accurate for smooth ``f``.
    """
    h = f.grid.h
    y = f.values
    trap = np.concatenate([[0.0], np.cumsum(0.5 * h * (y[1:] + y[:-1]))])
    df = derivative(f, 1).values
    out = trap - h * h / 12.0 * (df - df[0])
    return out - out[start]


def zero_mode(v: SampledField) -> SampledField:
    """Normalized ``psi0 ~ exp(int v dx)``, annihilated by ``d/dx - v``."""
    vals = v.values
    if not (vals[0] > 0 and vals[-1] < 0):
        raise NormalizationError(
            "zero mode not normalizable: need v > 0 on the left and v < 0 on the right")
    mid = v.grid.n // 2
    log_psi = _cumulative_integral(v, mid)
    log_psi -= log_psi.max()
    psi = SampledField(v.grid, np.exp(log_psi))
    return psi / math.sqrt(integrate(psi * psi))


def annihilation_residual(v: SampledField, psi0: SampledField) -> float:
    """Max interior ``|psi0' - v psi0|``."""
    grid = require_same_grid(v, psi0)
    r = derivative(psi0, 1).values - v.values * psi0.values
    return float(np.max(np.abs(r[interior(grid)])))


def _center_index(grid: Grid) -> int:
    i = int(np.argmin(np.abs(grid.x)))
    if abs(grid.x[i]) > 1e-9 * grid.h or abs(grid.xmin + grid.xmax) > 1e-9 * grid.h:
        raise ValueError("bound-state addition needs a grid symmetric about x = 0")
    return i


def _log_derivative(V1: SampledField, mu: float) -> np.ndarray:
    """``w = phi'/phi`` for the even solution of ``-phi'' + V1 phi = mu phi``.

    Integrates ``w' = V1 - mu - w^2`` outward from ``w(0) = 0`` with RK4 on the
    grid spacing; V1 at half steps comes from a cubic spline. Both outward
    directions are stable since phi grows there.
    """
    grid = V1.grid
    x = grid.x
    h = grid.h
    c = _center_index(grid)
    spline = CubicSpline(x, V1.values)
    g = V1.values - mu
    g_right = spline(x + h / 2) - mu
    g_left = spline(x - h / 2) - mu
    w = np.zeros(grid.n)
    for step, indices in ((h, range(c, grid.n - 1)), (-h, range(c, 0, -1))):
        half = g_right if step > 0 else g_left
        for i in indices:
            j = i + (1 if step > 0 else -1)
            wi = w[i]
            k1 = g[i] - wi * wi
            t = wi + step / 2 * k1
            k2 = half[i] - t * t
            t = wi + step / 2 * k2
            k3 = half[i] - t * t
            t = wi + step * k3
            k4 = g[j] - t * t
            w[j] = wi + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            if not np.isfinite(w[j]) or abs(w[j]) > 1e6:
                raise NodeError(
                    f"phi develops a node near x = {x[j]:.6g}; "
                    f"mu = {mu} is not below the spectrum", float(x[j]))
    return w


@dataclass(frozen=True)
class AddedState:
    potential: SampledField
    v: SampledField
    mu: float


def add_bound_state(V1: SampledField, mu_new: float) -> AddedState:
    """Insert a bound state at ``mu_new`` below the spectrum of even ``V1``.

    Sets ``V(+) = V1 - mu_new = v^2 - v'`` with nodeless ``v = -phi'/phi`` and
    returns ``V2 = V(-) + mu_new = 2 v^2 - V1 + 2 mu_new``, whose spectrum is
    that of ``V1`` plus ``mu_new``.
    """
    threshold = continuum_threshold(V1)
    if not mu_new < threshold:
        raise ValueError(f"mu_new = {mu_new} is not below the continuum {threshold}")
    spec = spectrum_of(V1, threshold)
    if len(spec) and not mu_new < spec.eigenvalues[0]:
        raise ValueError(
            f"mu_new = {mu_new} is not below the lowest level {spec.eigenvalues[0]}")
    w = _log_derivative(V1, mu_new)
    v = SampledField(V1.grid, -w)
    V2 = SampledField(V1.grid, 2.0 * w * w - V1.values + 2.0 * mu_new)
    return AddedState(V2, v, float(mu_new))


def soliton_ladder(N: int, q: float, grid: Grid) -> list[SampledField]:
    """Potentials ``-k(k+1) q^2 sech^2(q x)`` for k = 1..N by repeated addition.

    The new level at step k is ``-k^2 q^2``, always the deepest one.
    """
    if N < 1:
        raise ValueError("need at least one level")
    V = grid.constant(0.0)
    out = []
    for k in range(1, N + 1):
        V = add_bound_state(V, -(k * q) ** 2).potential
        out.append(V)
    return out


@dataclass(frozen=True)
class PairingReport:
    plus: list
    minus: list
    matched: bool
    extra_state: float | None

    @property
    def passed(self) -> bool:
        return self.matched and self.extra_state is not None

    def to_json_dict(self) -> dict:
        return {"plus": self.plus, "minus": self.minus,
                "matched": self.matched, "extra_state": self.extra_state}


def pairing_check(pair: SusyPair, threshold: float | None = None,
                  tol: float = PAIRING_TOL) -> PairingReport:
    """Compare the bound spectra of the two partners.

    Unbroken SUSY means ``V(-)`` has one more level, at zero, and the rest
    coincide with the levels of ``V(+)``.
    """
    plus = [float(e) for e in spectrum_of(pair.v_plus, threshold).eigenvalues]
    minus = [float(e) for e in spectrum_of(pair.v_minus, threshold).eigenvalues]
    extra = None
    rest = minus
    if minus and abs(minus[0]) < tol:
        extra, rest = minus[0], minus[1:]
    matched = len(rest) == len(plus) and all(
        abs(a - b) < tol for a, b in zip(plus, rest))
    return PairingReport(plus, minus, bool(matched), extra)
