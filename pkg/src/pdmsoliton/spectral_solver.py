"""Bound states and scattering for ``(-d^2/dx^2 + u) psi = mu psi``.

Bound states come from the symmetric tridiagonal second-difference matrix on
the interior of a Dirichlet line (bisection plus inverse iteration in LAPACK).
Each eigenvalue then receives the leading O(h^2) correction
``(h^2/12) * integral((D2 psi)^2)``, which removes the dominant truncation
error of the three-point Laplacian.

Scattering amplitudes are obtained by integrating the stationary equation
from right to left starting from a pure transmitted wave.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .numgrid import DIRICHLET, Grid, SampledField, integrate, make_uniform_grid

EDGE_FRACTION = 0.05
# states closer to the threshold than this are treated as continuum
THRESHOLD_MARGIN = 1e-9


@dataclass(frozen=True)
class Hamiltonian1D:
    """Tridiagonal ``-D2 + u`` on the interior points of a Dirichlet line."""

    grid: Grid
    potential: SampledField
    diagonal: np.ndarray = field(repr=False)
    offdiagonal: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenfunctions: tuple
    threshold: float

    def __len__(self):
        return len(self.eigenvalues)

    def to_json_dict(self, eigenfunction_files=None) -> dict:
        """JSON payload; eigenfunctions inline unless file names are given."""
        if eigenfunction_files is None:
            efs = [psi.values.tolist() for psi in self.eigenfunctions]
        else:
            efs = list(eigenfunction_files)
        return {
            "threshold": self.threshold,
            "eigenvalues": [float(e) for e in self.eigenvalues],
            "eigenfunctions": efs,
        }


def assemble(u: SampledField) -> Hamiltonian1D:
    grid = u.grid
    if grid.kind != DIRICHLET:
        raise ValueError("bound-state problems need a dirichlet_line grid")
    h2 = grid.h ** 2
    inner = u.values[1:-1]
    diag = 2.0 / h2 + inner
    off = np.full(len(inner) - 1, -1.0 / h2)
    return Hamiltonian1D(grid, u, diag, off)


def continuum_threshold(u: SampledField) -> float:
    """Mean of ``u`` over the outer 5% of samples at each edge."""
    m = max(1, int(round(EDGE_FRACTION * u.grid.n)))
    return float(np.mean(np.concatenate([u.values[:m], u.values[-m:]])))


def _orient(psi: np.ndarray) -> np.ndarray:
    # leftmost significant lobe positive
    big = np.flatnonzero(np.abs(psi) > 1e-3 * np.max(np.abs(psi)))
    return -psi if psi[big[0]] < 0 else psi


def bound_states(H: Hamiltonian1D, threshold: float | None = None,
                 correct: bool = True) -> Spectrum:
    """All eigenpairs strictly below ``threshold``.

    ``threshold`` defaults to :func:`continuum_threshold` of the potential.
    With ``correct=False`` the raw eigenvalues of the tridiagonal matrix are
    returned.
    """
    if threshold is None:
        threshold = continuum_threshold(H.potential)
    if not math.isfinite(threshold):
        raise ValueError("threshold must be finite")
    upper = threshold - THRESHOLD_MARGIN
    # Gershgorin lower bound
    lower = float(np.min(H.diagonal)) - 2.0 * float(np.abs(H.offdiagonal).max()) - 1.0
    if upper <= lower:
        return Spectrum(np.zeros(0), (), float(threshold))
    w, v = eigh_tridiagonal(H.diagonal, H.offdiagonal, select="v",
                            select_range=(lower, upper), tol=1e-10)
    grid = H.grid
    h = grid.h
    values, states = [], []
    for j in np.argsort(w):
        psi = np.zeros(grid.n)
        psi[1:-1] = v[:, j]
        psi /= math.sqrt(np.trapezoid(psi ** 2, dx=h))
        mu = float(w[j])
        if correct:
            d2 = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / h ** 2
            mu += h ** 2 / 12.0 * float(np.sum(d2 ** 2) * h)
        if mu >= upper:
            continue
        values.append(mu)
        states.append(SampledField(grid, _orient(psi)))
    return Spectrum(np.array(values), tuple(states), float(threshold))


def spectrum_of(u: SampledField, threshold: float | None = None) -> Spectrum:
    return bound_states(assemble(u), threshold)


def poschl_teller_oracle(lam: float, q: float, shift: float = 0.0) -> list[float]:
    """Closed-form levels of ``-lam(lam+1) q^2 sech^2(q x) + shift``."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    if not q > 0:
        raise ValueError("q must be positive")
    levels = []
    n = 0
    while n < lam:
        levels.append(shift - (lam - n) ** 2 * q * q)
        n += 1
    return levels


def poschl_teller_reflection(coupling: float, q: float, k: float) -> float:
    """Exact |R| for the well ``-coupling q^2 sech^2(q x)`` at wavenumber k."""
    c = math.cos(0.5 * math.pi * math.sqrt(1.0 + 4.0 * coupling)) ** 2
    s = math.sinh(math.pi * k / q) ** 2
    return math.sqrt(c / (s + c))


@dataclass(frozen=True)
class ScatteringResult:
    k: float
    r: complex
    t: complex

    @property
    def abs_r(self) -> float:
        return abs(self.r)

    @property
    def abs_t(self) -> float:
        return abs(self.t)

    @property
    def unitarity_defect(self) -> float:
        return abs(abs(self.r) ** 2 + abs(self.t) ** 2 - 1.0)


def reflection_coefficient(u: SampledField, k: float, rtol: float = 1e-11,
                           edge_tol: float = 1e-6) -> ScatteringResult:
    """Reflection and transmission amplitudes at asymptotic wavenumber ``k``.

    The energy is ``u_inf + k^2`` where ``u_inf`` is the common edge value of
    ``u``. A transmitted wave ``exp(ikx)`` is imposed at the right edge and the
    solution integrated to the left edge, where it is split into incident and
    reflected plane waves.
    """
    if not k > 0:
        raise ValueError("need k > 0 (energy above the asymptote)")
    vals = u.values
    u_inf = 0.5 * (vals[0] + vals[-1])
    if abs(vals[0] - u_inf) > edge_tol:
        raise ValueError("potential has unequal asymptotes at the two edges")
    x = u.x
    xl, xr = float(x[0]), float(x[-1])
    energy = u_inf + k * k
    spline = CubicSpline(x, vals)

    def rhs(xx, y):
        return [y[1], (spline(xx) - energy) * y[0]]

    y0 = np.array([np.exp(1j * k * xr), 1j * k * np.exp(1j * k * xr)])
    sol = solve_ivp(rhs, (xr, xl), y0, method="DOP853", rtol=rtol,
                    atol=rtol * 1e-2, max_step=max(u.grid.h * 10, 0.05))
    psi, dpsi = sol.y[0, -1], sol.y[1, -1]
    a = (1j * k * psi + dpsi) / (2j * k) * np.exp(-1j * k * xl)
    b = (1j * k * psi - dpsi) / (2j * k) * np.exp(1j * k * xl)
    return ScatteringResult(float(k), complex(b / a), complex(1.0 / a))


def count_nodes(psi: SampledField | np.ndarray, floor: float = 1e-12) -> int:
    """Strict sign changes, ignoring samples with |psi| below ``floor``."""
    vals = np.asarray(psi, dtype=float)
    s = np.sign(vals[np.abs(vals) >= floor])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def first_node(psi: SampledField, floor: float = 1e-12) -> float | None:
    """Abscissa of the first strict sign change, or ``None``."""
    vals = psi.values
    idx = np.flatnonzero(np.abs(vals) >= floor)
    s = np.sign(vals[idx])
    change = np.flatnonzero(s[1:] != s[:-1])
    if len(change) == 0:
        return None
    i, j = idx[change[0]], idx[change[0] + 1]
    return float(0.5 * (psi.x[i] + psi.x[j]))


def default_line(q: float = 1.0, half_width: float = 20.0, n: int = 4001) -> Grid:
    """Dirichlet line of half-width ``half_width / q``."""
    return make_uniform_grid(-half_width / q, half_width / q, n)


def norm(psi: SampledField) -> float:
    return math.sqrt(integrate(psi * psi))
