"""Mass profiles, von Roos ordering schemes and the constant-mass reduction.

Units are hbar = 2 m0 = 1. The mass is m(x) = m0 M(x) with M dimensionless.
For a free particle with V = V0 = epsilon - lambda(lambda+1) q^2 the
position-dependent-mass equation becomes ``(-d^2/dx^2 + u) psi = 0`` with ::

    u = [3/4 - rho] (M'/M)^2 + (beta/2) M''/M - lambda(lambda+1) q^2 M
    rho = alpha (alpha + beta + 1) + beta + 1

Every quantity involving M is evaluated from closed forms; the mass is never
differentiated numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numgrid import Grid, SampledField, derivative, interior


@dataclass(frozen=True)
class AmbiguityScheme:
    name: str
    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("ambiguity parameters must be finite")


ZK = AmbiguityScheme("ZK", -0.5, 0.0)
BDD = AmbiguityScheme("BDD", 0.0, -1.0)
# Bastard and Li-Kuhn parameters are chosen to reproduce the published u-forms.
BASTARD = AmbiguityScheme("Bastard", -1.0, 0.0)
LI_KUHN = AmbiguityScheme("LiKuhn", 0.0, -0.5)

SCHEMES = {s.name.lower(): s for s in (ZK, BDD, BASTARD, LI_KUHN)}


def get_scheme(name: str, alpha: float | None = None,
               beta: float | None = None) -> AmbiguityScheme:
    """Look up a scheme by case-insensitive name.

    ``"custom"`` requires explicit ``alpha`` and ``beta``.
    """
    key = name.strip().lower().replace("-", "").replace("_", "")
    if key == "custom":
        if alpha is None or beta is None:
            raise ValueError("custom scheme needs both alpha and beta")
        return AmbiguityScheme("custom", float(alpha), float(beta))
    try:
        return SCHEMES[key]
    except KeyError:
        raise ValueError(
            f"unknown scheme {name!r}; choose from "
            f"{', '.join(sorted(SCHEMES))} or custom") from None


def ordering_coefficient(scheme: AmbiguityScheme) -> float:
    """rho = alpha(alpha + beta + 1) + beta + 1, exact for dyadic inputs."""
    a = Fraction(scheme.alpha)
    b = Fraction(scheme.beta)
    return float(a * (a + b + 1) + b + 1)


SECH_SQUARED = "sech_squared"
CONSTANT = "constant"


@dataclass(frozen=True)
class MassProfile:
    """Dimensionless mass M(x): ``sech^2(q x)`` or a positive constant."""

    kind: str = SECH_SQUARED
    q: float = 1.0
    m_const: float = 1.0

    def __post_init__(self):
        if self.kind not in (SECH_SQUARED, CONSTANT):
            raise ValueError(f"unknown mass profile {self.kind!r}")
        if self.kind == SECH_SQUARED and not self.q > 0:
            raise ValueError("sech^2 mass needs q > 0")
        if self.kind == CONSTANT and not self.m_const > 0:
            raise ValueError("constant mass must be positive")

    def evaluate(self, x):
        """Return ``(M, M', M'')`` at the points ``x``."""
        x = np.asarray(x, dtype=float)
        if self.kind == CONSTANT:
            m = np.full_like(x, self.m_const)
            return m, np.zeros_like(x), np.zeros_like(x)
        q = self.q
        s2 = 1.0 / np.cosh(q * x) ** 2
        th = np.tanh(q * x)
        return s2, -2.0 * q * s2 * th, s2 * (4.0 * q * q - 6.0 * q * q * s2)


@dataclass(frozen=True)
class PdmProblem:
    """Free-particle PDM problem with V0 = epsilon - lambda(lambda+1) q^2."""

    scheme: AmbiguityScheme
    mass: MassProfile
    lam: float
    q: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not self.q > 0:
            raise ValueError("q must be positive")
        if not (math.isfinite(self.lam) and math.isfinite(self.epsilon)):
            raise ValueError("lambda and epsilon must be finite")

    @property
    def coupling(self) -> float:
        """lambda(lambda+1), the only combination of lambda that matters."""
        return self.lam * (self.lam + 1.0)

    @property
    def v0(self) -> float:
        return self.epsilon - self.coupling * self.q ** 2


def sech2_problem(scheme: AmbiguityScheme, lam: float, q: float,
                  epsilon: float = 0.0) -> PdmProblem:
    """Problem with mass sech^2(q x), sharing q between mass and potential."""
    return PdmProblem(scheme, MassProfile(SECH_SQUARED, q=q), lam, q, epsilon)


def lambda_from_coupling(coupling: float) -> float:
    """Non-negative root of lambda(lambda+1) = coupling."""
    return 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * coupling))


def mass_fields(mass: MassProfile, grid: Grid):
    """Closed-form ``(M, M', M'')`` sampled on ``grid``."""
    m, mp, mpp = mass.evaluate(grid.x)
    return SampledField(grid, m), SampledField(grid, mp), SampledField(grid, mpp)


def _positive_mass(problem: PdmProblem, grid: Grid):
    m, mp, mpp = problem.mass.evaluate(grid.x)
    if np.any(m <= 0):
        raise ValueError("mass must be positive on the whole grid")
    return m, mp, mpp


def effective_potential_u(problem: PdmProblem, grid: Grid) -> SampledField:
    """Potential of the reduced constant-mass equation."""
    m, mp, mpp = _positive_mass(problem, grid)
    rho = ordering_coefficient(problem.scheme)
    u = ((0.75 - rho) * (mp / m) ** 2
         + 0.5 * problem.scheme.beta * mpp / m
         - problem.coupling * m * problem.q ** 2)
    return SampledField(grid, u)


def asymptotic_u(problem: PdmProblem) -> float:
    """Closed-form |x| -> inf limit of u for a sech^2 mass."""
    if problem.mass.kind == CONSTANT:
        return -problem.coupling * problem.q ** 2 * problem.mass.m_const
    qm = problem.mass.q
    rho = ordering_coefficient(problem.scheme)
    return 4.0 * qm ** 2 * (0.75 - rho) + 2.0 * qm ** 2 * problem.scheme.beta


def v_eff(problem: PdmProblem, V: SampledField, grid: Grid) -> SampledField:
    """V + (beta+1)/2 M''/M^2 - rho M'^2/M^3."""
    m, mp, mpp = _positive_mass(problem, grid)
    rho = ordering_coefficient(problem.scheme)
    beta = problem.scheme.beta
    return SampledField(
        grid, V.values + 0.5 * (beta + 1.0) * mpp / m ** 2 - rho * mp ** 2 / m ** 3)


def pdm_operator(psi: SampledField, problem: PdmProblem) -> SampledField:
    """Apply the full PDM operator with V = V0 to ``psi``.

    Returns ``[-d^2 + 3/4 M'^2/M^2 - 1/2 M''/M + M (V_eff - epsilon)] psi``.
    """
    grid = psi.grid
    m, mp, mpp = _positive_mass(problem, grid)
    veff = v_eff(problem, grid.constant(problem.v0), grid).values
    coeff = 0.75 * mp ** 2 / m ** 2 - 0.5 * mpp / m + m * (veff - problem.epsilon)
    return -derivative(psi, 2) + coeff * psi.values


def pdm_residual(psi: SampledField, problem: PdmProblem, grid: Grid | None = None,
                 mu: float = 0.0) -> float:
    """Max interior residual of the PDM equation applied to ``psi``.

    ``mu`` is the spectral level carried by the reduced equation; with
    ``mu=0`` this is the PDM equation as written, with the energy term absent.
    Three points are dropped at each edge of a line grid.
    """
    if grid is not None and grid != psi.grid:
        raise ValueError("psi is not sampled on the given grid")
    r = pdm_operator(psi, problem).values - mu * psi.values
    return float(np.max(np.abs(r[interior(psi.grid)])))


def scheme_shift_check(grid: Grid, q: float, lam: float) -> float:
    """Max deviation of u_BDD - u_ZK from q^2 for a sech^2(q x) mass."""
    u_bdd = effective_potential_u(sech2_problem(BDD, lam, q), grid)
    u_zk = effective_potential_u(sech2_problem(ZK, lam, q), grid)
    return float(np.max(np.abs(u_bdd.values - u_zk.values - q * q)))
