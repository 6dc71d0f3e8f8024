"""The full reproduction report behind ``pdmsoliton verify``.

One entry per acceptance criterion. Each entry lists its measurements with
the tolerance and comparison used; an entry passes when all of them do.
Passing ``tolerance`` replaces every upper-bound tolerance (lower bounds of
negative controls are kept) so that over-tight runs report measured values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kdv import (KdVState, conserved_charges, default_ring, evolve,
                  evolve_series, galilean_boost, isospectral_drift, kdv_rhs,
                  miura_intertwine)
from .numgrid import make_uniform_grid
from .pdm_schemes import (BDD, ZK, effective_potential_u, pdm_residual,
                          scheme_shift_check, sech2_problem)
from .solitons import RECORDED_ONLY, evaluate_claim, scheme_catalog, soliton_triples
from .spectral_solver import (count_nodes, default_line, poschl_teller_oracle,
                              reflection_coefficient, spectrum_of)
from .susy import (add_bound_state, annihilation_residual, pairing_check,
                   partner_potentials, soliton_ladder, zero_mode)

SCHEMA_VERSION = 1
Q_VALUES = (0.5, 1.0, 2.0)
# time step for the charge-conservation criterion (two-soliton data needs
# more than the default step to reach 1e-6)
CHARGE_DT = 2.5e-4


@dataclass
class Entry:
    id: str
    name: str
    measurements: list = field(default_factory=list)
    status: str = "verified"
    details: dict = field(default_factory=dict)

    def below(self, label, value, tol):
        self.measurements.append(
            {"label": label, "value": _num(value), "op": "<", "tolerance": tol})

    def above(self, label, value, tol):
        self.measurements.append(
            {"label": label, "value": _num(value), "op": ">", "tolerance": tol,
             "fixed": True})

    def equal(self, label, value, expected):
        self.measurements.append(
            {"label": label, "value": value, "op": "==", "tolerance": expected,
             "fixed": True})

    def finish(self, override=None) -> dict:
        ok = True
        for m in self.measurements:
            if m["op"] == "<" and override is not None:
                m["tolerance"] = override
            m.pop("fixed", None)
            v, tol = m["value"], m["tolerance"]
            if m["op"] == "<":
                good = v is not None and v < tol
            elif m["op"] == ">":
                good = v is not None and v > tol
            else:
                good = v == tol
            m["passed"] = bool(good)
            ok = ok and good
        return {
            "id": self.id,
            "name": self.name,
            "status": self.status,
            "passed": bool(ok),
            "measurements": self.measurements,
            "details": self.details,
        }


def _num(v):
    v = float(v)
    return v if math.isfinite(v) else None


def _sech2(x, q=1.0):
    return 1.0 / np.cosh(q * x) ** 2


def _levels_error(computed, expected):
    if len(computed) != len(expected):
        return math.inf
    return float(np.max(np.abs(np.sort(computed) - np.sort(expected)))) if len(expected) else 0.0


def c01_one_soliton():
    e = Entry("C01", "1-soliton spectrum mu = -q^2")
    u = default_line().sample(lambda x: -2 * _sech2(x))
    ev = spectrum_of(u).eigenvalues
    e.equal("count", len(ev), 1)
    e.below("|mu + 1|", _levels_error(ev, [-1.0]), 1e-4)
    e.details["eigenvalues"] = ev.tolist()
    return e


def c02_two_soliton():
    e = Entry("C02", "2-soliton spectrum {-4, -1}")
    u = default_line().sample(lambda x: -6 * _sech2(x))
    ev = spectrum_of(u).eigenvalues
    e.equal("count", len(ev), 2)
    e.below("max level error", _levels_error(ev, [-4.0, -1.0]), 1e-4)
    e.details["eigenvalues"] = ev.tolist()
    return e


def c03_bdd_spectra():
    e = Entry("C03", "BDD spectra below threshold q^2")
    g = default_line()
    for depth, expected in ((2, [0.0]), (6, [-3.0, 0.0])):
        sp = spectrum_of(g.sample(lambda x: 1 - depth * _sech2(x)))
        e.below(f"q^2(1-{depth}sech^2) level error",
                _levels_error(sp.eigenvalues, expected), 1e-3)
        e.details[f"depth_{depth}"] = {"threshold": sp.threshold,
                                       "eigenvalues": sp.eigenvalues.tolist()}
    return e


def c04_effective_potential():
    e = Entry("C04", "effective-potential identities")
    for q in Q_VALUES:
        g = default_line(q)
        zk = effective_potential_u(sech2_problem(ZK, 1, q), g)
        bdd = effective_potential_u(sech2_problem(BDD, 1, q), g)
        e.below(f"ZK lambda=1 q={q}",
                (zk - g.sample(lambda x: -2 * q * q * _sech2(x, q))).max_abs(), 1e-12)
        e.below(f"BDD lambda=1 q={q}",
                (bdd - g.sample(lambda x: q * q * (1 - 2 * _sech2(x, q)))).max_abs(), 1e-12)
        for lam in (1, 2):
            e.below(f"u_BDD - u_ZK - q^2 lambda={lam} q={q}",
                    scheme_shift_check(g, q, lam), 1e-12)
    return e


def c05_pdm_residual():
    e = Entry("C05", "PDM equation residual for ZK/BDD states")
    g = default_line()
    tr = {t.label: t for t in soliton_triples(1.0)}
    cases = [
        (ZK, 1, "1-soliton", -1.0), (ZK, 2, "2-soliton-a", -4.0), (ZK, 2, "2-soliton-b", -1.0),
        (BDD, 1, "1-soliton", 0.0), (BDD, 2, "2-soliton-a", -3.0), (BDD, 2, "2-soliton-b", 0.0),
    ]
    for scheme, lam, label, mu in cases:
        psi = g.sample(tr[label].psi)
        for lam_v in (lam, -lam - 1):
            r = pdm_residual(psi, sech2_problem(scheme, lam_v, 1.0), g, mu=mu)
            e.below(f"{scheme.name} lambda={lam_v} {label} mu={mu}", r, 1e-5)
    return e


def c06_state_addition():
    e = Entry("C06", "SUSY bound-state addition and ladder")
    g = default_line()
    x = g.x
    win = np.abs(x) <= 10
    one = add_bound_state(g.constant(0.0), -1.0)
    e.below("V2 vs -2sech^2 on |x|<=10",
            np.max(np.abs(one.potential.values + 2 * _sech2(x))[win]), 1e-6)
    ladder = soliton_ladder(2, 1.0, g)
    e.below("rung 2 vs -6sech^2 on |x|<=10",
            np.max(np.abs(ladder[-1].values + 6 * _sech2(x))[win]), 1e-5)
    ev = spectrum_of(ladder[-1]).eigenvalues
    e.below("rung 2 spectrum error", _levels_error(ev, [-4.0, -1.0]), 2e-3)
    return e


def c07_zero_mode():
    e = Entry("C07", "zero mode of V(-) for v = -tanh x")
    g = default_line()
    v = g.sample(lambda x: -np.tanh(x))
    psi0 = zero_mode(v)
    e.below("psi0 vs sech/sqrt2",
            np.max(np.abs(psi0.values - np.sqrt(0.5) / np.cosh(g.x))), 1e-6)
    e.below("(d/dx - v) psi0", annihilation_residual(v, psi0), 1e-6)
    return e


def c08_reflectionless():
    e = Entry("C08", "reflectionless integer wells")
    g = default_line()
    worst = 0.0
    for depth in (2, 6):
        u = g.sample(lambda x: -depth * _sech2(x))
        for k in (0.5, 1.0, 2.0):
            r = reflection_coefficient(u, k)
            e.below(f"|R| depth={depth} k={k}", r.abs_r, 1e-3)
            worst = max(worst, r.unitarity_defect)
    r = reflection_coefficient(g.sample(lambda x: -3 * _sech2(x)), 0.5)
    e.above("|R| depth=3 k=0.5 (non-integral control)", r.abs_r, 0.01)
    worst = max(worst, r.unitarity_defect)
    e.below("max ||R|^2+|T|^2-1|", worst, 1e-6)
    return e


def c09_miura():
    e = Entry("C09", "Miura intertwining identity")
    g = make_uniform_grid(-np.pi, np.pi, 256, "periodic")
    fields = {"0.3 sin x": lambda x: 0.3 * np.sin(x),
              "0.5 sin x + 0.2 cos 2x": lambda x: 0.5 * np.sin(x) + 0.2 * np.cos(2 * x)}
    for name, f in fields.items():
        v = g.sample(f)
        for mu in (0.0, -1.0):
            e.below(f"v={name} mu={mu}", miura_intertwine(v, mu), 1e-8)
    return e


def c10_transport():
    e = Entry("C10", "KdV 1-soliton transport to t = 0.5")
    g = default_ring()
    u0 = g.sample(lambda x: -2 * _sech2(x))
    st = evolve(KdVState(u0), 1e-3, 0.5)
    exact = g.sample(lambda x: -2 * _sech2(x - 2.0))
    e.below("L_inf vs -2sech^2(x-2)", (st.u - exact).max_abs(), 1e-3)
    return e


def c11_isospectral():
    e = Entry("C11", "isospectral KdV flow, 2-soliton data")
    g = default_ring()
    u0 = g.sample(lambda x: -6 * _sech2(x))
    e.below("max eigenvalue drift", isospectral_drift(u0, 0.5, 5), 1e-3)
    return e


def c12_charges():
    e = Entry("C12", "conserved charges over t in [0, 0.5]")
    g = default_ring()
    for depth in (2, 6):
        u0 = g.sample(lambda x: -depth * _sech2(x))
        st = evolve(KdVState(u0), CHARGE_DT, 0.5)
        a, b = conserved_charges(u0), conserved_charges(st.u)
        rel = a.relative_drift(b)
        e.below(f"c1 absolute drift depth={depth}", abs(b.c1 - a.c1), 1e-8)
        e.below(f"c2 relative drift depth={depth}", rel[1], 1e-6)
        e.below(f"c3 relative drift depth={depth}", rel[2], 1e-6)
    e.details["dt"] = CHARGE_DT
    return e


def c13_boost():
    e = Entry("C13", "Galilean boost preserves KdV")
    g = default_ring()
    u0 = g.sample(lambda x: -2 * _sech2(x))
    d = 5e-4
    states = evolve_series(KdVState(u0), 2.5e-4, [0.25 - d, 0.25, 0.25 + d])
    for c in (0.5, -0.25):
        b = [galilean_boost(s.u, c, s.t) for s in states]
        ut = (b[2] - b[0]) / (2 * d)
        e.below(f"KdV residual c={c}", (ut - kdv_rhs(b[1])).max_abs(), 1e-3)
    return e


def c14_catalog():
    e = Entry("C14", "scheme catalog reproduction")
    rows = []
    for q in Q_VALUES:
        for claim in scheme_catalog(q):
            row = evaluate_claim(claim)
            rows.append(row)
            if claim.status != RECORDED_ONLY:
                e.equal(f"{claim.scheme} {claim.soliton} q={q}", row["passed"], True)
    e.details["rows"] = rows
    e.equal("recorded_only rows present",
            sum(r["status"] == RECORDED_ONLY for r in rows) > 0, True)
    return e


def c15_properties():
    e = Entry("C15", "module property suites")
    worst_dual = 0.0
    worst_oracle = 0.0
    worst_double = 0.0
    nodes_ok = True
    pairing_ok = True
    for q in Q_VALUES:
        g = default_line(q)
        for scheme in (ZK, BDD):
            for lam in (1, 2):
                a = effective_potential_u(sech2_problem(scheme, lam, q), g)
                b = effective_potential_u(sech2_problem(scheme, -lam - 1, q), g)
                worst_dual = max(worst_dual, (a - b).max_abs())
        for lam in (1, 2, 3, 4):
            u = g.sample(lambda x: -lam * (lam + 1) * q * q * _sech2(x, q))
            sp = spectrum_of(u)
            err = _levels_error(sp.eigenvalues, poschl_teller_oracle(lam, q))
            worst_oracle = max(worst_oracle, err / (q * q))
            nodes_ok &= all(count_nodes(p) == i for i, p in enumerate(sp.eigenfunctions))
            big = make_uniform_grid(2 * g.xmin, 2 * g.xmax, 2 * (g.n - 1) + 1)
            sp2 = spectrum_of(big.sample(lambda x: -lam * (lam + 1) * q * q * _sech2(x, q)))
            worst_double = max(worst_double, _levels_error(sp2.eigenvalues, sp.eigenvalues))
        for m in (1, 2):
            v = g.sample(lambda x: -m * q * np.tanh(q * x))
            rep = pairing_check(partner_potentials(v))
            pairing_ok &= rep.passed
    e.below("lambda-duality", worst_dual, 1e-12)
    e.below("oracle equivalence lambda<=4 (relative to q^2)", worst_oracle, 1e-3)
    e.below("domain doubling", worst_double, 1e-6)
    e.equal("oscillation theorem", bool(nodes_ok), True)
    e.equal("SUSY pairing", bool(pairing_ok), True)
    return e


CHECKS = (c01_one_soliton, c02_two_soliton, c03_bdd_spectra, c04_effective_potential,
          c05_pdm_residual, c06_state_addition, c07_zero_mode, c08_reflectionless,
          c09_miura, c10_transport, c11_isospectral, c12_charges, c13_boost,
          c14_catalog, c15_properties)


def run_verify(tolerance: float | None = None) -> dict:
    """Run every check; ``report["passed"]`` is the overall verdict."""
    entries = [check().finish(tolerance) for check in CHECKS]
    entries.sort(key=lambda d: d["id"])
    verdict = all(d["passed"] for d in entries if d["status"] == "verified")
    return {"schema": SCHEMA_VERSION, "tolerance_override": tolerance,
            "passed": verdict, "entries": entries}
