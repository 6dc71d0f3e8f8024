"""Ordering ambiguity and the reduced potential.

A particle with mass m(x) = sech^2(qx) and a constant PDM potential is reduced
to an ordinary Schroedinger problem with potential u(x). Different operator
orderings (alpha, beta) give different u. Here we print u at the origin and
far away for each named ordering, and show that ZK and BDD differ by exactly q^2.
"""

import numpy as np

from pdmsoliton.numgrid import make_uniform_grid
from pdmsoliton.pdm_schemes import BDD, SCHEMES, ZK, effective_potential_u, sech2_problem

q = 1.0
grid = make_uniform_grid(-20, 20, 4001)
centre = grid.n // 2

print(f"{'scheme':>8} {'alpha':>6} {'beta':>6} {'lambda':>6} {'u(0)':>10} {'u(edge)':>10}")
for name, scheme in SCHEMES.items():
    for lam in (1, 2):
        u = effective_potential_u(sech2_problem(scheme, lam, q), grid)
        print(f"{name:>8} {scheme.alpha:6.2f} {scheme.beta:6.2f} {lam:6d} "
              f"{u.values[centre]:10.5f} {u.values[0]:10.5f}")

# The BDD potential is the ZK one lifted by q^2, so both share eigenfunctions.
for lam in (1, 2):
    zk = effective_potential_u(sech2_problem(ZK, lam, q), grid)
    bdd = effective_potential_u(sech2_problem(BDD, lam, q), grid)
    print(f"lambda={lam}: max |u_BDD - u_ZK - q^2| = {np.max(np.abs((bdd - zk).values - q*q)):.1e}")
