"""Building soliton wells one bound state at a time.

Starting from the free particle, each rung of the SUSY ladder inserts a new
ground state at -k^2 and leaves the old levels in place. Three rungs give the
well -12 sech^2 x with levels -9, -4, -1. The last part factorizes that well
through its ground state and checks that the partners share all but one level.
"""

import numpy as np

from pdmsoliton.numgrid import make_uniform_grid
from pdmsoliton.spectral_solver import spectrum_of
from pdmsoliton.susy import cole_hopf, pairing_check, partner_potentials, soliton_ladder

grid = make_uniform_grid(-20, 20, 4001)

for k, V in enumerate(soliton_ladder(3, 1.0, grid), 1):
    exact = -k * (k + 1) / np.cosh(grid.x) ** 2
    ev = spectrum_of(V).eigenvalues
    print(f"rung {k}: max|V - exact| = {np.max(np.abs(V.values - exact)):.1e}, "
          f"levels {np.round(ev, 6).tolist()}")

# v = psi0'/psi0 of the deepest state gives partners V(-) (all levels) and V(+)
sp = spectrum_of(grid.sample(lambda x: -12 / np.cosh(x) ** 2))
pair = partner_potentials(cole_hopf(sp.eigenfunctions[0]))
report = pairing_check(pair)
print(f"\nV(-) levels: {np.round(report.minus, 5).tolist()}")
print(f"V(+) levels: {np.round(report.plus, 5).tolist()}")
print(f"paired: {report.matched}, extra state at {report.extra_state:.2e}")
