"""KdV evolution keeps the spectrum fixed.

The initial profile -6 sech^2 x splits into two solitons moving right at speeds
16 and 4. While the shape changes a lot, the Schroedinger levels of u(x, t)
stay at -4 and -1, and the first conserved quantities stay put.
"""

import numpy as np

from pdmsoliton.kdv import KdVState, conserved_charges, evolve_series, line_window
from pdmsoliton.numgrid import make_uniform_grid
from pdmsoliton.spectral_solver import spectrum_of

ring = make_uniform_grid(-30, 30, 1024, "periodic")
u0 = ring.sample(lambda x: -6 / np.cosh(x) ** 2)
c0 = conserved_charges(u0)

times = [0.1, 0.2, 0.3, 0.4, 0.5]
states = evolve_series(KdVState(u0), 2.5e-4, times)
print(f"{'t':>4} {'min u':>9} {'at x':>7} {'levels':>24} {'c2 drift':>9}")
for st in [KdVState(u0)] + states:
    u = st.u.values
    ev = spectrum_of(line_window(st.u)).eigenvalues
    drift = abs(conserved_charges(st.u).c2 - c0.c2) / c0.c2
    print(f"{st.t:4.1f} {u.min():9.4f} {ring.x[np.argmin(u)]:7.3f} "
          f"{str(np.round(ev, 5).tolist()):>24} {drift:9.1e}")
