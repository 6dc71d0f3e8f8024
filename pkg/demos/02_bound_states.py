"""Bound states of the soliton wells.

The wells -l(l+1) sech^2 x have levels -(l - n)^2. For integer l they are
reflectionless. We solve for the levels on a grid, compare with the exact
values, and then measure the reflection coefficient at a few wavenumbers. The
well -3 sech^2 x has non-integer l, so it reflects.
"""

from pdmsoliton.spectral_solver import (count_nodes, default_line, poschl_teller_oracle,
                                        reflection_coefficient, spectrum_of)
import numpy as np

grid = default_line()

for lam in (1, 2, 3):
    u = grid.sample(lambda x: -lam * (lam + 1) / np.cosh(x) ** 2)
    sp = spectrum_of(u)
    nodes = [count_nodes(p) for p in sp.eigenfunctions]
    print(f"l={lam}: computed {np.round(sp.eigenvalues, 9).tolist()}  "
          f"exact {poschl_teller_oracle(lam, 1.0)}  nodes {nodes}")

print()
for coupling in (2, 3, 6):
    u = grid.sample(lambda x: -coupling / np.cosh(x) ** 2)
    rs = ", ".join(f"|R({k})|={reflection_coefficient(u, k).abs_r:.2e}" for k in (0.5, 1, 2))
    print(f"-{coupling} sech^2 x: {rs}")
