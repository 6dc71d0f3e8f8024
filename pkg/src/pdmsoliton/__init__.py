"""Position-dependent-mass Schroedinger models and KdV soliton data.

Submodules
----------
numgrid          grids, sampled fields, derivatives, quadrature
pdm_schemes      mass orderings and the reduced potential u
spectral_solver  bound states, scattering, Poschl-Teller oracle
susy             Cole-Hopf, partner potentials, bound-state addition
kdv              KdV/MKdV flows, Miura map, charges, isospectral drift
solitons         closed-form soliton data and the scheme catalog
"""

__version__ = "0.1.0"
