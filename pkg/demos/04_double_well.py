"""
When matching fails: the b < 0 double well
==========================================

With b < 0 the sextic has two deep wells. Its true low levels are
negative, while the matched SU_q(1,1) spectrum is positive -- the deformed
model only sees the shallow central region.
"""
import numpy as np

from qesmatch import solve_match
from qesmatch.oracle import default_grid_for, grid_spectrum
from qesmatch.qes import qes_eigenvalues, qesp_potential
from qesmatch.spectra import spectrum_suq11

(sol,) = solve_match(n=1, r=0, branch="neg", N_range=[61])
pot = qesp_potential(sol.qesp)
print(f"b = {sol.b:.6f}; V(x) coefficients {pot.coeffs}")

###############################################################################
# The grid solver keeps parity sectors apart, so the tunnelling doublets
# (degenerate to machine precision) come out cleanly labelled.
res = grid_spectrum(pot, default_grid_for(pot, 4, points_per_wavelength=100))
for e, p in zip(res.energies, res.parities):
    print(f"grid  {p:<4} {e:10.4f}")
print("exact even levels:", np.round(qes_eigenvalues(sol.qesp), 4))
print("SU_q(1,1) model  :", np.round(spectrum_suq11(np.array([0, 2]), sol.suq11), 4))
