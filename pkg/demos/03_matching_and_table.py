"""
Matching SU_q(1,1) to a quasi-exactly soluble sextic
====================================================

Choose N, solve for tau so the WKB-equivalent potential agrees with the
sextic 8a^2 x^6 + 8ab x^4 + 2[b^2 - (2k+3)a] x^2 up to x^6, then compare the
deformed-model levels with the sextic's exactly known ones.
"""
import numpy as np

from qesmatch import solve_match
from qesmatch.qes import qes_eigenvalues
from qesmatch.spectra import spectrum_suq11

###############################################################################
# Ten exactly known even levels need n = 9, i.e. 2k+3 = 39.
(sol,) = solve_match(n=9, r=0, branch="pos", N_range=[399])
print(f"N={sol.N} tau={sol.tau:.8f} A={sol.A:.7f} b={sol.b:.6f} E0'={sol.E0prime:.4f}")
print("coefficient residuals:", {k: f"{v:.1e}" for k, v in sol.residuals.items()})

###############################################################################
# Exact versus deformed-model energies for the even levels 0, 2, ..., 18.
exact = qes_eigenvalues(sol.qesp)
approx = spectrum_suq11(np.arange(0, 19, 2), sol.suq11)
print(f"{'n':>3} {'exact':>10} {'SU_q(1,1)':>10} {'rel diff':>9}")
for i, (e, a) in enumerate(zip(exact, approx)):
    print(f"{2 * i:>3} {e:>10.4f} {a:>10.4f} {abs(a - e) / e:>9.2e}")

###############################################################################
# Any N gives a solution; the matched b (hence the sextic) changes with N.
for s in solve_match(9, 0, "pos", [200, 399, 800]):
    print(f"N={s.N:<4} b={s.b:.4f}")
