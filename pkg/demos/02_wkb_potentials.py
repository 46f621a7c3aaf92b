"""
WKB-equivalent potentials
=========================

A spectrum E_n can be turned into an even potential whose Bohr-Sommerfeld
levels reproduce it. Here we build those potentials as x-power series and
check the quantization numerically.
"""
import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from qesmatch import DeformationParam, Suq11Params
from qesmatch.potentials import wkb_Q, wkb_q_phase, wkb_suq11
from qesmatch.spectra import spectrum_q_phase, spectrum_Q, spectrum_suq11


def semiclassical_index(pot, E):
    """n from the Bohr-Sommerfeld condition, integrating to the turning point."""
    xs = np.linspace(0, 20, 20001)
    i = int(np.argmax(pot(xs) > E))
    xt = brentq(lambda x: pot(x) - E, xs[i - 1], xs[i])
    return 2 * quad(lambda x: math.sqrt(max(2 * (E - pot(x)), 0.0)), 0, xt)[0] / math.pi - 0.5


###############################################################################
# Each potential is stored as plain coefficients of x^2, x^4, ...
pot = wkb_q_phase(1.0, 0.1)
print("q-phase tau=0.1 coefficients:", {p: f"{c:.4e}" for p, c in pot.coeffs.items()})

###############################################################################
# Feeding the model's own levels back through the quantization condition
# should return integers.
cases = [
    ("q-phase", wkb_q_phase(1.0, 0.1), lambda k: spectrum_q_phase(k, DeformationParam.q_phase(0.1))),
    ("Q=1.05", wkb_Q(1.0, 1.05), lambda k: spectrum_Q(k, DeformationParam.q_base(1.05))),
    ("SU_q(1,1)", wkb_suq11(Suq11Params(0.4, 0.01, 60), 8),
     lambda k: spectrum_suq11(k, Suq11Params(0.4, 0.01, 60))),
]
for label, pot, energy_of in cases:
    print(f"{label:<10}", [round(semiclassical_index(pot, energy_of(k)), 4) for k in range(4)])
