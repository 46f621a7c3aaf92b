"""
Deformed oscillator spectra
===========================

Three one-parameter deformations of the harmonic oscillator and the
SU_q(1,1) anharmonic oscillator. Each reduces to omega (n + 1/2) (or to a
Poschl-Teller spectrum) as the deformation is switched off.
"""
import numpy as np

from qesmatch import DeformationParam, Suq11Params
from qesmatch.spectra import spectrum_pt_limit, spectrum_q_phase, spectrum_q_real, spectrum_Q, spectrum_suq11

n = np.arange(8)

###############################################################################
# Level spacings tell the deformations apart: real q spreads the spectrum,
# a phase q compresses it, and Q > 1 makes it grow geometrically.
for label, energies in [
    ("harmonic", n + 0.5),
    ("q-real  tau=0.3", spectrum_q_real(n, DeformationParam.q_real(0.3))),
    ("q-phase tau=0.3", spectrum_q_phase(n, DeformationParam.q_phase(0.3))),
    ("Q       Q=1.2", spectrum_Q(n, DeformationParam.q_base(1.2))),
]:
    print(f"{label:<18} spacings: {np.round(np.diff(energies), 4)}")

###############################################################################
# The SU_q(1,1) spectrum with tau -> 0 becomes the Poschl-Teller one.
p = Suq11Params(A=1.0, tau=1e-6, N=40, E0prime=0.0)
print("SU_q(1,1) tau=1e-6:", np.round(spectrum_suq11(n, p), 6))
print("Poschl-Teller     :", spectrum_pt_limit(n, 1.0, 40))
