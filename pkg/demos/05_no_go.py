"""
Models that cannot be matched
=============================

For the q-phase, q-real and Q oscillators and the Poschl-Teller potential,
reading a, b and 2k+3 off the x^2, x^4, x^6 coefficients always violates
a^2 > 0 or 2k+3 > 0.
"""
import math

from qesmatch.nogo import check_pt, check_Q, check_q_phase, check_q_real

for verdict in (check_q_phase(1.0, 0.5), check_q_real(1.0, 0.1), check_Q(1.0, math.e), check_pt(1.0)):
    values = ", ".join(f"{k}={v:.5g}" for k, v in verdict.computed_values.items())
    print(f"{verdict.model.value:<14} feasible={verdict.feasible} violates '{verdict.violated_constraint}'")
    print(f"{'':<14} {values}")
