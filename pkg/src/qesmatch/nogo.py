"""Infeasibility verdicts for potentials that cannot match the QES family.

Each check builds the model's WKB-equivalent (or Taylor) potential, reads
off the would-be sextic parameters from its x^2, x^4, x^6 coefficients and
reports which requirement fails. The closed-form expressions are computed
alongside as a cross-check.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

from .potentials import pt_taylor, wkb_Q, wkb_q_phase, wkb_q_real


class Model(enum.Enum):
    Q_PHASE = "q-phase"
    Q_REAL = "q-real"
    Q_BASE = "Q"
    POSCHL_TELLER = "poschl-teller"


@dataclass
class NoGoVerdict:
    model: Model
    feasible: bool
    violated_constraint: str = ""
    computed_values: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.feasible and not self.violated_constraint:
            raise ValueError("an infeasible verdict must name the violated constraint")

    def to_dict(self):
        return {
            "model": self.model.value,
            "feasible": self.feasible,
            "violated_constraint": self.violated_constraint,
            "computed_values": dict(self.computed_values),
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def _sextic_params(c2, c4, c6, a):
    """b and 2k+3 implied by the coefficients once a > 0 is chosen."""
    b = c4 / (8 * a)
    two_k3 = (b * b - c2 / 2) / a
    return b, two_k3


def check_q_phase(omega, tau) -> NoGoVerdict:
    """x^4 is absent so b = 0; the x^6 coefficient then demands 8a^2 < 0."""
    if not 0 < tau < math.pi:
        raise ValueError(f"tau must lie in (0, pi), got {tau}")
    pot = wkb_q_phase(omega, tau, truncation_order=6)
    eight_a2 = pot.coeff(6)
    closed = -(tau**6) * omega**4 / (240 * math.sin(tau / 2) ** 4)
    values = {"8a^2": eight_a2, "8a^2_closed": closed, "b": pot.coeff(4)}
    if eight_a2 < 0:
        return NoGoVerdict(Model.Q_PHASE, False, "a^2 >= 0", values)
    return NoGoVerdict(Model.Q_PHASE, True, "", values)


def check_q_real(omega, tau) -> NoGoVerdict:
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    pot = wkb_q_real(omega, tau, truncation_order=6)
    a = math.sqrt(pot.coeff(6) / 8)
    b, two_k3 = _sextic_params(pot.coeff(2), pot.coeff(4), pot.coeff(6), a)
    values = {
        "a": a,
        "a_closed": tau**3 * omega**2 / (8 * math.sqrt(30) * math.sinh(tau / 2) ** 2),
        "b": b,
        "2k+3": two_k3,
        "2k+3_closed": -math.sqrt(7.5) / tau,
    }
    if two_k3 <= 0:
        return NoGoVerdict(Model.Q_REAL, False, "2k+3 > 0", values)
    return NoGoVerdict(Model.Q_REAL, True, "", values)


def check_Q(omega, Q) -> NoGoVerdict:
    """Both sign choices for a are examined.

    The choice a = +sqrt(c6/8) (positive, as normalizability requires) is the
    one that corresponds to ln Q > 0 on the upper sign and ln Q < 0 on the
    lower sign; the other choice violates a > 0 outright.

    ``2k+3_<sign>`` is read off the constructed potential and equals
    -(54/23) sqrt(5/23) / |ln Q| on the admissible sign; ``2k+3_<sign>_closed``
    is the commonly quoted closed form -+(27/23) sqrt(5/23) / ln Q, which
    belongs to a series scaled differently in x. Both are negative.
    """
    if Q <= 0 or Q == 1:
        raise ValueError(f"Q must be positive and different from 1, got {Q}")
    pot = wkb_Q(omega, Q, truncation_order=6)
    c2, c4, c6 = pot.coeff(2), pot.coeff(4), pot.coeff(6)
    lnQ = math.log(Q)
    values = {"lnQ": lnQ}
    feasible_any = False
    for label, sign in (("upper", 1.0), ("lower", -1.0)):
        # closed forms carry (ln Q)^3 in a: the sign of a is sign * sign(ln Q)
        a_closed = sign * 0.5 * math.sqrt(23 / 45) * lnQ**3 / Q * ((Q + 1) / (Q - 1)) ** 2 * omega**2
        a = math.copysign(math.sqrt(c6 / 8), a_closed)
        b, two_k3 = _sextic_params(c2, c4, c6, a)
        values[f"a_{label}"] = a
        values[f"b_{label}"] = b
        values[f"2k+3_{label}"] = two_k3
        values[f"2k+3_{label}_closed"] = -sign * 27 / 23 * math.sqrt(5 / 23) / lnQ
        if a > 0 and two_k3 > 0:
            feasible_any = True
    if feasible_any:
        return NoGoVerdict(Model.Q_BASE, True, "", values)
    return NoGoVerdict(Model.Q_BASE, False, "a > 0 and 2k+3 > 0 (both sign choices)", values)


def check_pt(A, N=1) -> NoGoVerdict:
    """Modified Poschl-Teller potential.

    With N = 1 this is the Taylor series as usually printed; a general depth
    N scales 2k+3 by N and cannot change its sign.
    """
    if A <= 0:
        raise ValueError(f"A must be positive, got {A}")
    pot = pt_taylor(A, N, truncation_order=6)
    a = math.sqrt(pot.coeff(6) / 8)
    b, two_k3 = _sextic_params(pot.coeff(2), pot.coeff(4), pot.coeff(6), a)
    values = {
        "a": a,
        "b": b,
        "2k+3": two_k3,
        "a_closed": N * math.sqrt(17 / 5) * A * A / 6,
        "b_closed": -N * math.sqrt(5 / 17) * A / 2,
        "2k+3_closed": -N * 18 / 17 * math.sqrt(5 / 17),
    }
    if two_k3 <= 0:
        return NoGoVerdict(Model.POSCHL_TELLER, False, "2k+3 > 0", values)
    return NoGoVerdict(Model.POSCHL_TELLER, True, "", values)
