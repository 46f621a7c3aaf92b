"""Closed-form spectra of deformed oscillators.

Units: hbar = m = 1 throughout. ``omega`` is kept explicit wherever the
oscillator formulas carry it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# below this the undeformed analytic branch is used to avoid 0/0
LIMIT_THRESHOLD = 1e-12


class Regime(enum.Enum):
    Q_PHASE = "q-phase"  # q = exp(i tau)
    Q_REAL = "q-real"  # q = exp(tau)
    Q_BASE = "Q"  # Q-numbers, (Q**x - 1) / (Q - 1)


class WrongBracketError(ValueError):
    """Raised when a q-number is requested for the Q-number regime."""


@dataclass(frozen=True)
class DeformationParam:
    """Deformation regime, its parameter (tau or Q) and the energy scale omega."""

    regime: Regime
    value: float
    omega: float = 1.0

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.regime is Regime.Q_BASE:
            if self.value <= 0:
                raise ValueError(f"Q must be positive, got {self.value}")
        else:
            if self.value <= 0:
                raise ValueError(f"tau must be positive, got {self.value}")
            if self.regime is Regime.Q_PHASE and self.value >= math.pi:
                raise ValueError(f"phase tau must lie in (0, pi), got {self.value}")

    @classmethod
    def q_phase(cls, tau, omega=1.0):
        return cls(Regime.Q_PHASE, tau, omega)

    @classmethod
    def q_real(cls, tau, omega=1.0):
        return cls(Regime.Q_REAL, tau, omega)

    @classmethod
    def q_base(cls, Q, omega=1.0):
        return cls(Regime.Q_BASE, Q, omega)

    @property
    def tau(self) -> float:
        if self.regime is Regime.Q_BASE:
            raise AttributeError("Q-number regime has no tau")
        return self.value

    @property
    def Q(self) -> float:
        if self.regime is not Regime.Q_BASE:
            raise AttributeError("q-number regimes have no Q")
        return self.value


@dataclass(frozen=True)
class Suq11Params:
    """Parameters of the SU_q(1,1) anharmonic oscillator spectrum.

    ``N`` is 2*n_max or 2*n_max + 1 where n_max is the last bound level.
    """

    A: float
    tau: float
    N: int
    E0prime: float = 0.0

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError(f"A must be positive for an increasing spectrum, got {self.A}")
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")


def q_number_real(x, tau):
    """sinh(tau x) / sinh(tau); any sign of tau."""
    x = np.asarray(x, dtype=float)
    if abs(tau) < LIMIT_THRESHOLD:
        return x + 0.0
    return np.sinh(tau * x) / math.sinh(tau)


def q_number_phase(x, tau):
    """sin(tau x) / sin(tau); any sign of tau."""
    x = np.asarray(x, dtype=float)
    if abs(tau) < LIMIT_THRESHOLD:
        return x + 0.0
    return np.sin(tau * x) / math.sin(tau)


def q_number(x, d: DeformationParam):
    """Symmetric q-number [x] for q = e^tau or q = e^{i tau}."""
    if d.regime is Regime.Q_REAL:
        return q_number_real(x, d.tau)
    if d.regime is Regime.Q_PHASE:
        return q_number_phase(x, d.tau)
    raise WrongBracketError("q_number is undefined for the Q regime; use big_q_number")


def big_q_number(x, Q):
    """Q-number (Q**x - 1) / (Q - 1); returns x itself at Q = 1."""
    if Q <= 0:
        raise ValueError(f"Q must be positive, got {Q}")
    x = np.asarray(x, dtype=float)
    lnQ = math.log(Q)
    if abs(Q - 1.0) < LIMIT_THRESHOLD:
        return x + 0.0
    # expm1 keeps full precision for Q close to 1
    return np.expm1(x * lnQ) / math.expm1(lnQ)


def _levels(n):
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("level index must be non-negative")
    return n.astype(float)


def spectrum_q_phase(n, d: DeformationParam, check_monotone=False):
    """E_n = (omega/2) sin(tau(n+1/2)) / sin(tau/2) for q a phase.

    With ``check_monotone`` a ValueError is raised for levels past the
    first maximum of the sine, where the spectrum stops increasing.
    """
    if d.regime is not Regime.Q_PHASE:
        raise ValueError("expected a q-phase deformation")
    n = _levels(n)
    tau = d.tau
    if check_monotone and np.any(tau * (n + 1) >= math.pi / 2):
        raise ValueError("level lies beyond the increasing branch of the phase spectrum")
    if tau < LIMIT_THRESHOLD:
        return d.omega * (n + 0.5)
    return 0.5 * d.omega * np.sin(tau * (n + 0.5)) / math.sin(tau / 2)


def spectrum_q_real(n, d: DeformationParam):
    """E_n = (omega/2) sinh(tau(n+1/2)) / sinh(tau/2) for real q."""
    if d.regime is not Regime.Q_REAL:
        raise ValueError("expected a real-q deformation")
    n = _levels(n)
    tau = d.tau
    if tau < LIMIT_THRESHOLD:
        return d.omega * (n + 0.5)
    return 0.5 * d.omega * np.sinh(tau * (n + 0.5)) / math.sinh(tau / 2)


def spectrum_Q(n, d: DeformationParam):
    """E_n = (omega/2)([n]_Q + [n+1]_Q)."""
    if d.regime is not Regime.Q_BASE:
        raise ValueError("expected a Q deformation")
    n = _levels(n)
    return 0.5 * d.omega * (big_q_number(n, d.Q) + big_q_number(n + 1, d.Q))


def spectrum_pt_limit(n, A, N, E0prime=0.0):
    """Undeformed (tau -> 0) limit of the SU_q(1,1) spectrum.

    E_n = E0' - A (n - N/2)(n + 1 - N/2), a modified Poschl-Teller spectrum.
    """
    n = _levels(n)
    return E0prime - A * (n - N / 2) * (n + 1 - N / 2)


def spectrum_suq11(n, p: Suq11Params):
    """E_n = E0' - A sin(tau(n - N/2)) sin(tau(n + 1 - N/2)) / sin(tau)**2."""
    n = _levels(n)
    tau, N = p.tau, p.N
    if tau < LIMIT_THRESHOLD:
        return spectrum_pt_limit(n, p.A, N, p.E0prime)
    s = math.sin(tau)
    return p.E0prime - p.A * np.sin(tau * (n - N / 2)) * np.sin(tau * (n + 1 - N / 2)) / (s * s)
