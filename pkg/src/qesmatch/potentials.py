"""WKB-equivalent potentials as truncated even power series in x.

Every series is expanded into plain x**p coefficients when it is built, so
downstream code only ever sees :class:`EvenPolynomialPotential`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .spectra import LIMIT_THRESHOLD, Suq11Params

MAX_ORDER = 14

# bracket coefficients of the deformed-oscillator series, lowest order first
Q_PHASE_BRACKET = (Fraction(-8, 15), Fraction(4448, 1575), Fraction(-345344, 675675))
Q_REAL_BRACKET = (Fraction(8, 15), Fraction(4448, 1575), Fraction(345344, 675675))
Q_BASE_BRACKET = (
    Fraction(-2, 3),
    Fraction(23, 45),
    Fraction(-134, 315),
    Fraction(5297, 14175),
)
PT_BRACKET = (Fraction(-2, 3), Fraction(17, 45), Fraction(-62, 315))


@dataclass
class EvenPolynomialPotential:
    """V(x) = v_min + sum_p coeffs[p] * x**p over even powers p."""

    v_min: float = 0.0
    coeffs: dict = field(default_factory=dict)
    truncation_order: int = 6

    def __post_init__(self):
        _check_order(self.truncation_order)
        coeffs = {}
        for p, c in self.coeffs.items():
            p = int(p)
            if p <= 0 or p % 2:
                raise ValueError(f"only positive even powers are allowed, got x^{p}")
            if p > self.truncation_order:
                raise ValueError(f"power {p} exceeds truncation order {self.truncation_order}")
            coeffs[p] = float(c)
        self.coeffs = dict(sorted(coeffs.items()))

    def __call__(self, x):
        return evaluate(self, x)

    def coeff(self, p) -> float:
        return self.coeffs.get(p, 0.0)

    def truncated(self, order) -> "EvenPolynomialPotential":
        _check_order(order)
        kept = {p: c for p, c in self.coeffs.items() if p <= order}
        return EvenPolynomialPotential(self.v_min, kept, order)

    @property
    def leading(self):
        """(power, coefficient) of the highest nonzero term, or None."""
        nonzero = [(p, c) for p, c in self.coeffs.items() if c != 0.0]
        return nonzero[-1] if nonzero else None

    def to_dict(self) -> dict:
        return {
            "v_min": self.v_min,
            "coeffs": {str(p): c for p, c in self.coeffs.items()},
            "truncation_order": self.truncation_order,
        }

    @classmethod
    def from_dict(cls, d) -> "EvenPolynomialPotential":
        return cls(
            v_min=float(d.get("v_min", 0.0)),
            coeffs={int(p): float(c) for p, c in d.get("coeffs", {}).items()},
            truncation_order=int(d.get("truncation_order", MAX_ORDER)),
        )

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text) -> "EvenPolynomialPotential":
        return cls.from_dict(json.loads(text))


def _check_order(order):
    if order < 2 or order > MAX_ORDER or order % 2:
        raise ValueError(f"truncation order must be even and in [2, {MAX_ORDER}], got {order}")


def evaluate(pot: EvenPolynomialPotential, x):
    x = np.asarray(x, dtype=float)
    x2 = x * x
    total = np.full_like(x2, pot.v_min)
    for p, c in pot.coeffs.items():
        total = total + c * x2 ** (p // 2)
    return total if total.ndim else float(total)


def _expand(v_min, prefactor, scale_sq, bracket, step, truncation_order):
    """prefactor * x^2 * [1 + sum_j bracket[j] * (x^2/scale_sq)^(step/2 * (j+1))].

    ``scale_sq`` is the squared length scale; it may be negative (the Q < 1
    oscillator), which is the analytic continuation of the series.
    """
    _check_order(truncation_order)
    coeffs = {2: prefactor}
    half = step // 2
    for j, c in enumerate(bracket):
        p = 2 + step * (j + 1)
        if p > truncation_order:
            break
        coeffs[p] = prefactor * float(c) / scale_sq ** (half * (j + 1))
    return EvenPolynomialPotential(v_min, coeffs, truncation_order)


def length_re(omega, tau):
    """Length scale R_e of the q-phase series (m = hbar = 1)."""
    return math.sqrt(0.5) * math.sqrt(2 * math.sin(tau / 2) / omega) / tau


def length_rh(omega, tau):
    """Length scale R_h of the real-q series."""
    return math.sqrt(0.5) * math.sqrt(2 * math.sinh(tau / 2) / omega) / tau


def rprime_squared(omega, Q):
    """Signed R'^2 of the Q-oscillator series.

    Negative for Q > 1, where the potential is steeper than harmonic, and
    positive for Q < 1. The value follows from Abel inversion of the
    Bohr-Sommerfeld condition for the Q spectrum.
    """
    lnQ = math.log(Q)
    return -2 * math.sqrt(Q) * (Q - 1) / (omega * (Q + 1) * lnQ * lnQ)


def length_rprime(omega, Q):
    """|R'|, the length scale of the Q-oscillator series."""
    return math.sqrt(abs(rprime_squared(omega, Q)))


def _harmonic(omega, truncation_order):
    _check_order(truncation_order)
    return EvenPolynomialPotential(0.0, {2: 0.5 * omega**2}, truncation_order)


def wkb_q_phase(omega, tau, truncation_order=MAX_ORDER):
    """WKB-equivalent potential of the q-oscillator with q = exp(i tau).

    The bracket has no u^2 term, so only x^2, x^6, x^10, x^14 appear.
    """
    if not 0 <= tau < math.pi:
        raise ValueError(f"tau must lie in [0, pi), got {tau}")
    if tau < LIMIT_THRESHOLD:
        return _harmonic(omega, truncation_order)
    prefactor = (tau / (2 * math.sin(tau / 2))) ** 2 * omega**2 / 2
    scale_sq = (2 * length_re(omega, tau)) ** 2
    return _expand(0.0, prefactor, scale_sq, Q_PHASE_BRACKET, 4, truncation_order)


def wkb_q_real(omega, tau, truncation_order=MAX_ORDER):
    """WKB-equivalent potential of the q-oscillator with q = exp(tau)."""
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    if tau < LIMIT_THRESHOLD:
        return _harmonic(omega, truncation_order)
    prefactor = (tau / (2 * math.sinh(tau / 2))) ** 2 * omega**2 / 2
    scale_sq = (2 * length_rh(omega, tau)) ** 2
    return _expand(0.0, prefactor, scale_sq, Q_REAL_BRACKET, 4, truncation_order)


def q_oscillator_vmin(omega, Q):
    sq = math.sqrt(Q)
    return omega * (sq - 1) / (2 * sq * (sq + 1))


def wkb_Q(omega, Q, truncation_order=MAX_ORDER):
    """WKB-equivalent potential of the Q-deformed oscillator."""
    if Q <= 0:
        raise ValueError(f"Q must be positive, got {Q}")
    if abs(Q - 1) < LIMIT_THRESHOLD:
        return _harmonic(omega, truncation_order)
    lnQ = math.log(Q)
    prefactor = lnQ**2 / Q * ((Q + 1) / (Q - 1)) ** 2 * omega**2 / 8
    scale_sq = rprime_squared(omega, Q)
    return _expand(q_oscillator_vmin(omega, Q), prefactor, scale_sq, Q_BASE_BRACKET, 2, truncation_order)


def suq11_vmin(p: Suq11Params):
    """Minimum of the SU_q(1,1) potential relative to E0'."""
    tau, N = p.tau, p.N
    if tau < LIMIT_THRESHOLD:
        return p.E0prime - p.A * (N * N - 1) / 4
    return p.E0prime - p.A * (math.cos(tau) - math.cos(N * tau)) / (2 * math.sin(tau) ** 2)


def suq11_bracket(tau, N):
    """Coefficients of u^2, u^4, u^6 inside the SU_q(1,1) bracket."""
    if tau < LIMIT_THRESHOLD:
        return tuple(float(c) for c in PT_BRACKET)
    s2 = math.sin(tau) ** 2
    c = math.cos(N * tau)
    t2 = tau * tau / s2
    return (
        -2 / 3 * t2 * c,
        (23 * c * c - 6) * t2**2 / 45,
        -2 / 315 * (67 * c * c - 36) * c * t2**3,
    )


def wkb_suq11(p: Suq11Params, truncation_order=8):
    """WKB-equivalent potential of the SU_q(1,1) anharmonic oscillator.

    The series is in u = sqrt(2A) x and is returned in powers of x.
    """
    tau, N, A = p.tau, p.N, p.A
    if tau < LIMIT_THRESHOLD:
        amp = float(N)
    else:
        amp = tau * math.sin(N * tau) / math.sin(tau) ** 2
    u_scale = math.sqrt(2 * A)
    prefactor = A / 4 * amp**2 * u_scale**2
    return _expand(suq11_vmin(p), prefactor, 1 / u_scale**2, suq11_bracket(tau, N), 2, truncation_order)


def pt_taylor(A, N, truncation_order=8, v_min=0.0):
    """Taylor series of v_min + (A N^2 / 4) tanh^2(sqrt(2A) x)."""
    if A <= 0:
        raise ValueError(f"A must be positive, got {A}")
    u_scale = math.sqrt(2 * A)
    prefactor = A * N * N / 4 * u_scale**2
    return _expand(v_min, prefactor, 1 / u_scale**2, PT_BRACKET, 2, truncation_order)


def pt_closed(A, N, v_min, x):
    """Modified Poschl-Teller potential in closed form."""
    if A <= 0:
        raise ValueError(f"A must be positive, got {A}")
    return v_min + A * N * N / 4 * np.tanh(math.sqrt(2 * A) * np.asarray(x, dtype=float)) ** 2


@dataclass
class TabulatedPotential:
    """Potential sampled on a grid, linearly interpolated between samples."""

    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        order = np.argsort(self.x)
        self.x, self.v = self.x[order], self.v[order]

    def __call__(self, x):
        return np.interp(x, self.x, self.v)

    @classmethod
    def from_file(cls, path) -> "TabulatedPotential":
        """Read two columns (x, V), comma or whitespace separated; '#' comments."""
        with open(path) as fh:
            text = fh.read()
        delimiter = "," if "," in text else None
        data = np.loadtxt(path, delimiter=delimiter, comments="#", ndmin=2)
        return cls(data[:, 0], data[:, 1])


def load_potential(path):
    """Load an EvenPolynomialPotential (.json) or a tabulated (x, V) file."""
    if str(path).endswith(".json"):
        with open(path) as fh:
            return EvenPolynomialPotential.from_json(fh.read())
    return TabulatedPotential.from_file(path)
