"""Match the SU_q(1,1) WKB-equivalent potential to a QES sextic potential.

Equating the x^2, x^4 and x^6 coefficients (with a = 1, hbar = m = 1) fixes
A and b as functions of (N, tau) and leaves a single condition on 2k+3.
For a given N that condition is solved for tau by bracketed root finding
inside the feasibility window of N*tau.
"""
from __future__ import annotations

import enum
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .potentials import wkb_suq11
from .qes import QespParams, qesp_potential
from .spectra import Suq11Params

log = logging.getLogger(__name__)

SQRT5 = math.sqrt(5.0)
TAU_XTOL = 1e-15
# relative shrink of the bracket away from the window edges (k has a pole there)
_EDGE = 1e-12


class Branch(enum.Enum):
    B_POSITIVE = "pos"
    B_NEGATIVE = "neg"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"pos": cls.B_POSITIVE, "+": cls.B_POSITIVE, "bpositive": cls.B_POSITIVE,
                   "neg": cls.B_NEGATIVE, "-": cls.B_NEGATIVE, "bnegative": cls.B_NEGATIVE}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown branch {value!r}") from None


class InfeasiblePointError(ValueError):
    """(N, tau) lies outside the region where A, b and k are real and physical."""


class NoSolutionError(RuntimeError):
    def __init__(self, message, skipped):
        super().__init__(message)
        self.skipped = skipped


@dataclass(frozen=True)
class FeasibilityWindow:
    lower: float
    upper: float
    period_offset: int = 0

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("window lower bound must be below the upper bound")

    def __contains__(self, value):
        return self.lower < value < self.upper


def feasibility_window(branch, l=0) -> FeasibilityWindow:
    """Interval of N*tau with sin > 0, 6/23 < cos^2 < 1/3 and the branch's cos sign.

    The b < 0 window is not periodically shifted by ``l``.
    """
    branch = Branch.parse(branch)
    c_outer = math.sqrt(6 / 23)
    c_inner = math.sqrt(1 / 3)
    if branch is Branch.B_POSITIVE:
        shift = 2 * math.pi * l
        return FeasibilityWindow(math.acos(-c_outer) + shift, math.acos(-c_inner) + shift, l)
    if l:
        raise ValueError("periodic offsets are only supported on the b > 0 branch")
    return FeasibilityWindow(math.acos(c_inner), math.acos(c_outer), 0)


def _trig(N, tau):
    theta = N * tau
    s, c = math.sin(theta), math.cos(theta)
    g = 23 * c * c - 6
    if s <= 0 or g <= 0 or tau <= 0:
        raise InfeasiblePointError(f"N*tau = {theta:.6g} is outside the feasible region")
    return s, c, g


def k_of(N, tau) -> float:
    """The value of 2k+3 that the matched potential implies."""
    s, c, g = _trig(N, tau)
    return -1.5 * SQRT5 * s * (18 * c * c - 6) / (tau * g**1.5)


def ab_of(N, tau):
    """(A, b) solving the x^6 and x^4 matching conditions with a = 1."""
    s, c, g = _trig(N, tau)
    A = math.sqrt(6 * SQRT5) * math.sin(tau) ** 2 / (tau**1.5 * math.sqrt(s) * g**0.25)
    b = -math.sqrt(7.5 * SQRT5) * math.sqrt(s) * c / (math.sqrt(tau) * g**0.75)
    return A, b


def e0prime_of(N, tau, A) -> float:
    """E0' that places the potential minimum at zero."""
    st = math.sin(tau)
    if st == 0:
        raise ValueError("sin(tau) must be nonzero")
    return A * (math.cos(tau) - math.cos(N * tau)) / (2 * st * st)


@dataclass
class MatchSolution:
    N: int
    tau: float
    A: float
    b: float
    E0prime: float
    branch: Branch
    k_target: float
    n: int = 0
    r: int = 0
    residuals: dict = field(default_factory=dict)

    @property
    def suq11(self) -> Suq11Params:
        return Suq11Params(A=self.A, tau=self.tau, N=self.N, E0prime=self.E0prime)

    @property
    def qesp(self) -> QespParams:
        return QespParams(b=self.b, n=self.n, r=self.r, a=1.0)

    def to_dict(self):
        return {
            "N": self.N,
            "tau": self.tau,
            "A": self.A,
            "b": self.b,
            "E0prime": self.E0prime,
            "branch": self.branch.value,
            "k_target": self.k_target,
            "residuals": dict(self.residuals),
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def matching_residuals(sol_params: Suq11Params, qesp: QespParams) -> dict:
    """Relative differences of the x^2, x^4, x^6 coefficients."""
    wkb = wkb_suq11(sol_params, truncation_order=6)
    target = qesp_potential(qesp)
    out = {}
    for p in (2, 4, 6):
        want = target.coeff(p)
        got = wkb.coeff(p)
        out[f"c{p}"] = abs(got - want) / abs(want) if want else abs(got)
    return out


def _solve_tau(N, target, window):
    lo = window.lower / N * (1 + _EDGE)
    hi = window.upper / N * (1 - _EDGE)
    f = lambda t: k_of(N, t) - target  # noqa: E731
    grid = np.linspace(lo, hi, 65)
    vals = np.array([f(t) for t in grid])
    if np.all(np.diff(vals) < 0) or np.all(np.diff(vals) > 0):
        if vals[0] * vals[-1] > 0:
            return None
        return brentq(f, lo, hi, xtol=TAU_XTOL, rtol=4 * np.finfo(float).eps)
    # not monotone on this bracket: fall back to the first sign change on the scan
    log.warning("k_of not monotone for N=%d; scanning for a bracket", N)
    for t0, t1, v0, v1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if v0 == 0:
            return t0
        if v0 * v1 < 0:
            return brentq(f, t0, t1, xtol=TAU_XTOL, rtol=4 * np.finfo(float).eps)
    return None


def default_N_range(N_max=1000):
    return range(3, N_max + 1)


def solve_match(n, r=0, branch=Branch.B_POSITIVE, N_range=None, l=0, strict=True):
    """Solve the matching system for every N in ``N_range``.

    Returns the list of solutions ordered by N. N values with no root in the
    window are skipped (logged); if none remain a NoSolutionError is raised.
    ``strict`` enforces the coefficient round-trip at 1e-6 relative.
    """
    branch = Branch.parse(branch)
    if r not in (0, 1) or n < 0:
        raise ValueError("need n >= 0 and r in {0, 1}")
    if N_range is None:
        N_range = default_N_range()
    elif isinstance(N_range, int):
        N_range = [N_range]
    target = 2 * (2 * n + r) + 3
    window = feasibility_window(branch, l)
    solutions, skipped = [], []
    for N in sorted(set(int(v) for v in N_range)):
        tau = _solve_tau(N, target, window)
        if tau is None:
            skipped.append(N)
            log.debug("no root for N=%d", N)
            continue
        A, b = ab_of(N, tau)
        E0 = e0prime_of(N, tau, A)
        sol = MatchSolution(N, tau, A, b, E0, branch, target, n, r)
        sol.residuals = matching_residuals(sol.suq11, sol.qesp)
        if strict and max(sol.residuals.values()) > 1e-6:
            raise ArithmeticError(f"matching round-trip failed for N={N}: {sol.residuals}")
        solutions.append(sol)
    if not solutions:
        raise NoSolutionError(f"no matching solution for n={n}, r={r}, {branch.value}", skipped)
    return solutions
