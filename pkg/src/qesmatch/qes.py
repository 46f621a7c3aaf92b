"""The quasi-exactly soluble sextic oscillator and its algebraic levels.

V(x) = 8 a^2 x^6 + 8 a b x^4 + 2 [b^2 - (2k+3) a] x^2,  k = 2n + r,
with H = -1/2 d^2/dx^2 + V.  The n+1 lowest levels of parity (-1)^r follow
from the ansatz

    psi(x) = x^r * sum_{m=0}^{n} c_m x^{2m} * exp(-a x^4 - b x^2).

Substituting gives, with j = 2m + r, the three-term recurrence

    E c_m = -1/2 (j+2)(j+1) c_{m+1} + b (2j+1) c_m + 4a (j-2-k) c_{m-1},

which truncates at m = n because the x^{k+2} term vanishes when j = k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .potentials import EvenPolynomialPotential
from .tables import EnergyLevel, EnergyTable

MAX_N = 50


class RecurrenceError(ArithmeticError):
    """The QES recurrence produced non-real eigenvalues."""


class ComplexRootError(ArithmeticError):
    """A characteristic polynomial that should have real roots does not."""


@dataclass(frozen=True)
class QespParams:
    b: float
    n: int
    r: int = 0
    a: float = 1.0

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"a must be positive for a normalizable ground state, got {self.a}")
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError(f"n must be a non-negative integer, got {self.n}")
        if self.r not in (0, 1):
            raise ValueError(f"r must be 0 or 1, got {self.r}")

    @property
    def k(self) -> int:
        return 2 * self.n + self.r

    @property
    def parity(self) -> str:
        return "even" if self.r == 0 else "odd"


def qesp_potential(p: QespParams) -> EvenPolynomialPotential:
    a, b = p.a, p.b
    coeffs = {2: 2 * (b * b - (2 * p.k + 3) * a), 4: 8 * a * b, 6: 8 * a * a}
    return EvenPolynomialPotential(0.0, coeffs, 6)


def qes_matrix(p: QespParams) -> np.ndarray:
    """Dense (n+1)x(n+1) matrix acting on the ansatz coefficients c_m."""
    size = p.n + 1
    mat = np.zeros((size, size))
    for m in range(size):
        j = 2 * m + p.r
        mat[m, m] = p.b * (2 * j + 1)
        if m + 1 < size:
            mat[m, m + 1] = -0.5 * (j + 2) * (j + 1)
        if m > 0:
            mat[m, m - 1] = 4 * p.a * (j - 2 - p.k)
    return mat


def _symmetrized_bands(p: QespParams):
    # similarity transform to a symmetric tridiagonal: off_m = sqrt(upper_m * lower_{m+1})
    m = np.arange(p.n + 1)
    j = 2 * m + p.r
    diag = p.b * (2 * j + 1.0)
    jj = j[:-1]
    prod = (-0.5 * (jj + 2) * (jj + 1)) * (4 * p.a * (jj - p.k))
    if np.any(prod <= 0):
        raise RecurrenceError("off-diagonal products are not positive; eigenvalues may be complex")
    return diag, np.sqrt(prod)


def qes_eigenvalues(p: QespParams) -> np.ndarray:
    if p.n > MAX_N:
        raise ValueError(f"n > {MAX_N} is not supported")
    if p.n == 0:
        return np.array([p.b * (2 * p.r + 1.0)])
    diag, off = _symmetrized_bands(p)
    return eigh_tridiagonal(diag, off, eigvals_only=True)


def qes_levels(p: QespParams) -> EnergyTable:
    """The n+1 exactly known levels of parity (-1)^r, ascending.

    Level m of the sector is overall level 2m + r of the full spectrum.
    """
    energies = qes_eigenvalues(p)
    levels = [
        EnergyLevel(2 * m + p.r, float(e), p.parity, "exact") for m, e in enumerate(energies)
    ]
    return EnergyTable(f"qes n={p.n} r={p.r} a={p.a:g} b={p.b:.10g}", levels)


def qes_levels_n1_closed(b, a=1.0):
    """Closed-form pair for n = 1, r = 0, a = 1."""
    if a != 1.0:
        raise ValueError("closed form is only available for a = 1")
    root = 2 * math.sqrt(b * b + 2)
    return 3 * b - root, 3 * b + root


def qes_char_poly_n3(b, imag_tol=1e-7):
    """Characteristic quartic for n = 3, r = 0, a = 1 and its real roots.

    Returns ``(coefficients, roots)``; coefficients are highest power first.
    Roots come from the companion matrix and are sorted ascending.
    """
    coeffs = np.array([
        1.0,
        -28 * b,
        254 * b**2 - 240,
        -812 * b**3 + 2592 * b,
        585 * b**4 - 4656 * b**2 + 2880,
    ])
    roots = np.roots(coeffs)
    scale = max(1.0, float(np.max(np.abs(roots))))
    if np.any(np.abs(roots.imag) > imag_tol * scale):
        raise ComplexRootError(f"quartic has complex roots at b={b}: {roots}")
    return coeffs, np.sort(roots.real)
