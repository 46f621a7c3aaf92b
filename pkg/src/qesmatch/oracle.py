"""Finite-difference eigensolver for H = -1/2 d^2/dx^2 + V(x) on [-L, L].

Three-point central differences with Dirichlet walls at +-L. For the
parity-even potentials used here the symmetric grid matrix splits exactly
into an even and an odd block on x >= 0, so each level comes out with its
parity attached even when the two sectors are (numerically) degenerate, as
in a deep double well.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .potentials import EvenPolynomialPotential
from .tables import EnergyLevel, EnergyTable


class DomainTooSmallError(RuntimeError):
    def __init__(self, message, suggested_half_width):
        super().__init__(message)
        self.suggested_half_width = suggested_half_width


class UnboundedPotentialError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    half_width: float
    points: int
    count: int
    tail_tol: float = 1e-8
    tail_fraction: float = 0.1  # outer fraction of the half-width checked for tail mass
    conv_tol: float | None = None

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        if self.points < 101 or self.points % 2 == 0:
            raise ValueError("points must be odd and at least 101 so that x = 0 is a node")
        if not 0 < self.count < self.points / 4:
            raise ValueError("count must be positive and below points/4")

    @property
    def spacing(self):
        return 2 * self.half_width / (self.points - 1)

    def coarsened(self):
        """Same domain with every other node dropped (spacing doubled)."""
        pts = (self.points + 1) // 2
        if pts % 2 == 0:
            pts += 1
        return GridSpec(self.half_width, max(pts, 101), self.count, self.tail_tol,
                        self.tail_fraction, self.conv_tol)


@dataclass
class OracleResult:
    energies: np.ndarray
    parities: list
    convergence_estimate: np.ndarray
    grid: GridSpec
    converged: list = field(default_factory=list)

    def of_parity(self, parity):
        return np.array([e for e, p in zip(self.energies, self.parities) if p == parity])

    def to_table(self, label="grid oracle") -> EnergyTable:
        levels = [EnergyLevel(i, float(e), p, "grid-oracle")
                  for i, (e, p) in enumerate(zip(self.energies, self.parities))]
        return EnergyTable(label, levels)

    def to_dict(self):
        return {
            "grid": {"half_width": self.grid.half_width, "points": self.grid.points,
                     "count": self.grid.count},
            "energies": [float(e) for e in self.energies],
            "parities": list(self.parities),
            "convergence_estimate": [float(c) for c in self.convergence_estimate],
            "converged": list(self.converged),
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "parity", "energy", "convergence_estimate"])
        for i, (e, p, c) in enumerate(zip(self.energies, self.parities, self.convergence_estimate)):
            w.writerow([i, p, repr(float(e)), repr(float(c))])
        return buf.getvalue()


def _sector_bands(v_half, h, parity):
    """Tridiagonal bands of one parity block; v_half holds V at x = 0, h, 2h, ..."""
    kin = 1.0 / (h * h)
    off_val = -0.5 * kin
    if parity == "even":
        diag = kin + v_half
        off = np.full(len(v_half) - 1, off_val)
        # psi(-h) = psi(h) doubles the 0->1 coupling; symmetrize with a sqrt(2) rescale of node 0
        off[0] = off_val * math.sqrt(2.0)
    else:
        diag = kin + v_half[1:]
        off = np.full(len(diag) - 1, off_val)
    return diag, off


def _solve(pot, g: GridSpec, return_vectors=False):
    h = g.spacing
    half = (g.points - 1) // 2
    x_half = np.arange(half) * h  # 0 .. L-h; the wall at L is excluded
    v_half = np.asarray(pot(x_half), dtype=float)
    if not np.all(np.isfinite(v_half)):
        raise ValueError("potential is not finite on the grid")
    v_mirror = np.asarray(pot(-x_half), dtype=float)
    if not np.allclose(v_mirror, v_half, rtol=1e-9, atol=1e-12 * max(1.0, np.abs(v_half).max())):
        raise ValueError("the grid solver requires a parity-even potential, V(x) = V(-x)")
    found = []
    for parity in ("even", "odd"):
        diag, off = _sector_bands(v_half, h, parity)
        k = min(g.count, len(diag)) - 1
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k))
        for e, v in zip(vals, vecs.T):
            found.append((e, parity, v))
    found.sort(key=lambda t: t[0])
    found = found[: g.count]

    tail_start = int(math.floor(len(x_half) * (1 - g.tail_fraction)))
    for e, parity, v in found:
        tail = np.sum(v[tail_start - (parity == "odd"):] ** 2) / np.sum(v * v)
        if tail > g.tail_tol:
            raise DomainTooSmallError(
                f"level E={e:.6g} has tail mass {tail:.2e} near the wall; enlarge the domain",
                1.5 * g.half_width,
            )
    energies = np.array([t[0] for t in found])
    parities = [t[1] for t in found]
    if not return_vectors:
        return energies, parities, None
    vectors = [_full_vector(v, p) for _, p, v in found]
    return energies, parities, vectors


def _full_vector(v, parity):
    """Reconstruct psi on the full symmetric grid (walls included, as zeros)."""
    if parity == "even":
        pos = v.copy()
        pos[0] *= math.sqrt(2.0)
        full = np.concatenate([pos[:0:-1], pos])
    else:
        pos = np.concatenate([[0.0], v])
        full = np.concatenate([-pos[:0:-1], pos])
    return np.concatenate([[0.0], full, [0.0]])


def grid_points(g: GridSpec):
    return np.linspace(-g.half_width, g.half_width, g.points)


def grid_spectrum(pot, g: GridSpec, return_vectors=False):
    """Lowest ``g.count`` levels with parities and a one-refinement error estimate.

    ``convergence_estimate`` is |E(h) - E(2h)|. When ``g.conv_tol`` is set,
    ``converged`` flags each level against it. With ``return_vectors`` the
    full-grid eigenvectors are returned as a second value.
    """
    energies, parities, vectors = _solve(pot, g, return_vectors)
    cg = g.coarsened()
    # a few extra coarse levels so each parity sector is fully covered
    cg = replace(cg, count=min(g.count + 2, (cg.points - 1) // 4))
    coarse, coarse_par, _ = _solve(pot, cg)
    estimate = np.full(len(energies), np.inf)
    for parity in ("even", "odd"):
        fine_idx = [i for i, p in enumerate(parities) if p == parity]
        coarse_e = [e for e, p in zip(coarse, coarse_par) if p == parity]
        for j, i in enumerate(fine_idx):
            if j < len(coarse_e):
                estimate[i] = abs(energies[i] - coarse_e[j])
    if g.conv_tol is None:
        converged = [True] * len(energies)
    else:
        converged = [bool(c <= g.conv_tol) for c in estimate]
    result = OracleResult(energies, parities, estimate, g, converged)
    if return_vectors:
        return result, vectors
    return result


def classify_parity(psi, x=None) -> str:
    """'even' or 'odd' from the overlap of psi(x) with psi(-x).

    Falls back to counting sign changes when the overlap is ambiguous.
    """
    psi = np.asarray(psi, dtype=float)
    if x is not None:
        x = np.asarray(x, dtype=float)
        if x.shape != psi.shape or not np.allclose(x, -x[::-1], atol=1e-12 * max(1.0, np.abs(x).max())):
            raise ValueError("parity needs a grid symmetric about x = 0")
    overlap = np.sum(psi * psi[::-1]) / np.sum(psi * psi)
    if overlap > 0.5:
        return "even"
    if overlap < -0.5:
        return "odd"
    big = psi[np.abs(psi) > 1e-8 * np.abs(psi).max()]
    nodes = np.count_nonzero(np.diff(np.sign(big)))
    return "even" if nodes % 2 == 0 else "odd"


def _allowed_region_action(pot, E, x_hi):
    x = np.linspace(0.0, x_hi, 4001)
    k = np.sqrt(2 * np.clip(E - pot(x), 0.0, None))
    return 2 * trapezoid(k, x)


def _outer_crossing(pot, level, x_start=1.0):
    """Outermost x > 0 with V(x) = level, for a potential growing at infinity."""
    hi = x_start
    while pot(hi) <= level:
        hi *= 2
        if hi > 1e6:
            raise UnboundedPotentialError("potential does not rise above the requested energy")
    xs = np.linspace(0.0, hi, 2001)
    vs = pot(xs) - level
    below = np.nonzero(vs <= 0)[0]
    if len(below) == 0:
        return 0.0
    i = below[-1]
    return brentq(lambda t: pot(t) - level, xs[i], xs[i + 1])


def estimate_level(pot, count):
    """Semiclassical energy of level ``count - 1`` (Bohr-Sommerfeld count)."""
    vmin = float(np.min(pot(np.linspace(0, _outer_crossing(pot, pot(0.0) + 1.0), 2001))))
    target = count - 0.5

    def n_of(E):
        return _allowed_region_action(pot, E, _outer_crossing(pot, E)) / math.pi - target

    hi = vmin + 1.0
    while n_of(hi) < 0:
        hi = vmin + 2 * (hi - vmin)
    return brentq(n_of, vmin, hi, xtol=1e-6)


def default_grid_for(pot: EvenPolynomialPotential, count, points_per_wavelength=20,
                     margin=50.0, tail_decades=10, safety=1.15):
    """Choose a grid whose walls are classically and quantum-mechanically far away.

    L satisfies V(L) >= E_max + ``margin`` and a semiclassical decay of the
    top level by ``tail_decades`` orders of magnitude before the wall; the
    spacing puts ``points_per_wavelength`` nodes on the shortest local
    wavelength.
    """
    lead = pot.leading
    if lead is None or lead[1] <= 0:
        raise UnboundedPotentialError("leading coefficient must be positive for bound states")
    e_max = estimate_level(pot, count)
    L = _outer_crossing(pot, e_max + margin)
    x_turn = _outer_crossing(pot, e_max)
    need = tail_decades * math.log(10)

    def decay(xr):
        xs = np.linspace(x_turn, xr, 2001)
        return trapezoid(np.sqrt(2 * np.clip(pot(xs) - e_max, 0.0, None)), xs) - need

    if decay(L) < 0:
        hi = 2 * L
        while decay(hi) < 0:
            hi *= 2
        L = brentq(decay, L, hi)
    L *= safety
    vmin = float(np.min(pot(np.linspace(0, L, 4001))))
    k_max = math.sqrt(2 * max(e_max - vmin, 1e-12))
    h = 2 * math.pi / k_max / points_per_wavelength
    half = int(math.ceil(L / h))
    half += (-half) % 2  # points = 2*half + 1 with half even keeps x = 0 on the coarse grid
    points = max(2 * half + 1, 101)
    while count >= points / 4:
        points = 2 * points - 1
    return GridSpec(L, points, count)
