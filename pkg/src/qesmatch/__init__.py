"""Deformed-oscillator spectra, their WKB-equivalent potentials, and the
matching to quasi-exactly soluble sextic oscillators."""

from .matching import Branch, MatchSolution, feasibility_window, solve_match
from .nogo import check_pt, check_Q, check_q_phase, check_q_real
from .oracle import GridSpec, OracleResult, classify_parity, default_grid_for, grid_spectrum
from .potentials import (
    EvenPolynomialPotential,
    pt_closed,
    pt_taylor,
    wkb_Q,
    wkb_q_phase,
    wkb_q_real,
    wkb_suq11,
)
from .qes import QespParams, qes_char_poly_n3, qes_levels, qes_levels_n1_closed, qesp_potential
from .spectra import (
    DeformationParam,
    Suq11Params,
    big_q_number,
    q_number,
    spectrum_pt_limit,
    spectrum_q_phase,
    spectrum_q_real,
    spectrum_Q,
    spectrum_suq11,
)
from .tables import EnergyLevel, EnergyTable

__version__ = "0.1.0"
