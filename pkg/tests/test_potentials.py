import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from scipy.integrate import quad
from scipy.optimize import brentq
from hypothesis import given
from hypothesis import strategies as st

from qesmatch.potentials import (
    EvenPolynomialPotential,
    TabulatedPotential,
    evaluate,
    load_potential,
    pt_closed,
    pt_taylor,
    q_oscillator_vmin,
    wkb_Q,
    wkb_q_phase,
    wkb_q_real,
    wkb_suq11,
)
from qesmatch.spectra import DeformationParam, Suq11Params, spectrum_q_phase, spectrum_Q, spectrum_suq11


def direct_q_phase(omega, tau, x):
    # the series as written, without expanding into x powers
    re = (1 / tau) * math.sqrt(0.5) * math.sqrt(2 * math.sin(tau / 2) / omega)
    u = x / (2 * re)
    pre = (tau / (2 * math.sin(tau / 2))) ** 2 * omega**2 / 2 * x**2
    return pre * (1 - 8 / 15 * u**4 + 4448 / 1575 * u**8 - 345344 / 675675 * u**12)


def direct_q_real(omega, tau, x):
    rh = (1 / tau) * math.sqrt(0.5) * math.sqrt(2 * math.sinh(tau / 2) / omega)
    u = x / (2 * rh)
    pre = (tau / (2 * math.sinh(tau / 2))) ** 2 * omega**2 / 2 * x**2
    return pre * (1 + 8 / 15 * u**4 + 4448 / 1575 * u**8 + 345344 / 675675 * u**12)


def exact_Q(omega, Q, x):
    # Abel inversion of the Bohr-Sommerfeld condition for the Q spectrum:
    # x = sqrt(2) asinh(t) / (ln Q sqrt(beta) sqrt(1 + t^2)), V - V_min = beta t^2
    beta = omega * (Q + 1) / (2 * math.sqrt(Q) * (Q - 1))
    y = abs(x * math.log(Q)) * math.sqrt(beta / 2)
    t = brentq(lambda t: math.asinh(t) / math.sqrt(1 + t * t) - y, 0.0, 10.0)
    vmin = omega * (math.sqrt(Q) - 1) / (2 * math.sqrt(Q) * (math.sqrt(Q) + 1))
    return vmin + beta * t * t


def bohr_sommerfeld_index(pot, E):
    xs = np.linspace(0, 20, 20001)
    i = int(np.argmax(pot(xs) > E))
    xt = brentq(lambda x: pot(x) - E, xs[i - 1], xs[i])
    action = quad(lambda x: math.sqrt(max(2 * (E - pot(x)), 0.0)), 0, xt, limit=200)[0]
    return 2 * action / math.pi - 0.5


def direct_suq11(A, tau, N, E0, x):
    u = math.sqrt(2 * A) * x
    s, c = math.sin(tau), math.cos(N * tau)
    vmin = E0 - A * (math.cos(tau) - c) / (2 * s * s)
    br = (1 - 2 / 3 * tau**2 * c / s**2 * u**2
          + tau**4 * (23 * c * c - 6) / (45 * s**4) * u**4
          - 2 / 315 * tau**6 * (67 * c * c - 36) * c / s**6 * u**6)
    return vmin + A / 4 * (tau * math.sin(N * tau) / s**2) ** 2 * u**2 * br


XS = np.linspace(-0.9, 0.9, 13)


class TestQPhase:
    def test_harmonic_limit(self):
        pot = wkb_q_phase(1.3, 1e-13)
        assert pot.coeffs == {2: pytest.approx(0.5 * 1.3**2)}

    def test_small_tau_close_to_harmonic(self):
        pot = wkb_q_phase(1.0, 1e-4)
        assert pot.coeff(2) == pytest.approx(0.5, rel=1e-8)
        assert abs(pot.coeff(6)) < 1e-8

    def test_bracket_and_no_quartic(self):
        from qesmatch.potentials import Q_PHASE_BRACKET
        assert Q_PHASE_BRACKET == (Fraction(-8, 15), Fraction(4448, 1575), Fraction(-345344, 675675))
        for tau in (0.1, 0.5, 2.0):
            pot = wkb_q_phase(1.0, tau)
            assert pot.coeff(4) == 0.0
            assert sorted(pot.coeffs) == [2, 6, 10, 14]

    @pytest.mark.parametrize("omega,tau", [(1.0, 0.5), (2.0, 1.2), (0.7, 0.05)])
    def test_matches_direct_series(self, omega, tau):
        pot = wkb_q_phase(omega, tau)
        want = [direct_q_phase(omega, tau, x) for x in XS]
        np.testing.assert_allclose(pot(XS), want, rtol=1e-12, atol=1e-14)

    def test_reproduces_spectrum_semiclassically(self):
        pot = wkb_q_phase(1.0, 0.1)
        for n in range(3):
            e = spectrum_q_phase(n, DeformationParam.q_phase(0.1))
            assert bohr_sommerfeld_index(pot, e) == pytest.approx(n, abs=1e-2)

    def test_turns_over_at_order_six(self):
        pot = wkb_q_phase(1.0, 0.8, truncation_order=6)
        x = np.linspace(0.01, 20, 4000)
        dv = 2 * pot.coeff(2) * x + 6 * pot.coeff(6) * x**5
        assert np.any(dv < 0) and np.any(dv > 0)


class TestQReal:
    def test_harmonic_limit(self):
        assert wkb_q_real(2.0, 0.0).coeffs == {2: 2.0}

    def test_bracket(self):
        from qesmatch.potentials import Q_REAL_BRACKET
        assert Q_REAL_BRACKET == (Fraction(8, 15), Fraction(4448, 1575), Fraction(345344, 675675))

    @pytest.mark.parametrize("omega,tau", [(1.0, 0.5), (3.0, 2.0)])
    def test_matches_direct_series(self, omega, tau):
        pot = wkb_q_real(omega, tau)
        assert pot.coeff(4) == 0.0
        np.testing.assert_allclose(pot(XS), [direct_q_real(omega, tau, x) for x in XS], rtol=1e-12)

    @given(st.floats(1e-3, 3.0), st.floats(0.1, 5.0))
    def test_monotone_on_positive_axis(self, tau, omega):
        pot = wkb_q_real(omega, tau)
        x = np.linspace(0, 5, 200)
        assert np.all(np.diff(pot(x)) >= 0)


class TestQBase:
    def test_limit(self):
        pot = wkb_Q(1.0, 1.0 + 1e-13)
        assert pot.v_min == 0.0 and pot.coeffs == {2: 0.5}

    def test_near_limit(self):
        pot = wkb_Q(1.0, 1.0 + 1e-6)
        assert abs(pot.v_min) < 1e-6
        assert pot.coeff(2) == pytest.approx(0.5, rel=1e-6)

    def test_vmin(self):
        assert q_oscillator_vmin(1.0, 4.0) == pytest.approx(1 / 12)
        assert wkb_Q(1.0, 4.0).v_min == pytest.approx(1 / 12)

    def test_bracket(self):
        from qesmatch.potentials import Q_BASE_BRACKET
        assert Q_BASE_BRACKET == (Fraction(-2, 3), Fraction(23, 45), Fraction(-134, 315), Fraction(5297, 14175))

    @pytest.mark.parametrize("omega,Q", [(1.0, 1.5), (2.5, 1.3)])
    def test_matches_exact_inversion_near_origin(self, omega, Q):
        pot = wkb_Q(omega, Q, truncation_order=10)
        xs = np.linspace(-0.15, 0.15, 7)
        np.testing.assert_allclose(pot(xs), [exact_Q(omega, Q, x) for x in xs], rtol=1e-7)

    def test_quartic_sign(self):
        # level spacing grows for Q > 1 (steeper well) and shrinks for Q < 1
        assert wkb_Q(1.0, 1.5).coeff(4) > 0
        assert wkb_Q(1.0, 0.8).coeff(4) < 0

    @pytest.mark.parametrize("Q", [1.05, 0.95])
    def test_reproduces_spectrum_semiclassically(self, Q):
        pot = wkb_Q(1.0, Q)
        for n in range(3):
            e = spectrum_Q(n, DeformationParam.q_base(Q))
            assert bohr_sommerfeld_index(pot, e) == pytest.approx(n, abs=2e-3)


class TestSuq11:
    @pytest.mark.parametrize(
        "N,tau,A,want",
        [
            (151, 0.0144503, 0.4343473, (303.02, 0.3324, 0.02640)),
            (325, 0.00671384, 0.2960795, (652.20, 0.2265, 0.01227)),
            (61, 0.0157377, 0.4538508, (279.095, -0.3471, 0.02866)),
        ],
    )
    def test_published_coefficients(self, N, tau, A, want):
        pot = wkb_suq11(Suq11Params(A, tau, N), truncation_order=6)
        c2 = pot.coeff(2)
        assert c2 == pytest.approx(want[0], rel=5e-3)
        assert pot.coeff(4) / c2 == pytest.approx(want[1], rel=5e-3)
        assert pot.coeff(6) / c2 == pytest.approx(want[2], rel=5e-3)

    def test_reproduces_spectrum_semiclassically(self):
        p = Suq11Params(0.4, 0.01, 60, 0.0)
        pot = wkb_suq11(p, truncation_order=8)
        for n in range(4):
            assert bohr_sommerfeld_index(pot, spectrum_suq11(n, p)) == pytest.approx(n, abs=1e-3)

    def test_matches_direct_series(self):
        A, tau, N, E0 = 0.4343473, 0.0144503, 151, 1636.8943
        pot = wkb_suq11(Suq11Params(A, tau, N, E0))
        np.testing.assert_allclose(pot(XS), [direct_suq11(A, tau, N, E0, x) for x in XS], rtol=1e-10)

    @given(st.integers(3, 400), st.floats(1e-4, 0.05), st.floats(0.05, 3.0))
    def test_quartic_sign_follows_cos(self, N, tau, A):
        c = math.cos(N * tau)
        if abs(c) < 1e-6 or math.sin(N * tau) == 0:
            return
        pot = wkb_suq11(Suq11Params(A, tau, N), truncation_order=6)
        assert np.sign(pot.coeff(4)) == -np.sign(c)

    def test_small_tau_reduces_to_pt_taylor(self):
        for A, N in ((1.0, 3), (0.4, 20)):
            deformed = wkb_suq11(Suq11Params(A, 1e-7, N), truncation_order=8)
            pt = pt_taylor(A, N, truncation_order=8)
            for p in (2, 4, 6, 8):
                assert deformed.coeff(p) == pytest.approx(pt.coeff(p), rel=1e-4)


class TestPoschlTeller:
    def test_taylor_matches_symbolic_series(self):
        A, N = sp.Integer(1), 3
        x = sp.Symbol("x")
        series = sp.series(A * N**2 / 4 * sp.tanh(sp.sqrt(2 * A) * x) ** 2, x, 0, 10).removeO()
        pot = pt_taylor(1.0, N, truncation_order=8)
        for p in (2, 4, 6, 8):
            want = float(series.coeff(x, p))
            assert pot.coeff(p) == pytest.approx(want, rel=1e-14)

    def test_bracket(self):
        from qesmatch.potentials import PT_BRACKET
        assert PT_BRACKET == (Fraction(-2, 3), Fraction(17, 45), Fraction(-62, 315))

    def test_closed_form(self):
        assert pt_closed(1.0, 3, 0.7, 0.0) == pytest.approx(0.7)
        assert pt_closed(1.0, 3, 0.7, 50.0) == pytest.approx(0.7 + 9 / 4)
        assert pt_closed(2.0, 2, 0.0, 0.5) == pytest.approx(2 * math.tanh(1.0) ** 2)
        assert pt_closed(2.0, 2, 0.0, 0.5) == pytest.approx(1.160051, abs=1e-6)


class TestEvenPolynomial:
    def test_evaluate(self):
        assert evaluate(EvenPolynomialPotential(2.5, {}, 2), 7.0) == 2.5
        assert evaluate(EvenPolynomialPotential(0.0, {2: 1.0}, 2), 2.0) == 4.0
        sextic = EvenPolynomialPotential(0.0, {2: 303.02, 4: 303.02 * 0.3324, 6: 303.02 * 0.02640}, 6)
        assert sextic(1.0) == pytest.approx(303.02 * (1 + 0.3324 + 0.02640))
        assert sextic(1.0) == pytest.approx(411.67, rel=5e-3)

    def test_rejects_odd_or_high_powers(self):
        with pytest.raises(ValueError):
            EvenPolynomialPotential(0.0, {3: 1.0}, 6)
        with pytest.raises(ValueError):
            EvenPolynomialPotential(0.0, {8: 1.0}, 6)
        with pytest.raises(ValueError):
            EvenPolynomialPotential(0.0, {}, 16)

    def test_json_round_trip(self):
        pot = wkb_suq11(Suq11Params(0.4343473, 0.0144503, 151, 1636.8943))
        back = EvenPolynomialPotential.from_json(pot.to_json())
        assert back == pot
        d = pot.to_dict()
        assert set(d) == {"v_min", "coeffs", "truncation_order"}
        assert all(isinstance(k, str) for k in d["coeffs"])

    @given(st.floats(-3, 3))
    def test_parity_even(self, x):
        for pot in (wkb_q_phase(1.0, 0.3), wkb_q_real(1.0, 0.3), wkb_Q(1.0, 2.0),
                    wkb_suq11(Suq11Params(0.4, 0.01, 150)), pt_taylor(1.0, 2)):
            assert pot(x) == pot(-x)

    def test_truncated(self):
        pot = wkb_q_real(1.0, 0.5).truncated(6)
        assert sorted(pot.coeffs) == [2, 6]

    def test_tabulated(self, tmp_path):
        path = tmp_path / "v.csv"
        x = np.linspace(-2, 2, 41)
        np.savetxt(path, np.column_stack([x, x**2]), delimiter=",", header="x,V")
        tab = load_potential(path)
        assert isinstance(tab, TabulatedPotential)
        assert tab(0.05) == pytest.approx(0.5 * (0.0 + 0.01))
        jpath = tmp_path / "v.json"
        jpath.write_text(EvenPolynomialPotential(1.0, {2: 2.0}, 2).to_json())
        assert load_potential(jpath)(1.0) == 3.0
