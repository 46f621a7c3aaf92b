import json

import numpy as np
import pytest

from qesmatch.oracle import (
    DomainTooSmallError,
    GridSpec,
    UnboundedPotentialError,
    classify_parity,
    default_grid_for,
    grid_points,
    grid_spectrum,
)
from qesmatch.potentials import EvenPolynomialPotential, TabulatedPotential
from qesmatch.qes import QespParams, qes_eigenvalues, qes_levels_n1_closed, qesp_potential

HARMONIC = EvenPolynomialPotential(0.0, {2: 0.5}, 2)
SINGLE_WELL = qesp_potential(QespParams(b=12.589097, n=1))
DOUBLE_WELL = qesp_potential(QespParams(b=-12.108743, n=1))


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(1.0, 100, 3)
        with pytest.raises(ValueError):
            GridSpec(1.0, 99, 3)
        with pytest.raises(ValueError):
            GridSpec(1.0, 101, 26)
        with pytest.raises(ValueError):
            GridSpec(0.0, 101, 3)

    def test_coarsened_keeps_origin(self):
        g = GridSpec(5.0, 4001, 5).coarsened()
        assert g.points % 2 == 1 and g.spacing == pytest.approx(2 * 5.0 / 4000 * 2)
        assert 0.0 in grid_points(g)


class TestHarmonic:
    def test_levels(self):
        r = grid_spectrum(HARMONIC, GridSpec(12.0, 2001, 3))
        np.testing.assert_allclose(r.energies, [0.5, 1.5, 2.5], atol=1e-4)
        assert r.parities == ["even", "odd", "even"]
        assert np.all(np.diff(r.energies) > 0)

    def test_parities_alternate(self):
        r = grid_spectrum(HARMONIC, GridSpec(12.0, 2001, 10))
        assert r.parities == ["even", "odd"] * 5

    def test_eigenvector_parity(self):
        g = GridSpec(12.0, 2001, 4)
        r, vecs = grid_spectrum(HARMONIC, g, return_vectors=True)
        x = grid_points(g)
        assert [classify_parity(v, x) for v in vecs] == r.parities
        assert [classify_parity(v, x) for v in vecs] == ["even", "odd", "even", "odd"]


class TestQes:
    def test_single_well_levels(self):
        r = grid_spectrum(SINGLE_WELL, GridSpec(2.5, 4001, 4))
        even = r.of_parity("even")
        np.testing.assert_allclose(even[:2], [12.4307, 63.1039], rtol=1e-3)

    def test_single_well_second_even_level_parity(self):
        g = GridSpec(2.5, 4001, 4)
        r, vecs = grid_spectrum(SINGLE_WELL, g, return_vectors=True)
        i = int(np.argmin(np.abs(r.energies - 63.1039)))
        assert classify_parity(vecs[i], grid_points(g)) == "even"
        assert i == 2  # E_2: the second even level

    def test_double_well(self):
        g = default_grid_for(DOUBLE_WELL, 4)
        r = grid_spectrum(DOUBLE_WELL, g)
        even = r.of_parity("even")
        np.testing.assert_allclose(even, [-60.7083, -11.9441], rtol=1e-2)
        assert np.all(even < 0)
        # the tunnelling splitting is below double precision: odd partners coincide
        np.testing.assert_allclose(r.of_parity("odd"), even, rtol=1e-9)

    def test_ground_state_equals_b(self):
        for b in (-2.0, 0.0, 3.0):
            r = grid_spectrum(qesp_potential(QespParams(b=b, n=0)), GridSpec(3.5, 4001, 1))
            assert r.energies[0] == pytest.approx(b, abs=5e-4)

    def test_second_order_convergence(self):
        exact = qes_levels_n1_closed(12.589097)[0]
        errs = [abs(grid_spectrum(SINGLE_WELL, GridSpec(2.0, m, 2)).energies[0] - exact)
                for m in (1001, 2001, 4001)]
        for coarse, fine in zip(errs, errs[1:]):
            assert 3.5 <= coarse / fine <= 4.5

    def test_convergence_estimate_bounds_error(self):
        p = QespParams(b=2.0, n=3)
        r = grid_spectrum(qesp_potential(p), GridSpec(3.0, 2001, 8))
        even = r.of_parity("even")
        est = [c for c, q in zip(r.convergence_estimate, r.parities) if q == "even"]
        for e, exact, c in zip(even, qes_eigenvalues(p), est):
            assert abs(e - exact) <= max(1e-3 * abs(exact), c)
        assert np.all(np.isfinite(r.convergence_estimate))


class TestErrors:
    def test_domain_too_small(self):
        with pytest.raises(DomainTooSmallError) as info:
            grid_spectrum(HARMONIC, GridSpec(2.0, 1001, 3))
        assert info.value.suggested_half_width > 2.0

    def test_asymmetric_potential_rejected(self):
        class Tilted:
            def __call__(self, x):
                return 0.5 * np.asarray(x) ** 2 + 0.1 * np.asarray(x)
        with pytest.raises(ValueError):
            grid_spectrum(Tilted(), GridSpec(12.0, 1001, 2))

    def test_zero_potential(self):
        with pytest.raises(UnboundedPotentialError):
            default_grid_for(EvenPolynomialPotential(0.0, {}, 2), 3)

    def test_inverted_potential(self):
        with pytest.raises(UnboundedPotentialError):
            default_grid_for(EvenPolynomialPotential(0.0, {2: -1.0}, 2), 3)

    def test_asymmetric_grid_for_parity(self):
        with pytest.raises(ValueError):
            classify_parity(np.ones(5), np.array([-1.0, 0.0, 1.0, 2.0, 3.0]))

    def test_conv_tol_flags(self):
        r = grid_spectrum(HARMONIC, GridSpec(12.0, 201, 3, conv_tol=1e-8))
        assert r.converged == [False, False, False]


class TestDefaultGrid:
    def test_harmonic(self):
        g = default_grid_for(HARMONIC, 3)
        assert g.half_width == pytest.approx(12.0, abs=0.5)
        assert HARMONIC(g.half_width) >= 2.5 + 50
        r = grid_spectrum(HARMONIC, g)
        # 20 points per wavelength is coarse; the refinement estimate must cover the error
        err = np.abs(r.energies - [0.5, 1.5, 2.5])
        assert np.all(err <= r.convergence_estimate)
        fine = grid_spectrum(HARMONIC, default_grid_for(HARMONIC, 3, points_per_wavelength=100))
        np.testing.assert_allclose(fine.energies, [0.5, 1.5, 2.5], rtol=2e-4)

    def test_default_grid_width(self):
        g = default_grid_for(SINGLE_WELL, 20)
        assert g.half_width <= 4.0
        r = grid_spectrum(SINGLE_WELL, g)
        assert len(r.energies) == 20


class TestParity:
    def test_overlap(self):
        x = np.linspace(-5, 5, 1001)
        assert classify_parity(np.exp(-x * x), x) == "even"
        assert classify_parity(x * np.exp(-x * x), x) == "odd"

    def test_node_fallback(self):
        # g + 2xg has zero overlap with its mirror image; the single node decides
        x = np.linspace(-5, 5, 1001)
        g = np.exp(-x * x)
        assert classify_parity(g + 2 * x * g, x) == "odd"


class TestIO:
    def test_serialization(self):
        r = grid_spectrum(HARMONIC, GridSpec(12.0, 2001, 3))
        d = json.loads(r.to_json())
        assert d["parities"] == ["even", "odd", "even"]
        assert r.to_csv().splitlines()[0] == "index,parity,energy,convergence_estimate"
        t = r.to_table()
        assert {lv.provenance for lv in t.levels} == {"grid-oracle"}

    def test_tabulated_potential(self, tmp_path):
        x = np.linspace(-14, 14, 28001)
        path = tmp_path / "harm.txt"
        np.savetxt(path, np.column_stack([x, 0.5 * x * x]))
        pot = TabulatedPotential.from_file(path)
        r = grid_spectrum(pot, GridSpec(12.0, 2001, 3))
        np.testing.assert_allclose(r.energies, [0.5, 1.5, 2.5], atol=1e-3)
