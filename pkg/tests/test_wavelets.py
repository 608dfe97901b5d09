import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frwt import (CATALOG_NAMES, CatalogError, NotAWaveletError, OrderMismatchError,
                  SampledSignal, admissibility_constant, build_uniform_grid, catalog,
                  combine_wavelets, cross_admissibility, integrate, make_wavelet, norm)

G = build_uniform_grid(-8, 8, 513)
HAAR_GRID = build_uniform_grid(-1, 2, 385)
MEXHAT_C1 = 2 * np.pi


def grid_for(name):
    return HAAR_GRID if name == "haar" else G


def box(grid, lo, hi):
    t = grid.nodes
    v = ((t > lo) & (t < hi)).astype(float)
    v[np.isclose(t, lo) | np.isclose(t, hi)] = 0.5
    return SampledSignal(grid, v)


def unit_gaussian(grid, sigma):
    g = SampledSignal.from_function(grid, lambda t: np.exp(-t * t / (2 * sigma ** 2)))
    return g / integrate(g).real


class TestAdmissibility:
    def test_mexican_hat_theta_one(self):
        c, divergent = admissibility_constant(catalog("mexican_hat", G, 1.0).signal, 1.0)
        assert not divergent
        assert c == pytest.approx(MEXHAT_C1, rel=1e-6)

    def test_mexican_hat_theta_half(self):
        assert catalog("mexican_hat", G, 0.5).admissibility == pytest.approx(np.pi, rel=1e-6)

    def test_closed_form_quadrature_oracle(self):
        # independent quadrature of |ĝ(ω)|²/|ω| with ĝ(ω) = √(2π) ω² exp(-ω²/2)
        from scipy.integrate import quad
        oracle = 2 * quad(lambda w: 2 * np.pi * w ** 3 * np.exp(-w * w), 0, np.inf)[0]
        assert oracle == pytest.approx(MEXHAT_C1, rel=1e-12)
        assert catalog("mexican_hat", G, 1.0).admissibility == pytest.approx(oracle, rel=1e-6)

    @pytest.mark.parametrize("theta", [0.25, 0.5, 1.0])
    def test_gaussian_diverges(self, theta):
        gauss = SampledSignal.from_function(G, lambda t: np.exp(-t * t))
        res = admissibility_constant(gauss, theta)
        assert res.divergent
        assert np.all(np.diff(res.partial_sums) > 0)
        with pytest.raises(NotAWaveletError, match="diverges"):
            make_wavelet(gauss, theta)

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    @pytest.mark.parametrize("theta", [0.25, 0.5, 0.75])
    def test_scale_law(self, name, theta):
        c1 = catalog(name, grid_for(name), 1.0).admissibility
        assert catalog(name, grid_for(name), theta).admissibility == pytest.approx(theta * c1,
                                                                                   rel=0.01)

    @given(st.floats(0.1, 10), st.floats(0.2, 1.0))
    @settings(max_examples=15, deadline=None)
    def test_quadratic_homogeneity(self, c, theta):
        psi = catalog("mexican_hat", G, theta).signal
        assert admissibility_constant(psi * c, theta).value == pytest.approx(
            c * c * admissibility_constant(psi, theta).value, rel=1e-10)

    @given(st.floats(-2, 2))
    @settings(max_examples=10, deadline=None)
    def test_translation_invariance(self, shift):
        g = build_uniform_grid(-12, 12, 769)
        psi = SampledSignal.from_function(
            g, lambda t: (1 - (t - shift) ** 2) * np.exp(-(t - shift) ** 2 / 2))
        assert admissibility_constant(psi, 0.5).value == pytest.approx(np.pi, rel=1e-5)

    def test_zero_signal(self):
        with pytest.raises(NotAWaveletError):
            admissibility_constant(SampledSignal.zeros(G), 1.0)


class TestCatalog:
    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_mean_zero(self, name):
        wide = build_uniform_grid(-16, 16, 1025)
        assert abs(integrate(catalog(name, wide, 1.0).signal)) < 1e-8

    def test_haar(self):
        w = catalog("haar", build_uniform_grid(-1, 2, 3073), 0.5)
        assert w.compact_support and w.support == (0.0, 1.0)
        # midpoint jump samples make the trapezoid L² error O(step)
        assert w.l2_norm == pytest.approx(1.0, rel=1e-3)

    def test_non_compact(self):
        assert not catalog("mexican_hat", G, 1.0).compact_support

    def test_unknown(self):
        with pytest.raises(CatalogError):
            catalog("unknown", G, 1.0)

    def test_norms_recorded_unnormalized(self):
        w = catalog("mexican_hat", G, 1.0)
        assert w.l2_norm ** 2 == pytest.approx(0.75 * np.sqrt(np.pi), rel=1e-9)
        assert w.l1_norm == pytest.approx(norm(w.signal, 1))


class TestCrossAdmissibility:
    def test_self(self):
        w = catalog("mexican_hat", G, 0.5)
        c = cross_admissibility(w, w)
        assert c.value == w.admissibility and c.value.imag == 0 and c.finite

    def test_cauchy_schwarz(self):
        phi, psi = catalog("mexican_hat", G, 0.5), catalog("dog", G, 0.5)
        c = cross_admissibility(phi, psi)
        assert abs(c.value) <= c.absolute_integral * (1 + 1e-12)
        assert c.absolute_integral <= np.sqrt(phi.admissibility * psi.admissibility)

    @pytest.mark.parametrize("a", CATALOG_NAMES)
    @pytest.mark.parametrize("b", CATALOG_NAMES)
    def test_all_pairs_bounded(self, a, b):
        phi, psi = catalog(a, G, 0.5), catalog(b, G, 0.5)
        c = cross_admissibility(phi, psi)
        assert abs(c.value) <= c.absolute_integral * (1 + 1e-12)
        assert c.absolute_integral <= np.sqrt(phi.admissibility * psi.admissibility) * (1 + 1e-9)

    def test_conjugate_symmetry(self):
        phi, psi = catalog("mexican_hat", G, 0.5), catalog("dog", G, 0.5)
        c1 = cross_admissibility(phi, psi).value
        c2 = cross_admissibility(psi, phi).value
        assert c1 == pytest.approx(np.conj(c2), rel=1e-12)

    def test_even_odd_vanishes(self):
        c = cross_admissibility(catalog("mexican_hat", G, 1.0), catalog("gauss_deriv1", G, 1.0))
        assert abs(c.value) < 1e-8
        assert c.is_degenerate()

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            cross_admissibility(catalog("mexican_hat", G, 1.0), catalog("dog", G, 0.5))


class TestCombineWavelets:
    def test_narrow_gaussian_near_identity(self):
        psi = catalog("mexican_hat", G, 0.5)
        fine = build_uniform_grid(-8, 8, 4097)
        comb = combine_wavelets(catalog("mexican_hat", fine, 0.5), unit_gaussian(fine, 0.05),
                                "star")
        assert comb.admissibility == pytest.approx(psi.admissibility, rel=0.10)

    def test_box_bound(self):
        psi = catalog("mexican_hat", G, 0.5)
        phi = box(G, 0, 1)
        comb = combine_wavelets(psi, phi, "star")
        assert comb.admissibility < norm(phi, 1) ** 2 * psi.admissibility

    @pytest.mark.parametrize("mode", ["star", "circ"])
    @pytest.mark.parametrize("name", ["mexican_hat", "dog", "gauss_deriv1"])
    def test_bound_all_pairs(self, name, mode):
        psi = catalog(name, G, 0.5)
        for phi in (box(G, 0, 1), unit_gaussian(G, 0.3) * 2.0,
                    SampledSignal.from_function(G, lambda t: np.exp(-(t - 1) ** 2) * np.sin(2 * t))):
            c = combine_wavelets(psi, phi, mode).admissibility
            assert c <= norm(phi, 1) ** 2 * psi.admissibility

    def test_zero_phi(self):
        with pytest.raises(NotAWaveletError):
            combine_wavelets(catalog("mexican_hat", G, 0.5), SampledSignal.zeros(G))

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            combine_wavelets(catalog("mexican_hat", G, 0.5), box(G, 0, 1), "plus")

    def test_compact_combination(self):
        haar = catalog("haar", HAAR_GRID, 0.5)
        comb = combine_wavelets(haar, box(HAAR_GRID, 0, 0.25), "star")
        assert comb.compact_support
