import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frwt import (DegeneratePairError, GridMismatchError, NotAWaveletError,
                  OrderMismatchError, SampledSignal, ScaleTranslationGrid, Scalogram,
                  ZeroScaleError, build_scale_grid, build_uniform_grid, catalog,
                  cfrwt_forward, cfrwt_forward_spectral, combine_wavelets, convolve, correlate,
                  cross_admissibility, dilate_translate, frft_forward, inner_product, integrate,
                  norm, orthogonality_pairing, range_membership, reconstruct, reproducing_kernel,
                  spectral_grid, tail_mass, transform_of_combination,
                  transform_with_combined_wavelet, weighted_inner_product)
from frwt.grids import trapezoid_weights

T = build_uniform_grid(-8, 8, 513)
P = build_uniform_grid(-8, 8, 2049)
B = build_uniform_grid(-16, 16, 513)
MEXHAT_L2SQ = 0.75 * np.sqrt(np.pi)


def windowed_sine(grid=T):
    return SampledSignal.from_function(grid, lambda t: np.exp(-t * t / 8) * np.sin(3 * t))


def single(b_grid, a, theta):
    return ScaleTranslationGrid(b_grid, [a], theta, [1.0])


@pytest.fixture(scope="module")
def mh_half():
    return catalog("mexican_hat", P, 0.5)


@pytest.fixture(scope="module")
def recon_case(mh_half):
    f = windowed_sine()
    grid = build_scale_grid(B, 0.5)
    return f, grid, cfrwt_forward(f, mh_half, grid, "spectral")


class TestScaleGrid:
    def test_layout(self):
        g = build_scale_grid(B, 0.5, 0.125, 8, 48)
        assert g.shape == (96, 513)
        assert np.all(g.scales[:48] < 0) and np.all(g.scales[48:] > 0)
        np.testing.assert_allclose(g.scales[:48], -g.scales[48:][::-1])

    def test_measure_weights(self):
        # ∫ da/|a|^(1/θ+1) over [1/8, 8] in log variables
        g = build_scale_grid(B, 0.5, 0.125, 8, 400, signed=False)
        exact = (0.125 ** -2 - 8.0 ** -2) / 2
        assert np.sum(g.scale_weights) == pytest.approx(exact, rel=1e-4)

    def test_invalid(self):
        with pytest.raises(GridMismatchError):
            build_scale_grid(B, 0.5, 2, 1, 10)
        with pytest.raises(ZeroScaleError):
            ScaleTranslationGrid(B, [0.0, 1.0], 0.5, [1, 1])


class TestForward:
    def test_unit_overlap(self, mh_half):
        t = build_uniform_grid(-16, 16, 4097)
        f = dilate_translate(mh_half.signal, 2.0, 1.0, 0.5, grid=t)
        w = cfrwt_forward(f, mh_half, single(build_uniform_grid(1, 2, 2), 2.0, 0.5)).values[0, 0]
        assert w.real == pytest.approx(MEXHAT_L2SQ, rel=0.01)

    def test_odd_signal_even_wavelet(self):
        psi = catalog("mexican_hat", P, 1.0)
        f = SampledSignal.from_function(T, lambda t: (t - 1) * np.exp(-(t - 1) ** 2))
        w = cfrwt_forward(f, psi, single(build_uniform_grid(1, 2, 2), 1.0, 1.0)).values[0, 0]
        assert abs(w) < 1e-8

    @given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
    @settings(max_examples=10, deadline=None)
    def test_linearity(self, c):
        psi = catalog("mexican_hat", build_uniform_grid(-8, 8, 257), 0.5)
        g = build_scale_grid(build_uniform_grid(-8, 8, 65), 0.5, 0.5, 2, 4)
        f = windowed_sine(build_uniform_grid(-8, 8, 257))
        h = SampledSignal.from_function(f.grid, lambda t: np.exp(-(t + 1) ** 2))
        lhs = cfrwt_forward(f * c + h, psi, g).values
        rhs = c * cfrwt_forward(f, psi, g).values + cfrwt_forward(h, psi, g).values
        assert np.abs(lhs - rhs).max() <= 1e-12 * (1 + abs(c)) * np.abs(rhs).max() + 1e-15

    def test_definition(self, mh_half):
        # W(b, a) = <f, ψ_{a,b,θ}> at a few points, on a fine common grid
        f = windowed_sine()
        g = ScaleTranslationGrid(build_uniform_grid(-1, 1, 3), [-1.5, 0.7], 0.5, [1, 1])
        W = cfrwt_forward(f, mh_half, g).values
        fine = build_uniform_grid(-8, 8, 8193)
        ff = SampledSignal(fine, f(fine.nodes))
        for i, a in enumerate(g.scales):
            for j, b in enumerate(g.b):
                ref = inner_product(ff, dilate_translate(mh_half.signal, a, b, 0.5, grid=fine))
                assert abs(W[i, j] - ref) < 1e-4 * np.abs(W).max()

    def test_spectral_agreement(self, mh_half, recon_case):
        f, grid, Ss = recon_case
        Sd = cfrwt_forward(f, mh_half, grid, "direct")
        assert np.linalg.norm(Sd.values - Ss.values) / np.linalg.norm(Sd.values) < 1e-4

    def test_zero_spectrum(self, mh_half):
        xi = spectral_grid(16.0, 1024)
        Z = frft_forward(SampledSignal.zeros(T), 0.5, xi)
        S = cfrwt_forward_spectral(Z, mh_half.spectrum, build_scale_grid(B, 0.5, 0.5, 2, 4))
        assert not np.any(S.values)

    def test_shift_covariance(self, mh_half):
        f = windowed_sine()
        g = build_scale_grid(B, 0.5, 0.25, 4, 6)
        c = 1.0  # a whole number of b steps
        shifted = dilate_translate(f, 1.0, c, 0.5)
        W = cfrwt_forward(f, mh_half, g, "spectral").values
        Ws = cfrwt_forward(shifted, mh_half, g, "spectral").values
        k = int(round(c / B.step))
        inner = slice(64, B.count - 64)
        sh = slice(64 + k, B.count - 64 + k)
        assert np.abs(Ws[:, sh] - W[:, inner]).max() < 1e-3 * np.abs(W).max()

    def test_spectral_modulus_matches_direct(self, mh_half):
        f = windowed_sine()
        g = build_scale_grid(B, 0.5, 0.5, 2, 4)
        d = np.abs(cfrwt_forward(f, mh_half, g, "direct").values)
        s = np.abs(cfrwt_forward(f, mh_half, g, "spectral").values)
        assert np.abs(d - s).max() < 1e-6 * max(1.0, d.max()) * 100

    def test_order_mismatch(self, mh_half):
        with pytest.raises(OrderMismatchError):
            cfrwt_forward(windowed_sine(), mh_half, build_scale_grid(B, 1.0, 0.5, 2, 4))


class TestOrthogonality:
    @pytest.mark.parametrize("theta", [0.5, 1.0])
    @pytest.mark.parametrize("name", ["mexican_hat", "dog", "gauss_deriv1"])
    def test_parseval(self, name, theta):
        # wavelets whose spectra vanish only linearly at 0 need the wider range
        psi = catalog(name, P, theta)
        f = windowed_sine()
        S = cfrwt_forward(f, psi, build_scale_grid(B, theta, 1 / 32, 32, 64), "spectral")
        assert orthogonality_pairing(S, S).real == pytest.approx(
            psi.admissibility * norm(f) ** 2, rel=0.03)

    @pytest.mark.parametrize("theta", [0.5, 1.0])
    def test_haar_parseval(self, theta):
        psi = catalog("haar", build_uniform_grid(-1, 2, 769), theta)
        f = windowed_sine()
        S = cfrwt_forward(f, psi, build_scale_grid(B, theta), "spectral")
        assert orthogonality_pairing(S, S).real == pytest.approx(
            psi.admissibility * norm(f) ** 2, rel=0.03)

    def test_orthogonal_signals(self, mh_half):
        g = build_scale_grid(B, 0.5)
        f = windowed_sine()
        e = SampledSignal.from_function(T, lambda t: np.exp(-t * t / 6) * np.cos(2.5 * t))
        assert abs(inner_product(f, e)) < 1e-12
        pair = orthogonality_pairing(cfrwt_forward(f, mh_half, g, "spectral"),
                                     cfrwt_forward(e, mh_half, g, "spectral"))
        assert abs(pair) < 1e-3 * mh_half.admissibility * norm(f) * norm(e)

    def test_orthogonal_wavelets(self):
        th = 1.0
        phi, psi = catalog("mexican_hat", P, th), catalog("gauss_deriv1", P, th)
        assert cross_admissibility(phi, psi).is_degenerate()
        g = build_scale_grid(B, th)
        f = windowed_sine()
        h = SampledSignal.from_function(T, lambda t: np.exp(-(t - 0.5) ** 2 / 4) * np.cos(2 * t))
        pair = orthogonality_pairing(cfrwt_forward(f, phi, g, "spectral"),
                                     cfrwt_forward(h, psi, g, "spectral"))
        ref = np.sqrt(phi.admissibility * psi.admissibility) * norm(f) * norm(h)
        assert abs(pair) < 1e-3 * ref

    def test_grid_mismatch(self, recon_case):
        S = recon_case[2]
        other = Scalogram(build_scale_grid(B, 0.5, 0.25, 4, 48), S.values)
        with pytest.raises(GridMismatchError):
            orthogonality_pairing(S, other)


class TestReconstruction:
    def test_single_wavelet(self, mh_half, recon_case):
        f, _, S = recon_case
        rec = reconstruct(S, mh_half, mh_half.admissibility, T)
        assert norm(rec - f) / norm(f) < 0.05
        assert tail_mass(S) < 0.05

    def test_two_wavelet_pair(self, mh_half, recon_case):
        f, _, S = recon_case
        narrow = SampledSignal.from_function(build_uniform_grid(-1, 1, 129),
                                             lambda t: np.exp(-t * t / 0.02))
        psi = combine_wavelets(mh_half, narrow / integrate(narrow).real, "star")
        rec = reconstruct(S, psi, cross_admissibility(mh_half, psi), T)
        assert norm(rec - f) / norm(f) < 0.07

    def test_nested_ranges_improve(self, mh_half):
        f = windowed_sine()
        errs = []
        for lo, hi, n in ((0.5, 2, 16), (0.25, 4, 32), (0.125, 8, 48)):
            S = cfrwt_forward(f, mh_half, build_scale_grid(B, 0.5, lo, hi, n), "spectral")
            errs.append(norm(reconstruct(S, mh_half, mh_half.admissibility, T) - f) / norm(f))
        assert errs[0] > errs[1] > errs[2]

    def test_zero(self, mh_half, recon_case):
        S = recon_case[2].scaled(0.0)
        assert not np.any(reconstruct(S, mh_half, mh_half.admissibility, T).values)

    def test_degenerate_pair(self, recon_case):
        phi, psi = catalog("mexican_hat", P, 0.5), catalog("gauss_deriv1", P, 0.5)
        with pytest.raises(DegeneratePairError):
            reconstruct(recon_case[2], psi, cross_admissibility(phi, psi), T)
        with pytest.raises(DegeneratePairError):
            reconstruct(recon_case[2], psi, 0.0, T)


class TestReproducingKernel:
    def test_coincident_points(self):
        psi = catalog("mexican_hat", P, 1.0)
        k = reproducing_kernel(psi, psi, psi.admissibility, (0.0, 1.0), (0.0, 1.0))
        assert k.real == pytest.approx(MEXHAT_L2SQ / (2 * np.pi), rel=1e-4)

    def test_disjoint_haar(self):
        haar = catalog("haar", build_uniform_grid(-1, 2, 193), 1.0)
        assert reproducing_kernel(haar, haar, haar.admissibility, (0.0, 1.0), (3.0, 1.0)) == 0

    @given(st.floats(-4, 4), st.floats(0.25, 4), st.booleans())
    @settings(max_examples=25, deadline=None)
    def test_bound(self, b, a, negative):
        psi = catalog("mexican_hat", P, 0.5)
        k = reproducing_kernel(psi, psi, psi.admissibility, (0.3, 1.2), (b, -a if negative else a))
        assert abs(k) * psi.admissibility <= psi.l2_norm ** 2 * (1 + 1e-6)

    def test_hermitian(self):
        phi, psi = catalog("mexican_hat", P, 0.5), catalog("dog", P, 0.5)
        k1 = reproducing_kernel(psi, psi, psi.admissibility, (0.3, 1.2), (1.0, -0.7))
        k2 = reproducing_kernel(psi, psi, psi.admissibility, (1.0, -0.7), (0.3, 1.2))
        assert k1 == pytest.approx(np.conj(k2), abs=1e-6)

    def test_degenerate(self):
        psi = catalog("mexican_hat", P, 0.5)
        with pytest.raises(DegeneratePairError):
            reproducing_kernel(psi, psi, 0.0, (0, 1), (0, 1))
        with pytest.raises(ZeroScaleError):
            reproducing_kernel(psi, psi, 1.0, (0, 0), (0, 1))


class TestRangeMembership:
    def test_true_scalogram(self, mh_half, recon_case):
        assert range_membership(recon_case[2], mh_half, mh_half, mh_half.admissibility) < 0.05

    def test_zero_field(self, mh_half, recon_case):
        S = recon_case[2].scaled(0.0)
        assert range_membership(S, mh_half, mh_half, mh_half.admissibility) == 0.0

    def test_white_noise_is_far(self, mh_half):
        rng = np.random.default_rng(12345)
        g = build_scale_grid(build_uniform_grid(-16, 16, 257), 0.5, 0.25, 4, 16)
        noise = Scalogram(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
        assert range_membership(noise, mh_half, mh_half, mh_half.admissibility) > 0.5


def box(grid, lo, hi):
    t = grid.nodes
    v = ((t > lo) & (t < hi)).astype(float)
    v[np.isclose(t, lo) | np.isclose(t, hi)] = 0.5
    return SampledSignal(grid, v)


class TestConvolutionIdentities:
    g = build_uniform_grid(-8, 8, 513)
    sg = build_scale_grid(build_uniform_grid(-16, 16, 1025), 0.5, count=4)

    def burst(self):
        return SampledSignal.from_function(
            self.g, lambda t: (1 - (t - 1) ** 2) * np.exp(-(t - 1) ** 2 / 2) * np.cos(2 * t))

    @pytest.mark.parametrize("mode", ["star", "circ"])
    def test_two_sided(self, mode):
        w = catalog("mexican_hat", self.g, 0.5)
        f, g = box(self.g, 0, 1), self.burst()
        comb = convolve(f, g) if mode == "star" else correlate(f, g)
        lhs = cfrwt_forward(comb, w, self.sg)
        rhs = transform_of_combination(f, g, w, mode, self.sg)
        assert np.abs(lhs.values - rhs.values).max() < 1e-5 * np.abs(lhs.values).max()

    def test_zero(self):
        w = catalog("mexican_hat", self.g, 0.5)
        rhs = transform_of_combination(box(self.g, 0, 1), SampledSignal.zeros(self.g), w,
                                       "star", self.sg)
        assert not np.any(rhs.values)

    def test_mollifier_limit(self):
        w = catalog("mexican_hat", self.g, 0.5)
        eta = SampledSignal.from_function(self.g, lambda t: np.exp(-t * t / (2 * 0.05 ** 2)))
        eta = eta / integrate(eta).real
        got = transform_of_combination(eta, self.burst(), w, "star", self.sg).values
        ref = cfrwt_forward(self.burst(), w, self.sg).values
        assert np.linalg.norm(got - ref) / np.linalg.norm(ref) < 0.02

    @pytest.mark.parametrize("mode", ["star", "circ"])
    def test_combined_wavelet_at_unit_scale(self, mode):
        fine = build_uniform_grid(-8, 8, 2049)
        w = catalog("mexican_hat", fine, 0.5)
        half = box(fine, 0, 0.5)
        chirp = SampledSignal.from_function(build_uniform_grid(-8, 8, 1025),
                                            lambda t: np.exp(-t * t / 8) * np.cos(t + 0.3 * t * t))
        sg = single(build_uniform_grid(-16, 16, 2049), 1.0, 0.5)
        lhs = cfrwt_forward(chirp, combine_wavelets(w, half, mode, phi_first=True), sg)
        rhs = transform_with_combined_wavelet(half, w, chirp, mode, sg)
        assert np.abs(lhs.values - rhs.values).max() < 1e-4 * np.abs(lhs.values).max()

    def test_zero_factor(self):
        w = catalog("mexican_hat", self.g, 0.5)
        with pytest.raises(NotAWaveletError):
            transform_with_combined_wavelet(SampledSignal.zeros(self.g), w, self.burst(),
                                            "star", self.sg)


class TestWeightedInnerProduct:
    def test_theta_one_reduces_to_plain_integral(self):
        psi = catalog("mexican_hat", P, 1.0)
        f = windowed_sine()
        lhs, _ = weighted_inner_product(f, f, psi, psi, 2.0, B)
        W = cfrwt_forward(f, psi, single(B, 2.0, 1.0)).values[0]
        assert lhs == pytest.approx(np.sum(trapezoid_weights(B.count, B.step) * np.abs(W) ** 2),
                                    rel=1e-12)

    def test_theta_one_ratio_is_two_pi(self):
        # the computed sides differ by exactly 2π at θ = 1 for every scale
        psi = catalog("mexican_hat", P, 1.0)
        f = windowed_sine()
        for a in (0.5, 2.0):
            lhs, rhs = weighted_inner_product(f, f, psi, psi, a, B)
            assert lhs.real / rhs.real == pytest.approx(2 * np.pi, rel=1e-6)

    def test_nonnegative(self, mh_half):
        f = windowed_sine()
        lhs, rhs = weighted_inner_product(f, f, mh_half, mh_half, 2.0, B)
        assert lhs.real >= 0 and rhs.real >= 0
        assert abs(lhs.imag) <= 1e-9 * abs(lhs) and abs(rhs.imag) <= 1e-9 * abs(rhs)

    def test_zero_scale(self, mh_half):
        with pytest.raises(ZeroScaleError):
            weighted_inner_product(windowed_sine(), windowed_sine(), mh_half, mh_half, 0.0, B)
