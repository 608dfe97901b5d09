"""Fractional wavelets: validation, admissibility constants and a catalog.

A fractional wavelet is a non-zero ``ψ ∈ L¹ ∩ L²`` whose admissibility
constant

    C_{ψ,θ} = ∫ |F_θψ(ξ)|² / |ξ| dξ

is finite.  Quadratures in ξ run on half-step-offset grids so the
singular node ξ = 0 never appears.  Finiteness is decided by refining
the excluded neighbourhood of ξ = 0 dyadically and watching whether the
partial sums stop growing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (CatalogError, NotAWaveletError,
                     OrderMismatchError)
from .frft import (FrSpectrum, SpectrumSampler, spectral_extent, spectral_grid,
                   warp_frequency)
from .grids import (SampledSignal, check_theta, convolve, correlate, norm,
                    trapezoid_weights)

__all__ = [
    "FractionalWavelet",
    "CrossAdmissibility",
    "AdmissibilityResult",
    "admissibility_constant",
    "cross_admissibility",
    "make_wavelet",
    "combine_wavelets",
    "catalog",
    "CATALOG_NAMES",
]

log = logging.getLogger(__name__)

XI_NODES = 8192       # nodes of the ξ grid used for 1/|ξ| integrals
REFINEMENTS = 3       # dyadic refinements of the hole around ξ = 0
GROWTH_LIMIT = 0.05   # relative growth per refinement that signals divergence
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


@dataclass(frozen=True)
class AdmissibilityResult:
    """Value of a 1/|ξ| integral plus the refinement history near ξ = 0."""

    value: complex
    absolute_integral: float
    partial_sums: tuple
    divergent: bool

    def __iter__(self):
        # allows ``value, divergent = admissibility_constant(...)``
        yield self.value.real if np.iscomplexobj(self.value) else self.value
        yield self.divergent


@dataclass(frozen=True)
class CrossAdmissibility:
    """The mixed constant ``C_{φ,ψ,θ}`` and its absolute-value majorant."""

    value: complex
    absolute_integral: float
    finite: bool

    def is_degenerate(self, rtol=1e-6):
        """True when the constant vanishes relative to its majorant."""
        return abs(self.value) <= rtol * self.absolute_integral


def _xi_max(signals, theta):
    extent = max(spectral_extent(s) for s in signals)
    if extent == 0.0:
        raise NotAWaveletError("signal has an identically zero spectrum")
    return extent ** theta


def _band_integrals(samplers, theta, eps0, refinements, integrand):
    """Integrals of ``integrand`` over ``eps0·2^-k < |ξ| < eps0·2^(1-k)``."""
    bands = []
    for k in range(1, refinements + 1):
        lo, hi = np.log(eps0) - k * np.log(2.0), np.log(eps0) - (k - 1) * np.log(2.0)
        u = 0.5 * (hi - lo) * _GL_NODES + 0.5 * (hi + lo)
        xi = np.exp(u)
        w = 0.5 * (hi - lo) * _GL_WEIGHTS
        total = 0.0
        for sgn in (1.0, -1.0):
            omega = warp_frequency(sgn * xi, theta)
            vals = [s(omega) for s in samplers]
            # dξ/|ξ| = d(ln ξ), so the log-variable weight absorbs 1/|ξ|
            total = total + np.sum(w * integrand(*vals))
        bands.append(total)
    return bands


def _spectral_integral(samplers, theta, xi_grid, integrand):
    xi = xi_grid.nodes
    omega = warp_frequency(xi, theta)
    vals = [s(omega) for s in samplers]
    w = trapezoid_weights(xi_grid.count, xi_grid.step) / np.abs(xi)
    main = np.sum(w * integrand(*vals))
    bands = _band_integrals(samplers, theta, 0.5 * xi_grid.step, REFINEMENTS, integrand)
    return main, bands


def _divergent(main, bands):
    sums = [abs(main)]
    for b in bands:
        sums.append(sums[-1] + abs(b))
    growth = abs(bands[-1]) / sums[-2] if sums[-2] > 0 else np.inf
    return tuple(sums), bool(growth > GROWTH_LIMIT)


def admissibility_constant(psi, theta, xi_grid=None):
    """Admissibility constant ``C_{ψ,θ}`` by quadrature.

    Parameters
    ----------
    psi : SampledSignal
    theta : float
    xi_grid : UniformGrid, optional
        Half-step-offset ξ grid; by default it covers the numerical
        spectral extent of ``psi`` mapped back through the warp.

    Returns
    -------
    AdmissibilityResult
        Unpacks as ``(value, divergent)``.  ``divergent`` is set when the
        last dyadic refinement of the hole around ξ = 0 still grows the
        partial sum by more than 5%.
    """
    theta = check_theta(theta)
    if not np.any(psi.values):
        raise NotAWaveletError("a fractional wavelet must be non-zero")
    if xi_grid is None:
        xi_grid = spectral_grid(_xi_max([psi], theta), XI_NODES)
    sampler = SpectrumSampler(psi)
    main, bands = _spectral_integral([sampler], theta, xi_grid,
                                     lambda F: np.abs(F) ** 2)
    sums, divergent = _divergent(main.real, [b.real for b in bands])
    value = float(main.real)
    return AdmissibilityResult(value, value, sums, divergent)


@dataclass(frozen=True, eq=False)
class FractionalWavelet:
    """A validated fractional wavelet with cached spectral data."""

    signal: SampledSignal
    theta: float
    spectrum: FrSpectrum
    admissibility: float
    l1_norm: float
    l2_norm: float
    compact_support: bool = False
    support: tuple = field(default=(np.nan, np.nan))
    name: str = "custom"

    @property
    def grid(self):
        return self.signal.grid

    @cached_property
    def sampler(self):
        return SpectrumSampler(self.signal)

    @cached_property
    def bandwidth(self):
        """Angular frequency beyond which the spectrum is below 1e-8 of its peak."""
        return spectral_extent(self.signal, 1e-8)

    def spectrum_at(self, xi):
        """``F_θψ`` evaluated at arbitrary ξ from the FFT-based sampler."""
        return self.sampler(warp_frequency(xi, self.theta))

    def require_theta(self, theta):
        if not np.isclose(self.theta, theta, rtol=0, atol=1e-12):
            raise OrderMismatchError(
                f"wavelet {self.name!r} has θ={self.theta}, expected θ={theta}")


def _nonzero_hull(signal):
    idx = np.flatnonzero(signal.values)
    nodes = signal.grid.nodes
    return float(nodes[idx[0]]), float(nodes[idx[-1]])


def make_wavelet(signal, theta, name="custom", compact_support=None, support=None):
    """Validate ``signal`` as a fractional wavelet of order ``theta``.

    ``compact_support`` defaults to whether the samples vanish exactly at
    both ends of the grid; ``support`` defaults to the hull of non-zero
    samples.

    Raises
    ------
    NotAWaveletError
        If the signal is zero or its admissibility integral diverges.
    """
    theta = check_theta(theta)
    if not np.any(signal.values):
        raise NotAWaveletError("a fractional wavelet must be non-zero")
    xi_grid = spectral_grid(_xi_max([signal], theta), XI_NODES)
    result = admissibility_constant(signal, theta, xi_grid)
    if result.divergent or not np.isfinite(result.value) or result.value <= 0:
        sums = ", ".join(f"{s:.6g}" for s in result.partial_sums)
        raise NotAWaveletError(
            f"admissibility integral of {name!r} diverges near ξ=0 "
            f"(partial sums under dyadic refinement: {sums}); "
            "a non-zero mean is the usual cause")
    if compact_support is None:
        v = signal.values
        compact_support = bool(v[0] == 0 and v[-1] == 0)
    if support is None:
        support = _nonzero_hull(signal)
    sampler = SpectrumSampler(signal)
    spectrum = FrSpectrum(xi_grid, sampler(warp_frequency(xi_grid.nodes, theta)), theta)
    wav = FractionalWavelet(signal, theta, spectrum, float(result.value),
                            norm(signal, 1), norm(signal, 2), bool(compact_support),
                            tuple(float(s) for s in support), name)
    wav.__dict__["sampler"] = sampler
    return wav


def cross_admissibility(phi, psi):
    """Mixed constant ``C_{φ,ψ,θ} = ∫ conj(F_θφ) F_θψ / |ξ| dξ``.

    Both integrals (signed and absolute) use one ξ grid covering the
    spectra of both wavelets.  When ``phi is psi`` the grid and quadrature
    coincide with those of the wavelet's own admissibility constant.
    """
    if not np.isclose(phi.theta, psi.theta, rtol=0, atol=1e-12):
        raise OrderMismatchError(f"θ mismatch: {phi.theta} vs {psi.theta}")
    theta = psi.theta
    if phi.spectrum.xi_grid.same_as(psi.spectrum.xi_grid):
        xi_grid = psi.spectrum.xi_grid
    else:
        xi_grid = spectral_grid(max(phi.spectrum.xi_grid.t_max + 0.5 * phi.spectrum.xi_grid.step,
                                    psi.spectrum.xi_grid.t_max + 0.5 * psi.spectrum.xi_grid.step),
                                XI_NODES)
    samplers = [phi.sampler, psi.sampler]
    value, bands = _spectral_integral(samplers, theta, xi_grid,
                                      lambda P, Q: P.conj() * Q)
    absolute, abs_bands = _spectral_integral(samplers, theta, xi_grid,
                                             lambda P, Q: np.abs(P) * np.abs(Q))
    _, divergent = _divergent(absolute.real, [b.real for b in abs_bands])
    if phi is psi:
        value = complex(psi.admissibility)
    return CrossAdmissibility(complex(value), float(absolute.real), not divergent)


def combine_wavelets(psi, phi, mode="star", phi_first=False):
    """Wavelet built from ``psi`` and an integrable ``phi``.

    ``mode='star'`` gives ``ψ ⋆ φ``; ``mode='circ'`` gives ``ψ ∘ φ``, or
    ``φ ∘ ψ`` when ``phi_first`` is set.  The result lives on the grid of
    ``psi``; ``phi`` is linearly resampled there when its grid differs.  Its
    admissibility constant is checked against ``‖φ‖²_{L¹} C_{ψ,θ}``.
    """
    if mode not in ("star", "circ"):
        raise ValueError(f"mode must be 'star' or 'circ', got {mode!r}")
    if not np.any(phi.values):
        raise NotAWaveletError("combining with a zero function gives zero")
    phi_on = phi if phi.grid.same_as(psi.grid) else SampledSignal(psi.grid, phi(psi.grid.nodes))
    if mode == "star":
        sig, tag = convolve(psi.signal, phi_on), f"{psi.name}*phi"
    elif phi_first:
        sig, tag = correlate(phi_on, psi.signal), f"phi o {psi.name}"
    else:
        sig, tag = correlate(psi.signal, phi_on), f"{psi.name} o phi"
    if not np.any(np.abs(sig.values) > 1e-300):
        raise NotAWaveletError("combined signal is identically zero")
    compact = psi.compact_support and bool(phi.values[0] == 0 and phi.values[-1] == 0)
    wav = make_wavelet(sig, psi.theta, name=tag, compact_support=compact)
    bound = norm(phi, 1) ** 2 * psi.admissibility
    if wav.admissibility > bound:
        log.warning("combined admissibility %.6g exceeds ‖φ‖₁²·C = %.6g",
                    wav.admissibility, bound)
    return wav


def _mexican_hat(t):
    return (1.0 - t * t) * np.exp(-0.5 * t * t)


def _dog(t):
    return np.exp(-0.5 * t * t) - 0.5 * np.exp(-0.125 * t * t)


def _gauss_deriv1(t):
    return -t * np.exp(-0.5 * t * t)


def _haar(t):
    # midpoint values at the jumps keep the samples exactly mean-zero
    v = np.where((t > 0) & (t < 0.5), 1.0, 0.0) - np.where((t > 0.5) & (t < 1), 1.0, 0.0)
    v = np.where(np.isclose(t, 0.0, atol=1e-12), 0.5, v)
    v = np.where(np.isclose(t, 1.0, atol=1e-12), -0.5, v)
    return v


_CATALOG = {
    "mexican_hat": (_mexican_hat, None),
    "haar": (_haar, (0.0, 1.0)),
    "dog": (_dog, None),
    "gauss_deriv1": (_gauss_deriv1, None),
}
CATALOG_NAMES = tuple(_CATALOG)


def catalog(name, grid, theta):
    """Sample a named mean-zero wavelet on ``grid`` and validate it.

    Names: ``mexican_hat``, ``haar`` (on [0, 1], compactly supported),
    ``dog`` (difference of Gaussians) and ``gauss_deriv1``.
    """
    try:
        func, support = _CATALOG[name]
    except KeyError:
        raise CatalogError(
            f"unknown wavelet {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    sig = SampledSignal.from_function(grid, func)
    return make_wavelet(sig, theta, name=name, compact_support=support is not None,
                        support=support)
