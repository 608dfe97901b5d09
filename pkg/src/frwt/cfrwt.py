"""Continuous fractional wavelet transform and its identities.

The transform of ``f`` with respect to a fractional wavelet ``ψ`` is

    W(b, a) = ∫ f(t) conj(ψ_{a,b,θ}(t)) dt,
    ψ_{a,b,θ}(t) = |a|^(-1/2θ) ψ((t - b) / (sgn(a)|a|^(1/θ))).

Integrals over the scale–translation plane use the measure
``db da / |a|^(1/θ+1)``; on a log-spaced scale branch this is the
trapezoid rule in ``ln|a|`` times ``|a|^(-1/θ)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (DegeneratePairError, GridMismatchError, OrderMismatchError,
                     ZeroScaleError)
from .frft import (FrSpectrum, frft_forward, spectral_extent, spectral_grid,
                   warp_frequency)
from .grids import (SampledSignal, UniformGrid, check_theta, convolve,
                    dilate_translate, dilation_factor, inner_product, interpolate,
                    max_workers, trapezoid_weights)
from .wavelets import CrossAdmissibility, combine_wavelets

__all__ = [
    "ScaleTranslationGrid",
    "Scalogram",
    "WeightedSpectralProfile",
    "build_scale_grid",
    "cfrwt_forward",
    "cfrwt_forward_spectral",
    "orthogonality_pairing",
    "reconstruct",
    "tail_mass",
    "reproducing_kernel",
    "range_membership",
    "transform_of_combination",
    "transform_with_combined_wavelet",
    "weighted_spectral_profile",
    "weighted_inner_product",
]

_BLOCK = 1 << 21  # matrix entries per block in the direct kernels


@dataclass(frozen=True, eq=False)
class ScaleTranslationGrid:
    """Translations ``b`` times signed scales ``a`` with measure weights."""

    b_grid: UniformGrid
    scales: np.ndarray
    theta: float
    scale_weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "theta", check_theta(self.theta))
        scales = np.array(self.scales, dtype=float)
        weights = np.array(self.scale_weights, dtype=float)
        if scales.ndim != 1 or scales.size == 0:
            raise GridMismatchError("need at least one scale")
        if np.any(scales == 0):
            raise ZeroScaleError("scale grid contains a = 0")
        if weights.shape != scales.shape or np.any(weights <= 0):
            raise GridMismatchError("scale weights must be positive, one per scale")
        scales.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "scale_weights", weights)

    @property
    def b(self):
        return self.b_grid.nodes

    @property
    def b_weights(self):
        return trapezoid_weights(self.b_grid.count, self.b_grid.step)

    @property
    def shape(self):
        return (self.scales.size, self.b_grid.count)

    def measure(self):
        """Weight matrix of ``db da / |a|^(1/θ+1)`` with shape (scales, b)."""
        return np.outer(self.scale_weights, self.b_weights)

    def same_as(self, other):
        return (self.b_grid.same_as(other.b_grid)
                and self.scales.shape == other.scales.shape
                and np.allclose(self.scales, other.scales, rtol=1e-12, atol=0)
                and np.isclose(self.theta, other.theta, rtol=0, atol=1e-12))

    def subgrid(self, scale_index):
        """Grid restricted to the given scale indices (weights kept)."""
        idx = np.asarray(scale_index)
        return ScaleTranslationGrid(self.b_grid, self.scales[idx], self.theta,
                                    self.scale_weights[idx])


def _log_branch(a_min, a_max, count, theta):
    a = np.geomspace(a_min, a_max, count)
    if count == 1:
        return a, np.ones(1) * a ** (-1.0 / theta)
    w = trapezoid_weights(count, np.log(a_max / a_min) / (count - 1))
    return a, w * a ** (-1.0 / theta)


def build_scale_grid(b_grid, theta, a_min=0.125, a_max=8.0, count=48, signed=True):
    """Signed log-spaced scale grid ``±[a_min, a_max]`` with ``count`` per sign.

    Scales are ordered with the negative branch first (ascending), then
    the positive branch.
    """
    theta = check_theta(theta)
    if not (0 < a_min < a_max) or count < 2:
        raise GridMismatchError(
            f"scale range needs 0 < a_min < a_max and count >= 2, got {a_min}, {a_max}, {count}")
    a, w = _log_branch(a_min, a_max, int(count), theta)
    if signed:
        a = np.concatenate([-a[::-1], a])
        w = np.concatenate([w[::-1], w])
    return ScaleTranslationGrid(b_grid, a, theta, w)


@dataclass(frozen=True, eq=False)
class Scalogram:
    """Samples ``W(b, a)`` indexed ``[scale, translation]``."""

    grid: ScaleTranslationGrid
    values: np.ndarray
    wavelet_id: str = "custom"
    normalized: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise GridMismatchError(
                f"scalogram shape {values.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("scalogram values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def theta(self):
        return self.grid.theta

    def row(self, k):
        """The translation sweep at scale index ``k`` as a signal on the b grid."""
        return SampledSignal(self.grid.b_grid, self.values[k])

    def scaled(self, c, normalized=None):
        return Scalogram(self.grid, self.values * c, self.wavelet_id,
                         self.normalized if normalized is None else normalized)


def _require_theta(grid, *wavelets):
    for w in wavelets:
        if not np.isclose(w.theta, grid.theta, rtol=0, atol=1e-12):
            raise OrderMismatchError(
                f"wavelet {w.name!r} has θ={w.theta} but the grid has θ={grid.theta}")


def _map_rows(func, items):
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(func, items))


def _resolved(psi, s, step):
    """True when the daughter at dilation ``s`` is resolved by ``step``."""
    return psi.bandwidth / abs(s) <= np.pi / step


def _direct_row(f, psi, a, b, theta):
    """One scale of the defining quadrature ``∫ f conj(ψ_{a,b,θ})``.

    When the daughter is too narrow for ``f``'s grid, the same integral
    is taken in the wavelet variable ``u = (t - b)/s`` on the wavelet's
    own grid, with ``f`` interpolated.
    """
    s = dilation_factor(a, theta)
    amp = abs(a) ** (-0.5 / theta)
    fg, pg = f.grid, psi.grid
    out = np.empty(b.size, dtype=complex)
    if _resolved(psi, s, fg.step):
        t = fg.nodes
        wf = trapezoid_weights(fg.count, fg.step) * f.values
        rows = max(1, _BLOCK // t.size)
        for i in range(0, b.size, rows):
            u = (t[None, :] - b[i:i + rows, None]) / s
            out[i:i + rows] = interpolate(psi.signal, u).conj() @ wf
        return amp * out
    u = pg.nodes
    wp = trapezoid_weights(pg.count, pg.step) * psi.signal.values.conj()
    rows = max(1, _BLOCK // u.size)
    for i in range(0, b.size, rows):
        x = b[i:i + rows, None] + s * u[None, :]
        out[i:i + rows] = interpolate(f, x) @ wp
    return amp * abs(s) * out


def _working_xi_grid(f, grid, extra_span=0.0, min_count=4096):
    """ξ grid for spectral evaluation of a transform of ``f`` on ``grid``.

    Covers the numerical spectral extent of ``f`` and is fine enough that
    the warped-frequency spacing does not alias the b range.
    """
    theta = grid.theta
    extent = spectral_extent(f)
    if extent == 0.0:
        extent = np.pi / f.grid.step
    xi_max = extent ** theta
    reach = (max(abs(grid.b_grid.t_min), abs(grid.b_grid.t_max))
             + max(abs(f.grid.t_min), abs(f.grid.t_max)) + extra_span + 1.0)
    slope = xi_max ** (1.0 / theta - 1.0) / theta
    count = int(np.ceil(2.0 * xi_max * slope * reach / (0.5 * np.pi)))
    count = min(max(min_count, count), 1 << 16)
    return spectral_grid(xi_max, count)


def _spectral_rows(F, psi_at, grid):
    """``(1/2πθ) ∫ |ξ|^(1/θ-1) F(ξ) conj(daughter spectrum)(ξ) dξ`` for all (a, b)."""
    theta = F.theta
    xi = F.xi
    g = F.xi_grid
    jac = np.abs(xi) ** (1.0 / theta - 1.0) if theta != 1.0 else np.ones_like(xi)
    base = trapezoid_weights(g.count, g.step) * jac * F.values / (2.0 * np.pi * theta)
    scales = grid.scales
    V = np.empty((scales.size, xi.size), dtype=complex)
    for k, a in enumerate(scales):
        V[k] = base * np.conj(abs(a) ** (0.5 / theta) * psi_at(a * xi))
    omega = warp_frequency(xi, theta)
    b = grid.b
    out = np.zeros(grid.shape, dtype=complex)
    cols = max(1, _BLOCK // xi.size)
    for j in range(0, b.size, cols):
        E = np.exp(1j * np.outer(omega, b[j:j + cols]))
        out[:, j:j + cols] = V @ E
    return out


def cfrwt_forward(f, psi, grid, method="direct"):
    """Scalogram ``W_ψ^θ f`` on ``grid``.

    Parameters
    ----------
    f : SampledSignal
    psi : FractionalWavelet
    grid : ScaleTranslationGrid
    method : {'direct', 'spectral'}
        ``direct`` is the defining quadrature, one scale at a time.
        ``spectral`` evaluates the frequency-domain form with the exact
        wavelet spectrum; it is much faster on large grids.
    """
    _require_theta(grid, psi)
    if method == "spectral":
        F = frft_forward(f, grid.theta, _working_xi_grid(f, grid))
        vals = _spectral_rows(F, psi.spectrum_at, grid)
        return Scalogram(grid, vals, psi.name)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    b = grid.b
    rows = _map_rows(lambda a: _direct_row(f, psi, a, b, grid.theta), list(grid.scales))
    return Scalogram(grid, np.array(rows), psi.name)


def cfrwt_forward_spectral(F, Psi, grid, wavelet_id="custom"):
    """Scalogram from the spectra of ``f`` and ``ψ``.

    ``Psi(aξ)`` is read from its grid by linear interpolation (zero
    outside).  Both spectra must carry the grid's θ.
    """
    F.require_theta(grid.theta)
    Psi.require_theta(grid.theta)
    return Scalogram(grid, _spectral_rows(F, Psi, grid), wavelet_id)


def _same_grid(S1, S2):
    if not S1.grid.same_as(S2.grid):
        raise GridMismatchError("scalograms live on different grids")


def orthogonality_pairing(S1, S2):
    """``∫∫ S1 conj(S2) db da / |a|^(1/θ+1)`` by the stored quadrature."""
    _same_grid(S1, S2)
    return complex(np.sum(S1.grid.measure() * S1.values * S2.values.conj()))


def _check_constant(C):
    if isinstance(C, CrossAdmissibility):
        if C.is_degenerate():
            raise DegeneratePairError(
                f"C_φ,ψ,θ = {C.value:.3g} vanishes relative to its majorant "
                f"{C.absolute_integral:.3g}; the pair cannot reconstruct")
        return complex(C.value)
    C = complex(C)
    if C == 0 or not np.isfinite(C):
        raise DegeneratePairError(f"pair constant must be non-zero and finite, got {C}")
    return C


def _synthesis_row(coeffs, psi, a, t, b_grid, theta):
    """``∫ c(b) ψ_{a,b,θ}(t) db`` for every t, with ``coeffs`` = c·(b weights).

    Narrow daughters are integrated in ``u = (t - b)/s`` on the wavelet
    grid instead, with the weighted row interpolated in b.
    """
    s = dilation_factor(a, theta)
    amp = abs(a) ** (-0.5 / theta)
    out = np.empty(t.size, dtype=complex)
    if _resolved(psi, s, b_grid.step):
        b = b_grid.nodes
        rows = max(1, _BLOCK // b.size)
        for i in range(0, t.size, rows):
            u = (t[i:i + rows, None] - b[None, :]) / s
            out[i:i + rows] = interpolate(psi.signal, u) @ coeffs
        return amp * out
    row = SampledSignal(b_grid, coeffs / trapezoid_weights(b_grid.count, b_grid.step))
    pg = psi.grid
    wp = trapezoid_weights(pg.count, pg.step) * psi.signal.values
    rows = max(1, _BLOCK // pg.count)
    for i in range(0, t.size, rows):
        x = t[i:i + rows, None] - s * pg.nodes[None, :]
        out[i:i + rows] = interpolate(row, x) @ wp
    return amp * abs(s) * out


def reconstruct(S, psi, C, t_grid):
    """Synthesis ``(1/C) ∫∫ ψ_{a,b,θ}(t) W(b,a) db da / |a|^(1/θ+1)``.

    ``C`` is the pair constant ``C_{φ,ψ,θ}`` (a number or a
    :class:`CrossAdmissibility`).  Use :func:`tail_mass` to gauge how much
    of the scalogram sits at the edges of the truncated grid.
    """
    C = _check_constant(C)
    grid = S.grid
    _require_theta(grid, psi)
    t = t_grid.nodes
    wb = grid.b_weights

    def one(k):
        return grid.scale_weights[k] * _synthesis_row(wb * S.values[k], psi,
                                                      grid.scales[k], t, grid.b_grid,
                                                      grid.theta)

    rows = _map_rows(one, list(range(grid.scales.size)))
    total = np.zeros(t.size, dtype=complex)
    for r in rows:  # fixed scale-major order
        total += r
    return SampledSignal(t_grid, total / C)


def tail_mass(S, edge=0.05):
    """Share of the measure-weighted energy on the edges of the grid.

    Counts the outermost scale of each branch and the outer ``edge``
    fraction of translations on both sides.
    """
    grid = S.grid
    E = grid.measure() * np.abs(S.values) ** 2
    total = E.sum()
    if total == 0:
        return 0.0
    mask = np.zeros(E.shape, dtype=bool)
    a = grid.scales
    for branch in (a < 0, a > 0):
        idx = np.flatnonzero(branch)
        if idx.size:
            mask[idx[np.argmax(np.abs(a[idx]))]] = True
            mask[idx[np.argmin(np.abs(a[idx]))]] = True
    nb = max(1, int(edge * grid.b_grid.count))
    mask[:, :nb] = True
    mask[:, -nb:] = True
    return float(E[mask].sum() / total)


def _daughter_grid(psi, phi, p0, p1, theta):
    # common time grid resolving both daughters and covering both supports
    pieces = []
    for w, (b, a) in ((phi, p0), (psi, p1)):
        s = dilation_factor(a, theta)
        lo, hi = sorted((b + s * w.grid.t_min, b + s * w.grid.t_max))
        pieces.append((lo, hi, abs(s) * w.grid.step))
    lo = min(p[0] for p in pieces)
    hi = max(p[1] for p in pieces)
    step = min(p[2] for p in pieces)
    count = int(np.ceil((hi - lo) / step)) + 1
    if count > 1 << 18:
        count = 1 << 18
        step = (hi - lo) / (count - 1)
    return UniformGrid(lo, step, count)


def reproducing_kernel(phi, psi, C, p0, p1, t_grid=None):
    """``K(b0,a0; b,a) = (1/C) <ψ_{a,b,θ}, φ_{a0,b0,θ}>``.

    ``p0 = (b0, a0)`` and ``p1 = (b, a)``.  The inner product runs on
    ``t_grid``, by default a grid fine enough for both daughters.
    """
    C = _check_constant(C)
    if not np.isclose(phi.theta, psi.theta, rtol=0, atol=1e-12):
        raise OrderMismatchError(f"θ mismatch: {phi.theta} vs {psi.theta}")
    theta = psi.theta
    (b0, a0), (b, a) = p0, p1
    if a0 == 0 or a == 0:
        raise ZeroScaleError("scales must be non-zero")
    if t_grid is None:
        t_grid = _daughter_grid(psi, phi, p0, p1, theta)
    d_psi = dilate_translate(psi.signal, a, b, theta, t_grid)
    d_phi = dilate_translate(phi.signal, a0, b0, theta, t_grid)
    return inner_product(d_psi, d_phi) / C


def range_membership(F, phi, psi, C, stride=4, t_grid=None):
    """Relative residual of ``F`` against its kernel projection.

    The projection ``∫∫ F(b,a) K(b0,a0; b,a) db da/|a|^(1/θ+1)`` is the
    analysis (with ``φ``) of the synthesis (with ``ψ``) of ``F``.  It is
    compared with ``F`` at every ``stride``-th node on both axes, using the
    measure weights of those nodes.
    """
    C = _check_constant(C)
    grid = F.grid
    _require_theta(grid, phi, psi)
    if not np.any(F.values):
        return 0.0
    if t_grid is None:
        t_grid = grid.b_grid
    rec = reconstruct(F, psi, C, t_grid)
    ia = np.arange(0, grid.scales.size, stride)
    ib = np.arange(0, grid.b_grid.count, stride)
    sub = grid.subgrid(ia)
    b = grid.b[ib]
    proj = np.array(_map_rows(lambda a: _direct_row(rec, phi, a, b, grid.theta),
                              list(sub.scales)))
    ref = F.values[np.ix_(ia, ib)]
    w = np.outer(grid.scale_weights[ia], grid.b_weights[ib])
    num = np.sum(w * np.abs(proj - ref) ** 2)
    den = np.sum(w * np.abs(ref) ** 2)
    return float(np.sqrt(num / den))


def _on_lattice(step, x_min, x_max):
    """Grid of lattice nodes ``k·step`` covering ``[x_min, x_max]``."""
    k0 = int(np.floor(x_min / step + 1e-9))
    k1 = int(np.ceil(x_max / step - 1e-9))
    return UniformGrid(k0 * step, step, max(k1 - k0 + 1, 2))


def _hull(f, scale=1.0):
    """Interval holding the non-zero part of ``x ↦ f(x/scale)``."""
    idx = np.flatnonzero(f.values)
    if idx.size == 0:
        return 0.0, 0.0
    g = f.grid
    ends = scale * np.array([g.node(max(idx[0] - 1, 0)), g.node(min(idx[-1] + 1, g.count - 1))])
    return float(ends.min()), float(ends.max())


def _row_with_kernel(g, psi, a, b_grid, theta, kernel_at, lo, hi, method):
    """``∫ W_ψg(v, a) k(b - v) dv`` on ``b_grid`` for a kernel supported in [lo, hi].

    The transform row is evaluated on ``b_grid`` padded by the kernel
    support, so no part of the integral is cut off at the grid edges.
    """
    step = b_grid.step
    left = int(np.ceil(max(hi, 0.0) / step - 1e-9)) + 1
    right = int(np.ceil(max(-lo, 0.0) / step - 1e-9)) + 1
    ext = UniformGrid(b_grid.t_min - left * step, step, b_grid.count + left + right)
    one = ScaleTranslationGrid(ext, [a], theta, [1.0])
    row = cfrwt_forward(g, psi, one, method).row(0)
    lat = _on_lattice(step, lo, hi)
    kern = SampledSignal(lat, kernel_at(lat.nodes))
    return convolve(row, kern).values[left:left + b_grid.count]


def transform_of_combination(f, g, psi, mode, grid, method="direct"):
    """``W_ψ(f ⋆ g)`` or ``W_ψ(f ∘ g)`` through the transform of ``g``.

    Computes, for every scale, ``(f ⋆ W_ψg(·,a))(b)`` (``mode='star'``)
    or ``(f ∘ W_ψg(·,a))(b)`` (``mode='circ'``) on the translation grid.
    """
    if mode not in ("star", "circ"):
        raise ValueError(f"mode must be 'star' or 'circ', got {mode!r}")
    _require_theta(grid, psi)
    if mode == "star":
        lo, hi = _hull(f)
        kernel_at = f
    else:
        # (f ∘ W)(b) = ∫ W(v) conj(f(v - b)) dv, a convolution with conj f(-·)
        lo, hi = _hull(f, -1.0)
        kernel_at = lambda x: np.conj(f(-x))
    rows = _map_rows(lambda a: _row_with_kernel(g, psi, a, grid.b_grid, grid.theta,
                                                kernel_at, lo, hi, method),
                     list(grid.scales))
    return Scalogram(grid, np.array(rows), f"{psi.name}:{mode}")


def transform_with_combined_wavelet(f, psi, g, mode, grid, method="direct"):
    """``W_{f⋆ψ} g`` or ``W_{f∘ψ} g`` through the transform of ``g`` by ``ψ``.

    For each scale with dilation ``s = sgn(a)|a|^(1/θ)`` this returns
    ``(1/|s|) (f(·/s) ∘ W_ψg(·,a))(b)`` for ``mode='star'`` and
    ``(1/|s|) (f(·/s) ⋆ W_ψg(·,a))(b)`` for ``mode='circ'``.  The matching
    wavelets are ``f ⋆ ψ`` and ``f ∘ ψ``.
    """
    if mode not in ("star", "circ"):
        raise ValueError(f"mode must be 'star' or 'circ', got {mode!r}")
    _require_theta(grid, psi)
    theta = grid.theta
    # the identity presumes f⋆ψ (or f∘ψ) is itself a wavelet
    combine_wavelets(psi, f, mode, phi_first=True)

    def one(a):
        s = dilation_factor(a, theta)
        if mode == "star":
            # ∫ conj f(x/s) W(b + x) dx = ∫ W(v) conj f((v - b)/s) dv
            lo, hi = _hull(f, -s)
            at = lambda x: np.conj(f(-x / s))
        else:
            lo, hi = _hull(f, s)
            at = lambda x: f(x / s)
        return _row_with_kernel(g, psi, a, grid.b_grid, theta, at, lo, hi, method) / abs(s)

    rows = _map_rows(one, list(grid.scales))
    return Scalogram(grid, np.array(rows), f"{psi.name}:{mode}-combined")


@dataclass(frozen=True, eq=False)
class WeightedSpectralProfile:
    """``ξ ↦ |ξ|^(1/θ-1) (F_θh)(ξ) conj((F_θχ)(aξ))`` on a ξ grid."""

    xi_grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.xi_grid.count,):
            raise GridMismatchError("profile length does not match its grid")
        if not np.all(np.isfinite(values)):
            raise ValueError("profile values must be finite")
        object.__setattr__(self, "values", values)

    def as_signal(self):
        return SampledSignal(self.xi_grid, self.values)


def weighted_spectral_profile(h, chi, a, xi_grid):
    """Profile of signal ``h`` against wavelet ``chi`` at scale ``a``."""
    if a == 0:
        raise ZeroScaleError("scale a must be non-zero")
    theta = chi.theta
    xi = xi_grid.nodes
    H = frft_forward(h, theta, xi_grid)
    jac = np.abs(xi) ** (1.0 / theta - 1.0) if theta != 1.0 else np.ones_like(xi)
    return WeightedSpectralProfile(xi_grid, jac * H.values * np.conj(chi.spectrum_at(a * xi)))


def weighted_inner_product(f, g, phi, psi, a, b_grid, xi_grid=None):
    """Both sides of the weighted inner-product relation at scale ``a``.

    Returns
    -------
    lhs : complex
        ``∫ |b|^(1/θ-1) W_φf(b,a) conj(W_ψg(b,a)) db`` on ``b_grid``.
    rhs : complex
        ``|a|^(1/θ) / (4π²θ²) · <P_θ, Q_θ>`` with ``P_θ``, ``Q_θ`` the
        weighted spectral profiles of ``(f, φ)`` and ``(g, ψ)``.
    """
    if a == 0:
        raise ZeroScaleError("scale a must be non-zero")
    if not np.isclose(phi.theta, psi.theta, rtol=0, atol=1e-12):
        raise OrderMismatchError(f"θ mismatch: {phi.theta} vs {psi.theta}")
    theta = psi.theta
    one = ScaleTranslationGrid(b_grid, [a], theta, [1.0])
    Wf = cfrwt_forward(f, phi, one).values[0]
    Wg = cfrwt_forward(g, psi, one).values[0]
    bw = np.abs(b_grid.nodes) ** (1.0 / theta - 1.0) if theta != 1.0 else 1.0
    lhs = np.sum(trapezoid_weights(b_grid.count, b_grid.step) * bw * Wf * Wg.conj())
    if xi_grid is None:
        xi_grid = _working_xi_grid(f, one)
    P = weighted_spectral_profile(f, phi, a, xi_grid).as_signal()
    Q = weighted_spectral_profile(g, psi, a, xi_grid).as_signal()
    rhs = abs(a) ** (1.0 / theta) / (4.0 * np.pi ** 2 * theta ** 2) * inner_product(P, Q)
    return complex(lhs), complex(rhs)
