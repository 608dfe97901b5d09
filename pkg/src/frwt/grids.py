"""Uniform grids, sampled signals and the quadrature layer.

Every integral over the real line in this package is a composite
trapezoid sum over the span of a :class:`UniformGrid`.  Signals are
treated as compactly supported: off-grid values come from linear
interpolation and are zero outside the grid span.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .errors import GridMismatchError, InvalidGridError, InvalidOrderError, ZeroScaleError

__all__ = [
    "UniformGrid",
    "SampledSignal",
    "build_uniform_grid",
    "check_theta",
    "trapezoid_weights",
    "integrate",
    "inner_product",
    "norm",
    "convolve",
    "correlate",
    "dilate_translate",
    "dilation_factor",
    "interpolate",
    "max_workers",
]

# relative tolerance used when deciding whether two grids coincide
GRID_RTOL = 1e-9


def max_workers():
    """Thread cap for row-parallel kernels, read from ``FRWT_THREADS``."""
    raw = os.environ.get("FRWT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def check_theta(theta):
    """Validate a fractional order and return it as a float.

    Raises
    ------
    InvalidOrderError
        If ``theta`` is not a finite number in ``(0, 1]``.
    """
    try:
        theta = float(theta)
    except (TypeError, ValueError):
        raise InvalidOrderError(f"θ must be a number, got {theta!r}") from None
    if not (np.isfinite(theta) and 0.0 < theta <= 1.0):
        raise InvalidOrderError(f"θ must lie in (0,1], got {theta}")
    return theta


@dataclass(frozen=True)
class UniformGrid:
    """Nodes ``t_min + k*step`` for ``k = 0..count-1``."""

    t_min: float
    step: float
    count: int

    def __post_init__(self):
        if not (np.isfinite(self.t_min) and np.isfinite(self.step)):
            raise InvalidGridError("grid parameters must be finite")
        if self.step <= 0:
            raise InvalidGridError(f"grid step must be positive, got {self.step}")
        if int(self.count) != self.count or self.count < 2:
            raise InvalidGridError(f"grid needs at least 2 nodes, got {self.count}")
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "t_min", float(self.t_min))
        object.__setattr__(self, "step", float(self.step))

    def node(self, k):
        return self.t_min + k * self.step

    @property
    def nodes(self):
        return self.t_min + np.arange(self.count) * self.step

    @property
    def t_max(self):
        return self.node(self.count - 1)

    @property
    def span(self):
        return self.t_max - self.t_min

    def same_as(self, other):
        """True when both grids have the same nodes up to ``GRID_RTOL``."""
        if self.count != other.count:
            return False
        scale = max(abs(self.t_min), abs(self.t_max), self.step)
        return (np.isclose(self.step, other.step, rtol=GRID_RTOL, atol=0)
                and abs(self.t_min - other.t_min) <= GRID_RTOL * scale)

    def same_step(self, other):
        return bool(np.isclose(self.step, other.step, rtol=GRID_RTOL, atol=0))


def build_uniform_grid(t_min, t_max, count):
    """Grid with ``count`` nodes from ``t_min`` to ``t_max`` inclusive.

    >>> build_uniform_grid(-8, 8, 17).step
    1.0
    """
    if not (np.isfinite(t_min) and np.isfinite(t_max)):
        raise InvalidGridError("grid bounds must be finite")
    if int(count) != count or count < 2:
        raise InvalidGridError(f"grid needs at least 2 nodes, got {count}")
    if t_max <= t_min:
        raise InvalidGridError(f"t_max must exceed t_min, got [{t_min}, {t_max}]")
    return UniformGrid(float(t_min), (t_max - t_min) / (count - 1), int(count))


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Complex samples of a function on a uniform grid."""

    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.ndim != 1 or values.shape[0] != self.grid.count:
            raise InvalidGridError(
                f"expected {self.grid.count} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("signal samples must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid, func):
        return cls(grid, func(grid.nodes))

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(grid.count, dtype=complex))

    @property
    def nodes(self):
        return self.grid.nodes

    def is_real(self):
        return not np.any(self.values.imag)

    def conj(self):
        return SampledSignal(self.grid, self.values.conj())

    def __call__(self, x):
        return interpolate(self, x)

    def _other_values(self, other):
        if isinstance(other, SampledSignal):
            if not self.grid.same_as(other.grid):
                raise GridMismatchError("signals live on different grids")
            return other.values
        return other

    def __add__(self, other):
        return SampledSignal(self.grid, self.values + self._other_values(other))

    def __sub__(self, other):
        return SampledSignal(self.grid, self.values - self._other_values(other))

    def __mul__(self, other):
        return SampledSignal(self.grid, self.values * self._other_values(other))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return SampledSignal(self.grid, self.values / c)

    def __neg__(self):
        return SampledSignal(self.grid, -self.values)


def _interp_uniform(values, t_min, step, x):
    """Linear interpolation of uniform samples; zero outside the span."""
    x = np.asarray(x, dtype=float)
    n = values.shape[0]
    pos = (x - t_min) / step
    inside = (pos >= -1e-9) & (pos <= n - 1 + 1e-9)
    pos = np.clip(pos, 0.0, n - 1.0)
    i = np.minimum(np.floor(pos).astype(np.intp), n - 2)
    frac = pos - i
    out = values[i] * (1.0 - frac) + values[i + 1] * frac
    return np.where(inside, out, 0.0)


def interpolate(signal, x):
    """Evaluate ``signal`` at arbitrary points by linear interpolation."""
    g = signal.grid
    return _interp_uniform(signal.values, g.t_min, g.step, x)


def trapezoid_weights(count, step):
    w = np.full(count, float(step))
    w[0] = w[-1] = 0.5 * step
    return w


def integrate(f):
    """Composite trapezoid value of the integral of ``f`` over its grid span."""
    v = f.values
    return complex(f.grid.step * (np.sum(v[1:-1]) + 0.5 * (v[0] + v[-1])))


def inner_product(f, g):
    """``<f, g> = ∫ f conj(g)``; both signals must share a grid."""
    if not f.grid.same_as(g.grid):
        raise GridMismatchError("inner product needs identical grids")
    return integrate(SampledSignal(f.grid, f.values * g.values.conj()))


def norm(f, p=2):
    """L^1, L^2 or sup norm (``p`` in ``{1, 2, 'sup'}``; ``np.inf`` means sup)."""
    a = np.abs(f.values)
    if p in ("sup", "inf", np.inf):
        return float(a.max())
    if p == 1:
        return integrate(SampledSignal(f.grid, a)).real
    if p == 2:
        return float(np.sqrt(integrate(SampledSignal(f.grid, a * a)).real))
    raise ValueError(f"unsupported norm order {p!r}")


def _lattice_samples(g, origin, step, m):
    # g sampled at origin + m*step for integer offsets m
    return interpolate(g, origin + m * step)


def convolve(f, g):
    """``(f ⋆ g)(x) = ∫ f(u) g(x-u) du`` on the grid of ``f``.

    The quadrature runs over the nodes of ``f``; ``g`` is sampled at the
    lattice differences ``x_i - u_j`` by linear interpolation.
    """
    if not f.grid.same_step(g.grid):
        raise GridMismatchError("convolution needs equal grid steps")
    n, h = f.grid.count, f.grid.step
    m = np.arange(-(n - 1), n)
    g_lat = _lattice_samples(g, 0.0, h, m)
    a = trapezoid_weights(n, h) * f.values
    full = fftconvolve(a, g_lat)
    return SampledSignal(f.grid, full[n - 1:2 * n - 1])


def correlate(f, g):
    """``(f ∘ g)(x) = ∫ conj(f(u)) g(x+u) du`` on the grid of ``f``."""
    if not f.grid.same_step(g.grid):
        raise GridMismatchError("correlation needs equal grid steps")
    n, h = f.grid.count, f.grid.step
    m = np.arange(0, 2 * n - 1)
    g_lat = _lattice_samples(g, 2.0 * f.grid.t_min, h, m)
    a = trapezoid_weights(n, h) * f.values.conj()
    full = fftconvolve(a[::-1], g_lat)
    return SampledSignal(f.grid, full[n - 1:2 * n - 1])


def dilation_factor(a, theta):
    """Signed time dilation ``sgn(a)|a|^(1/θ)`` of the daughter wavelet."""
    return np.sign(a) * abs(a) ** (1.0 / theta)


def dilate_translate(psi, a, b, theta, grid=None):
    """Daughter wavelet ``|a|^(-1/2θ) ψ((t-b) / (sgn(a)|a|^(1/θ)))``.

    Sampled on ``grid`` (default: the grid of ``psi``) by linear
    interpolation of ``psi``.
    """
    theta = check_theta(theta)
    if a == 0:
        raise ZeroScaleError("scale a must be non-zero")
    grid = psi.grid if grid is None else grid
    s = dilation_factor(a, theta)
    amp = abs(a) ** (-0.5 / theta)
    return SampledSignal(grid, amp * interpolate(psi, (grid.nodes - b) / s))
