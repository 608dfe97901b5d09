"""Hardy and Morrey norm estimators and the bound reports built on them.

Both norms are suprema over infinite families (all mollifier dilations,
all balls).  The estimators take the supremum over a finite family, so
they bound the true norm from below and grow monotonically as the family
is refined.  Bound checks compare two estimates built from the same
families and allow a small slack factor for the discretisation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .cfrwt import ScaleTranslationGrid, cfrwt_forward
from .errors import HypothesisViolationError, InvalidMollifierError, OrderMismatchError
from .grids import (SampledSignal, UniformGrid, build_uniform_grid, convolve,
                    dilation_factor, integrate, norm, trapezoid_weights)

__all__ = [
    "MollifierFamily",
    "BallFamily",
    "BoundReport",
    "hardy_norm",
    "morrey_norm",
    "normalized_cfrwt",
    "hardy_bound_report",
    "morrey_bound_report",
    "HARDY_SLACK",
    "MORREY_SLACK",
]

HARDY_SLACK = 1.05
MORREY_SLACK = 1.10


def _gaussian_eta(step=1.0 / 64, half_width=8.0):
    n = int(round(2 * half_width / step)) + 1
    grid = build_uniform_grid(-half_width, half_width, n)
    return SampledSignal.from_function(grid, lambda x: np.exp(-0.5 * x * x) / np.sqrt(2 * np.pi))


@dataclass(frozen=True, eq=False)
class MollifierFamily:
    """A mollifier ``η`` and a finite set of dilations ``t``.

    ``η_t(x) = η(x/t)/t``.  The default is the unit-mass Gaussian with 33
    log-spaced dilations in ``[2^-6, 2^6]``.
    """

    eta: SampledSignal = field(default_factory=_gaussian_eta)
    dilations: np.ndarray = field(default_factory=lambda: np.geomspace(2.0 ** -6, 2.0 ** 6, 33))
    name: str = "gaussian"

    def __post_init__(self):
        d = np.array(self.dilations, dtype=float)
        if d.ndim != 1 or d.size == 0 or np.any(d <= 0) or np.any(np.diff(d) <= 0):
            raise InvalidMollifierError("dilations must be positive and strictly increasing")
        mass = integrate(self.eta)
        if abs(mass) <= 1e-12 * max(norm(self.eta, 1), 1e-300):
            raise InvalidMollifierError("the mollifier must have a non-zero integral")
        d.flags.writeable = False
        object.__setattr__(self, "dilations", d)

    @classmethod
    def log_spaced(cls, t_min=2.0 ** -6, t_max=2.0 ** 6, count=33, eta=None):
        return cls(_gaussian_eta() if eta is None else eta, np.geomspace(t_min, t_max, count))

    @property
    def mass(self):
        return integrate(self.eta)

    def kernel(self, t, step, span):
        """``η_t`` on the lattice ``k·step`` within ``±span``.

        The lattice sum is rescaled to the mass of ``η``; without this, very
        narrow dilations (``t`` below the step) would not act as identities.
        """
        g = self.eta.grid
        reach = min(max(abs(g.t_min), abs(g.t_max)) * t, span)
        k = int(np.ceil(reach / step))
        lat = UniformGrid(-k * step, step, 2 * k + 1)
        vals = self.eta(lat.nodes / t) / t
        lat_mass = np.sum(trapezoid_weights(lat.count, step) * vals)
        if lat_mass != 0:
            vals = vals * (self.mass / lat_mass)
        return SampledSignal(lat, vals)

    def describe(self):
        return {"eta": self.name, "dilations": [float(self.dilations[0]),
                                                 float(self.dilations[-1]),
                                                 int(self.dilations.size)]}


def hardy_norm(f, M=None):
    """``∫ max_j |(f ⋆ η_{t_j})(x)| dx`` over the grid of ``f``.

    A lower estimate of the H¹ norm: the supremum over all ``t > 0`` is
    replaced by the finite dilation set of ``M``.
    """
    M = MollifierFamily() if M is None else M
    if not np.any(f.values):
        return 0.0
    g = f.grid
    best = np.zeros(g.count)
    for t in M.dilations:  # fixed order keeps the reduction deterministic
        conv = convolve(f, M.kernel(t, g.step, g.span))
        np.maximum(best, np.abs(conv.values), out=best)
    return float(np.sum(trapezoid_weights(g.count, g.step) * best))


@dataclass(frozen=True, eq=False)
class BallFamily:
    """Ball centres, radii and the Morrey exponent ``nu``.

    ``centers=None`` means every node of the signal's grid.
    """

    radii: np.ndarray
    nu: float
    centers: np.ndarray | None = None

    def __post_init__(self):
        r = np.array(self.radii, dtype=float)
        if r.ndim != 1 or r.size == 0 or np.any(r <= 0):
            raise ValueError("radii must be positive")
        if not 0.0 <= self.nu <= 1.0:
            raise ValueError(f"nu must lie in [0, 1], got {self.nu}")
        object.__setattr__(self, "radii", r)
        if self.centers is not None:
            object.__setattr__(self, "centers", np.array(self.centers, dtype=float))

    @classmethod
    def for_grid(cls, grid, nu, count=32):
        """Default family: ``count`` log-spaced radii in ``[step, span]``."""
        return cls(np.geomspace(grid.step, grid.span, count), nu)


def _cumulative(values, step):
    c = np.zeros(values.size)
    c[1:] = np.cumsum(0.5 * step * (values[1:] + values[:-1]))
    return c


def _primitive(values, cum, grid, x):
    """Exact integral of the piecewise-linear interpolant from ``t_min`` to ``x``."""
    n = values.size
    pos = np.clip((x - grid.t_min) / grid.step, 0.0, n - 1.0)
    k = np.minimum(np.floor(pos).astype(np.intp), n - 2)
    d = pos - k
    return cum[k] + grid.step * (d * values[k] + 0.5 * d * d * (values[k + 1] - values[k]))


def morrey_norm(f, B):
    """``max_{i,k} r_k^-ν ∫_{[x_i - r_k, x_i + r_k]} |f|`` with ``p = 1``.

    Mass outside the grid span counts as zero.
    """
    g = f.grid
    a = np.abs(f.values)
    if not np.any(a):
        return 0.0
    cum = _cumulative(a, g.step)
    x = g.nodes if B.centers is None else B.centers
    best = 0.0
    for r in B.radii:
        mass = _primitive(a, cum, g, x + r) - _primitive(a, cum, g, x - r)
        best = max(best, float(mass.max()) / r ** B.nu)
    return best


def normalized_cfrwt(f, psi, grid, method="direct"):
    """``L_ψ^θ f = W_ψ^θ f / √C_{ψ,θ}``."""
    S = cfrwt_forward(f, psi, grid, method)
    return S.scaled(1.0 / np.sqrt(psi.admissibility), normalized=True)


@dataclass
class BoundReport:
    """Per-scale comparisons of an estimated norm with a theorem's bound."""

    theorem: str
    theta: float
    slack: float
    rows: list = field(default_factory=list)
    family: dict = field(default_factory=dict)

    def add(self, check, a, lhs, rhs):
        ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else np.inf)
        ok = bool(np.isfinite(lhs) and lhs <= self.slack * rhs)
        self.rows.append({"check": check, "a": float(a), "lhs": float(lhs),
                          "rhs": float(rhs), "ratio": float(ratio), "pass": ok})

    @property
    def all_pass(self):
        return all(r["pass"] for r in self.rows)

    def failures(self):
        return [r for r in self.rows if not r["pass"]]

    def to_dict(self):
        return {"theorem": self.theorem, "theta": self.theta, "slack": self.slack,
                "family": self.family, "rows": self.rows}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _analysis_grid(signals, wavelets, scales, theta):
    """Lattice holding every signal and every daughter's reach."""
    step = min(s.grid.step for s in signals)
    lo = min(s.grid.t_min for s in signals)
    hi = max(s.grid.t_max for s in signals)
    s_max = max(abs(dilation_factor(a, theta)) for a in scales)
    reach = s_max * max(max(abs(w.grid.t_min), abs(w.grid.t_max)) for w in wavelets)
    k0 = int(np.floor((lo - reach) / step))
    k1 = int(np.ceil((hi + reach) / step))
    return UniformGrid(k0 * step, step, k1 - k0 + 1)


def _embed(f, grid):
    return SampledSignal(grid, f(grid.nodes))


def _wavelet_difference_l1(phi, psi):
    """``‖φ/√C_φ - ψ/√C_ψ‖_{L¹}`` on a grid covering both wavelets."""
    cp, cs = np.sqrt(phi.admissibility), np.sqrt(psi.admissibility)
    if phi.grid.same_as(psi.grid):
        return norm(phi.signal / cp - psi.signal / cs, 1)
    step = min(phi.grid.step, psi.grid.step)
    lo = min(phi.grid.t_min, psi.grid.t_min)
    hi = max(phi.grid.t_max, psi.grid.t_max)
    g = build_uniform_grid(lo, hi, int(np.ceil((hi - lo) / step)) + 1)
    return norm(_embed(phi.signal, g) / cp - _embed(psi.signal, g) / cs, 1)


def _bound_report(kind, estimator, f, g, phi, psi, scales, slack, method, family):
    if not np.isclose(phi.theta, psi.theta, rtol=0, atol=1e-12):
        raise OrderMismatchError(f"θ mismatch: {phi.theta} vs {psi.theta}")
    theta = psi.theta
    g = f if g is None else g
    scales = [float(a) for a in scales]
    x_grid = _analysis_grid([f, g], [phi, psi], scales, theta)
    f_x, g_x = _embed(f, x_grid), _embed(g, x_grid)
    grid = ScaleTranslationGrid(x_grid, scales, theta, np.ones(len(scales)))
    L_psi_f = normalized_cfrwt(f, psi, grid, method)
    L_psi_g = L_psi_f if g is f else normalized_cfrwt(g, psi, grid, method)
    L_phi_f = L_psi_f if phi is psi else normalized_cfrwt(f, phi, grid, method)

    Cs = np.sqrt(psi.admissibility)
    f_est = estimator(f_x)
    diff_est = estimator(f_x - g_x)
    wav_diff = 0.0 if phi is psi else _wavelet_difference_l1(phi, psi)
    f_l1 = norm(f_x, 1)
    report = BoundReport(kind, theta, slack, family=family)
    for k, a in enumerate(scales):
        amp = abs(a) ** (0.5 / theta)
        row = L_psi_f.row(k)
        const = amp * psi.l1_norm / Cs
        report.add("l1_lemma", a, norm(row, 1), const * f_l1)
        est = estimator(row)
        report.add("boundedness", a, est, const * f_est)
        report.add("growth", a, est / amp, psi.l1_norm * f_est / Cs)
        dist = estimator(L_phi_f.row(k) - L_psi_g.row(k))
        rhs = amp * (f_est * wav_diff + diff_est * psi.l1_norm / Cs)
        report.add("distance", a, dist, rhs)
    return report


def hardy_bound_report(f, g, phi, psi, scales, M=None, slack=HARDY_SLACK, method="direct"):
    """Check the H¹ boundedness, growth and distance bounds scale by scale.

    Rows (per scale ``a``):

    ``l1_lemma``
        ``‖(L_ψf)(·,a)‖_{L¹}`` against ``|a|^(1/2θ) ‖ψ‖₁ ‖f‖₁ / √C_ψ``.
    ``boundedness``
        H¹ estimate of ``(L_ψf)(·,a)`` against ``|a|^(1/2θ) ‖ψ‖₁ ‖f‖_{H¹} / √C_ψ``.
    ``growth``
        the same estimate divided by ``|a|^(1/2θ)`` against its constant.
    ``distance``
        H¹ estimate of ``(L_φf - L_ψg)(·,a)`` against
        ``|a|^(1/2θ) (‖f‖_{H¹} ‖φ/√C_φ - ψ/√C_ψ‖₁ + ‖f - g‖_{H¹} ‖ψ/√C_ψ‖₁)``.

    All transforms and norms are evaluated on one lattice wide enough to
    hold every daughter wavelet, so both sides see the same truncation.
    """
    M = MollifierFamily() if M is None else M
    return _bound_report("hardy", lambda h: hardy_norm(h, M), f, g, phi, psi, scales,
                         slack, method, M.describe())


def morrey_bound_report(f, g, phi, psi, scales, nu=0.5, radii_count=32,
                        slack=MORREY_SLACK, method="direct"):
    """Morrey ``L^{1,ν}_M`` counterpart of :func:`hardy_bound_report`.

    Balls are centred at every node of the common lattice with
    ``radii_count`` log-spaced radii from the step to the span.

    Raises
    ------
    HypothesisViolationError
        If either wavelet is not flagged as compactly supported.
    """
    for w in (phi, psi):
        if not w.compact_support:
            raise HypothesisViolationError(
                f"wavelet {w.name!r} is not compactly supported; the Morrey "
                "bounds assume compact support")

    def estimator(h):
        return morrey_norm(h, BallFamily.for_grid(h.grid, nu, radii_count))

    return _bound_report("morrey", estimator, f, g, phi, psi, scales, slack, method,
                         {"nu": nu, "radii": radii_count, "centers": "all nodes"})
