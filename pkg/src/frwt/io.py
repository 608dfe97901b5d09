"""CSV and JSON formats for signals, spectra and scalograms.

Signals are ``t,re,im`` rows on a uniform grid, spectra are ``xi,re,im``
and scalograms are ``b,a,re,im`` rows in scale-major order with a JSON
sidecar next to the CSV.  Numbers are written with 17 significant digits
so files round-trip exactly.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .cfrwt import Scalogram, build_scale_grid
from .errors import FormatError
from .frft import FrSpectrum
from .grids import SampledSignal, UniformGrid

__all__ = [
    "read_signal_csv",
    "write_signal_csv",
    "read_spectrum_csv",
    "write_spectrum_csv",
    "write_scalogram",
    "read_scalogram",
    "sidecar_path",
    "grid_to_dict",
    "grid_from_dict",
    "STEP_RTOL",
]

STEP_RTOL = 1e-9
_FMT = "%.17g"


def _read_rows(path, first):
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from None
    header = [c.strip() for c in rows[0]] if rows else []
    if header != [first, "re", "im"]:
        raise FormatError(f"{path}: expected header '{first},re,im', got {','.join(header)!r}")
    body = rows[1:]
    if len(body) < 2:
        raise FormatError(f"{path}: need at least 2 data rows, got {len(body)}")
    for k, r in enumerate(body, start=2):
        if len(r) != 3:
            raise FormatError(f"{path}: line {k} has {len(r)} columns, expected 3")
    try:
        data = np.array([[float(c) for c in r] for r in body])
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric value ({exc})") from None
    if not np.all(np.isfinite(data)):
        raise FormatError(f"{path}: values must be finite")
    return data


def _uniform_grid(x, path):
    n = x.size
    step = (x[-1] - x[0]) / (n - 1)
    if not step > 0:
        raise FormatError(f"{path}: grid must be strictly increasing")
    if np.max(np.abs(np.diff(x) - step)) > STEP_RTOL * step:
        raise FormatError(f"{path}: rows do not form a uniform grid "
                          f"(relative step tolerance {STEP_RTOL:g})")
    return UniformGrid(float(x[0]), float(step), n)


def read_signal_csv(path):
    """Load a ``t,re,im`` file as a :class:`SampledSignal`."""
    data = _read_rows(path, "t")
    return SampledSignal(_uniform_grid(data[:, 0], path), data[:, 1] + 1j * data[:, 2])


def _write(path, first, x, values):
    arr = np.column_stack([x, values.real, values.imag])
    np.savetxt(path, arr, fmt=_FMT, delimiter=",", header=f"{first},re,im", comments="")


def write_signal_csv(path, signal):
    _write(path, "t", signal.grid.nodes, signal.values)


def read_spectrum_csv(path, theta):
    data = _read_rows(path, "xi")
    return FrSpectrum(_uniform_grid(data[:, 0], path), data[:, 1] + 1j * data[:, 2], theta)


def write_spectrum_csv(path, spectrum):
    _write(path, "xi", spectrum.xi_grid.nodes, spectrum.values)


def sidecar_path(path):
    return Path(path).with_suffix(".json")


def grid_to_dict(grid):
    return {"t_min": grid.t_min, "step": grid.step, "count": grid.count}


def grid_from_dict(d):
    try:
        return UniformGrid(float(d["t_min"]), float(d["step"]), int(d["count"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad grid record {d!r}: {exc}") from None


def write_scalogram(path, S, meta):
    """Write ``S`` as ``b,a,re,im`` rows plus a JSON sidecar.

    ``meta`` must hold the scale parameters under ``"scales"`` (``min``,
    ``max``, ``count``, ``signed``); the θ, wavelet id, translation grid
    and normalisation flag are added here.
    """
    grid = S.grid
    nb = grid.b_grid.count
    b = np.tile(grid.b, grid.scales.size)
    a = np.repeat(grid.scales, nb)
    v = S.values.reshape(-1)
    arr = np.column_stack([b, a, v.real, v.imag])
    np.savetxt(path, arr, fmt=_FMT, delimiter=",", header="b,a,re,im", comments="")
    side = dict(meta)
    side.update({"theta": grid.theta, "wavelet_id": S.wavelet_id,
                 "b_grid": grid_to_dict(grid.b_grid), "normalized": bool(S.normalized)})
    sidecar_path(path).write_text(json.dumps(side, indent=2, sort_keys=True) + "\n")
    return side


def read_scalogram(path):
    """Load a scalogram CSV and its sidecar; returns ``(Scalogram, sidecar)``."""
    side_file = sidecar_path(path)
    try:
        side = json.loads(side_file.read_text())
    except OSError:
        raise FormatError(f"missing sidecar {side_file}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{side_file}: invalid JSON ({exc})") from None
    try:
        theta = float(side["theta"])
        sc = side["scales"]
        b_grid = grid_from_dict(side["b_grid"])
        grid = build_scale_grid(b_grid, theta, float(sc["min"]), float(sc["max"]),
                                int(sc["count"]), bool(sc["signed"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{side_file}: incomplete sidecar ({exc})") from None
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = [c.strip() for c in next(reader, [])]
            rows = [r for r in reader if r]
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from None
    if header != ["b", "a", "re", "im"]:
        raise FormatError(f"{path}: expected header 'b,a,re,im'")
    try:
        data = np.array([[float(c) for c in r] for r in rows])
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric value ({exc})") from None
    na, nb = grid.shape
    if data.shape != (na * nb, 4):
        raise FormatError(f"{path}: expected {na * nb} rows of 4 columns for the "
                          f"sidecar grid, got {data.shape}")
    if not np.all(np.isfinite(data)):
        raise FormatError(f"{path}: values must be finite")
    tol = 1e-9 * max(b_grid.step, 1.0)
    if (np.max(np.abs(data[:, 0] - np.tile(grid.b, na))) > tol
            or np.max(np.abs(data[:, 1] - np.repeat(grid.scales, nb))
                      / np.repeat(np.abs(grid.scales), nb)) > 1e-9):
        raise FormatError(f"{path}: (b, a) columns do not match the sidecar grid")
    values = (data[:, 2] + 1j * data[:, 3]).reshape(na, nb)
    S = Scalogram(grid, values, str(side.get("wavelet_id", "custom")),
                  bool(side.get("normalized", False)))
    return S, side
