"""Analyse a windowed sine and rebuild it from its scalogram.

The reconstruction error is driven by the finite scale range: daughters
outside ``[a_min, a_max]`` carry the energy that goes missing.  Widening
the range shrinks the error, and the shrinkage is faster for θ < 1
because the dilation ``|a|^(1/θ)`` stretches the covered range.

Run with ``python3 demos/reconstruction.py``.
"""

import numpy as np

from frwt import (SampledSignal, build_scale_grid, build_uniform_grid, catalog, cfrwt_forward,
                  norm, reconstruct)

t_grid = build_uniform_grid(-8, 8, 513)
b_grid = build_uniform_grid(-16, 16, 513)
psi_grid = build_uniform_grid(-8, 8, 2049)
f = SampledSignal.from_function(t_grid, lambda t: np.exp(-t * t / 8) * np.sin(3 * t))

print(f"{'theta':>6} {'a_min':>7} {'a_max':>6} {'rel. L2 error':>14}")
for theta in (0.5, 1.0):
    psi = catalog("mexican_hat", psi_grid, theta)
    for a_min, a_max in ((0.5, 2.0), (0.25, 4.0), (0.125, 8.0)):
        grid = build_scale_grid(b_grid, theta, a_min, a_max, 48)
        S = cfrwt_forward(f, psi, grid, "spectral")
        rec = reconstruct(S, psi, psi.admissibility, t_grid)
        print(f"{theta:6.2f} {a_min:7.3f} {a_max:6.1f} {norm(rec - f) / norm(f):14.3e}")
