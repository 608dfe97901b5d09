"""Hardy and Morrey norm estimates of scalogram rows against their bounds.

Each row of the report compares an estimated norm of one scalogram row
with the bound predicted from the norms of the signal and the wavelet.
``ratio`` below the slack (1.05 for Hardy, 1.10 for Morrey) passes.

Run with ``python3 demos/space_bounds.py``.
"""

import numpy as np

from frwt import (HypothesisViolationError, SampledSignal, build_uniform_grid, catalog,
                  hardy_bound_report, morrey_bound_report)

g = build_uniform_grid(-8, 8, 513)
f = SampledSignal.from_function(g, lambda t: (1 - t * t) * np.exp(-t * t / 2))
h = SampledSignal.from_function(g, lambda t: (1 - (t - .3) ** 2) * np.exp(-(t - .3) ** 2 / 2))
scales = [-2.0, -0.5, 0.5, 2.0]


def show(rep):
    print(f"{rep.theorem} bounds, θ = {rep.theta}")
    for r in rep.rows:
        print(f"  {r['check']:>12} a={r['a']:+5.2f} ratio={r['ratio']:.3f} "
              f"{'pass' if r['pass'] else 'FAIL'}")


phi, psi = catalog("mexican_hat", g, 0.5), catalog("dog", g, 0.5)
show(hardy_bound_report(f, h, phi, psi, scales))

haar = catalog("haar", build_uniform_grid(-1, 2, 385), 0.5)
show(morrey_bound_report(f, h, haar, haar, scales))

try:
    morrey_bound_report(f, h, phi, phi, scales)
except HypothesisViolationError as exc:
    print(f"mexican hat refused for Morrey bounds: {exc}")
