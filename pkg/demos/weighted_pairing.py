"""Compare the two sides of the weighted inner-product relation.

For each order and scale the script prints the ratio of the |b|-weighted
pairing of two scalogram rows to the scaled inner product of the
weighted spectral profiles.  A correct constant would give 1 everywhere.
At θ = 1 the ratio is 2π at every scale.  For θ < 1 it varies with the
scale, so no single constant can fix it.

Run with ``python3 demos/weighted_pairing.py``.
"""

import numpy as np

from frwt import SampledSignal, build_uniform_grid, catalog, weighted_inner_product

t_grid = build_uniform_grid(-8, 8, 513)
b_grid = build_uniform_grid(-16, 16, 513)
f = SampledSignal.from_function(t_grid, lambda t: np.exp(-t * t / 8) * np.sin(3 * t))

print(f"{'theta':>6} {'a':>6} {'lhs / rhs':>10}")
for theta in (0.5, 0.75, 1.0):
    psi = catalog("mexican_hat", build_uniform_grid(-8, 8, 2049), theta)
    for a in (0.25, 0.5, 2.0):
        lhs, rhs = weighted_inner_product(f, f, psi, psi, a, b_grid)
        print(f"{theta:6.2f} {a:6.2f} {abs(lhs) / abs(rhs):10.4f}")
print(f"2π = {2 * np.pi:.4f}")
