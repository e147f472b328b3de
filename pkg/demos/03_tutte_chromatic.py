# Chromatic polynomials as the Tutte polynomial at w = -1.
#
# Z_T(G)(q, -1) counts proper q-colorings.  The engine works with
# z^n Z_T(1/z, w), which is zero-free for |z| < 1/K, so q has to be large.

from __future__ import annotations

import numpy as np

import bigcp
from bigcp import oracle
from bigcp.graph import Multigraph

petersen = Multigraph(10, tuple(
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
))

for q in (25, 40, 100):
    res = bigcp.approx_tutte(petersen, q, -1, 1e-3)
    exact = oracle.exact_tutte(petersen, q, -1)
    print(f"q={q:3d}  m={res.m:3d}  approx={res.value.real:.6e}  exact={exact.real:.6e}")

# complex q works the same way; only |q| > K matters
q = 22.8 * np.exp(2.0j)
res = bigcp.approx_tutte(petersen, q, -1, 0.01, max_deg=3)
print("complex q:", res.value, "vs", oracle.exact_tutte(petersen, q, -1))

# parallel edges are fine, loops are not
theta = Multigraph(2, ((0, 1), (0, 1), (0, 1)))
print("theta graph:", bigcp.approx_tutte(theta, 30, -0.5, 0.01).value, oracle.exact_tutte(theta, 30, -0.5))
