# Independence polynomial inside the zero-free disk.
#
# For maximum degree D the polynomial has no roots in |lambda| < lambda*(D),
# and the engine only ever looks at connected induced subgraphs of size <= m.

from __future__ import annotations

import numpy as np

import bigcp
from bigcp import oracle
from bigcp.graph import random_bounded_degree_graph

D = 3
print("lambda*(3) =", bigcp.lambda_star(D), "= 4/27")

rng = np.random.default_rng(1)
G = random_bounded_degree_graph(14, D, 16, rng)
print(f"graph: n={G.n} edges={G.m} max degree={G.max_degree()}")

# walk lambda out towards the boundary along a ray; m grows like 1/(1 - |lambda|/lambda*)
for frac in (0.2, 0.5, 0.8, 0.9):
    lam = frac * bigcp.lambda_star(D) * np.exp(0.7j)
    res = bigcp.approx_independence(G, lam, 0.01, max_deg=D)
    exact = oracle.exact_independence(G, lam)
    print(f"|lambda|/lambda* = {frac:.2f}  m = {res.m:3d}  "
          f"ok = {bigcp.approx_matches(res.value, exact, 0.01)}  {res.elapsed * 1e3:7.1f} ms")

# the disk is a hard precondition
try:
    bigcp.approx_independence(G, 0.16, 0.01, max_deg=D)
except bigcp.OutOfRegionError as exc:
    print("rejected:", exc)

# multivariate weights: vertex v gets z_v, radius rescaled by max |z_v|
z = rng.uniform(-0.1, 0.1, G.n) + 1j * rng.uniform(-0.05, 0.05, G.n)
res = bigcp.approx_independence_multivariate(G, z, 0.01)
print("multivariate:", res.value, "vs", oracle.exact_independence_multivariate(G, z))
