# Running time against n on sparse bounded-degree graphs.
#
# The truncation order only grows like log(n/eps), so for fixed lambda the
# cost is polynomial in n.  Same generator as `bigcp bench`.

from __future__ import annotations

import numpy as np

import bigcp
from bigcp.graph import random_bounded_degree_graph

lam, eps, D = 0.1, 0.01, 3
rows = []
for n in (25, 50, 100, 200, 400):
    G = random_bounded_degree_graph(n, D, round(0.4 * n), np.random.default_rng([0, n]))
    res = bigcp.approx_independence(G, lam, eps, max_deg=D)
    rows.append((n, res.m, res.elapsed))
    print(f"n={n:4d}  m={res.m}  {res.elapsed * 1e3:8.1f} ms")

n, _, t = np.array(rows).T
print("log-log slope: %.2f" % np.polyfit(np.log(n), np.log(t), 1)[0])
