# Claw-free graphs beyond the degree disk.
#
# The roots of Z(G) are real and negative when G has no induced claw, so any
# lambda off the negative axis can be reached.  A polynomial phi squeezes a
# disk of radius beta > 1 into a thin strip around [0, 1] first.

from __future__ import annotations

import numpy as np

import bigcp
from bigcp import oracle
from bigcp.graph import Multigraph, line_graph
from bigcp.models.clawfree import ClawFreeTransform, choose_rho

# %% the transform itself
T = ClawFreeTransform(choose_rho(0.2 + 0.1j, 3))
print(f"rho={T.rho:.4f}  N={T.N}  beta-1={T.beta - 1:.2e}")
print("phi(0) =", T(0.0), " phi(1) =", T(1.0))
circle = T.beta * np.exp(1j * np.linspace(-np.pi, np.pi, 200))
print("image of |z| = beta inside the strip:", bool(T.in_strip(T(circle)).all()))

# %% line graph of a 6-cycle with a pendant edge: claw-free, max degree 3
H = Multigraph(7, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6)))
L = line_graph(H)
print(f"line graph: n={L.n} max degree={L.max_degree()}")
for lam in (0.3j, 0.2 + 0.1j, -0.1 + 0.05j):
    res = bigcp.approx_independence_clawfree(L, lam, 0.05)
    print(f"lambda={lam}  m={res.m}  approx={res.value:.6f}  exact={oracle.exact_independence(L, lam):.6f}")

# %% on a cycle (degree 2) lambda = 0.5 is twice lambda*(2) and still fine
C = line_graph(Multigraph(9, tuple((i, (i + 1) % 9) for i in range(9))))
res = bigcp.approx_independence_clawfree(C, 0.5, 0.05)
print(f"C9, lambda=0.5  m={res.m}  approx={res.value.real:.4f}  exact={oracle.exact_independence(C, 0.5).real:.4f}")

# the price grows very fast with |lambda| and the degree; the caps say so up front
try:
    bigcp.approx_independence_clawfree(L, 0.5, 0.05)
except bigcp.ResourceLimitError as exc:
    print("degree 3, lambda=0.5:", exc)
