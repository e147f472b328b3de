# Spin and edge-coloring models close to the all-ones model.
#
# Both partition functions become polynomials in z whose value at z = 1 is
# the target; when every weight is within a degree-dependent distance of 1
# those polynomials have no zeros in a disk slightly larger than 1.

from __future__ import annotations

import json

import numpy as np

import bigcp
from bigcp import oracle
from bigcp.graph import random_bounded_degree_graph

rng = np.random.default_rng(5)
G = random_bounded_degree_graph(8, 3, 11, rng)

# Ising-like interaction with a small complex field on the diagonal
A = np.array([[1.08 + 0.02j, 0.96], [0.96, 1.05 - 0.03j]])
spin = bigcp.SpinModel(2, A)
res = bigcp.approx_spin(G, spin, 0.01)
print("spin:", res.value, "exact:", oracle.exact_spin(G, spin), "m =", res.m)

# the same model read from the JSON file format used by the CLI
text = json.dumps({"k": 2, "default": [[[1.08, 0.02], 0.96], [0.96, [1.05, -0.03]]]})
print("from json equal:", np.allclose(bigcp.SpinModel.from_json(text).default, A))

# edge colorings: h depends on how many edges of each color meet a vertex
h = bigcp.EdgeColoringModel(2, 1.0, {(3, 0): 1.06, (0, 3): 0.95, (2, 1): 1.02 + 0.03j})
res = bigcp.approx_edge_coloring(G, h, 0.01)
print("edge-coloring:", res.value, "exact:", oracle.exact_edge_coloring(G, h), "m =", res.m)

# too far from 1: refused unless overridden, and then flagged
far = bigcp.SpinModel(2, np.array([[1.4, 1.0], [1.0, 1.0]]))
try:
    bigcp.approx_spin(G, far, 0.01)
except bigcp.OutOfRegionError as exc:
    print("refused:", exc)
