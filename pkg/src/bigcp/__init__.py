"""Deterministic approximation of graph polynomials through inverse power sums."""

from __future__ import annotations

from . import oracle
from .engine import BigcpModel, EngineLimits, SupportTable, compute_power_sums, compute_support_table
from .errors import (
    BigcpError,
    ContractViolation,
    InvalidInputError,
    MissingConstantError,
    OutOfRegionError,
    ParseError,
    ResourceLimitError,
)
from .graph import (
    Flavor,
    Fragment,
    Multigraph,
    canonical_code,
    count_connected_bound,
    count_induced,
    enumerate_connected_sets,
    is_isomorphic_connected,
    line_graph,
    max_degree,
    parse_graph,
    pattern_dictionary,
    read_graph,
)
from .models.clawfree import ClawFreeTransform, approx_independence_clawfree
from .models.edge_coloring import EdgeColoringModel, approx_edge_coloring
from .models.independence import (
    IndependenceModel,
    approx_independence,
    approx_independence_even,
    approx_independence_multivariate,
    lambda_star,
)
from .models.spin import SpinModel, approx_spin
from .models.tutte import TutteModel, approx_tutte
from .series import (
    ApproxResult,
    approx_matches,
    coeffs_from_power_sums,
    compose_truncate,
    evaluate_truncated,
    power_sums_from_coeffs,
    taylor_order,
)

__version__ = "0.1.0"
