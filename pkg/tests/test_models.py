from __future__ import annotations

import json

import numpy as np
import pytest

from bigcp import oracle
from bigcp.errors import InvalidInputError, MissingConstantError, OutOfRegionError, ParseError, ResourceLimitError
from bigcp.graph import Multigraph, graph_from_edges, line_graph
from bigcp.models.clawfree import ClawFreeTransform, approx_independence_clawfree, choose_rho, find_claw
from bigcp.models.edge_coloring import EdgeColoringModel, approx_edge_coloring, compositions, multinomial
from bigcp.models.independence import (
    approx_independence,
    approx_independence_even,
    approx_independence_multivariate,
    lambda_star,
)
from bigcp.models.spin import SpinModel, approx_spin
from bigcp.models.tutte import approx_tutte
from bigcp.series import approx_matches

from conftest import cycle, edgeless, path, random_graphs


class TestIndependence:
    def test_lambda_star(self):
        assert lambda_star(3) == pytest.approx(4 / 27)
        assert lambda_star(2) == pytest.approx(1 / 4)
        assert lambda_star(1) == lambda_star(0) == 1

    def test_c3(self, C3):
        res = approx_independence(C3, 0.1, 0.01)
        assert approx_matches(res.value, 1.3, 0.01)
        assert res.value == pytest.approx(1.3000000451000935, rel=1e-12)  # frozen
        assert res.m == 11

    def test_edgeless(self):
        res = approx_independence(edgeless(5), 0.1, 0.01)
        assert approx_matches(res.value, 1.1**5, 0.01)

    def test_out_of_disk(self, C3):
        with pytest.raises(OutOfRegionError):
            approx_independence(C3, 0.25, 0.01)
        with pytest.raises(OutOfRegionError):
            approx_independence(C3, 0.2j, 0.01, max_deg=3)

    def test_declared_degree(self, C3):
        with pytest.raises(InvalidInputError):
            approx_independence(C3, 0.1, 0.01, max_deg=1)

    def test_rejects_multigraph(self):
        with pytest.raises(InvalidInputError):
            approx_independence(Multigraph(2, ((0, 1), (0, 1))), 0.01, 0.01)
        with pytest.raises(InvalidInputError):
            approx_independence(Multigraph(1, ((0, 0),)), 0.01, 0.01)

    @pytest.mark.parametrize(("G", "expected"), [(cycle(3), 1.0), (path(2), 1.0), (path(3), 1.01)])
    def test_even(self, G, expected):
        res = approx_independence_even(G, 0.1, 0.01)
        assert approx_matches(res.value, expected, 0.01)

    def test_even_rejects(self, C3):
        with pytest.raises(OutOfRegionError):
            approx_independence_even(C3, -0.1, 0.01)
        with pytest.raises(OutOfRegionError):
            approx_independence_even(C3, 0.1j, 0.01)

    def test_multivariate(self, K2):
        res = approx_independence_multivariate(K2, [0.1, 0.05], 0.01)
        assert approx_matches(res.value, 1.15, 0.01)
        G = random_graphs(4, 1, 9, 3, n_min=9)[0]
        lam = 0.05 + 0.03j
        a = approx_independence_multivariate(G, [lam] * G.n, 0.01).value
        b = approx_independence(G, lam, 0.01).value
        assert approx_matches(a, b, 0.01)

    def test_multivariate_zero_weight_deletes_vertex(self):
        G = random_graphs(8, 1, 8, 3, n_min=8)[0]
        rng = np.random.default_rng(1)
        z = rng.uniform(-0.1, 0.1, G.n) + 1j * rng.uniform(-0.05, 0.05, G.n)
        z[3] = 0
        keep = [v for v in range(G.n) if v != 3]
        exact = oracle.exact_independence_multivariate(G.induced(keep), z[keep])
        res = approx_independence_multivariate(G, z, 0.01)
        assert approx_matches(res.value, exact, 0.01)

    def test_multivariate_out_of_disk(self, C3):
        with pytest.raises(OutOfRegionError):
            approx_independence_multivariate(C3, [0.1, 0.3, 0.1], 0.01)


class TestClawFree:
    def test_transform_invariants(self):
        for rho in (0.2, 0.2778, 0.9):
            T = ClawFreeTransform(rho)
            assert abs(T(0.0)) == 0
            assert abs(T(1.0) - 1) < 1e-9
            assert T.sigma == pytest.approx(T.sigma_direct(), rel=1e-12)
            assert T.beta > 1
        T = ClawFreeTransform(0.2778)
        assert T.N == 457
        z = 0.999 * np.exp(1j * np.linspace(-np.pi, np.pi, 64))
        assert T.in_strip(T(z * T.beta)).all()

    def test_choose_rho(self):
        assert choose_rho(0.2, 3) == pytest.approx(1 / (9 * 0.2 * 2))
        assert choose_rho(-0.1 + 0.1j, 3) == pytest.approx(np.sin(3 * np.pi / 4) / (6 * abs(-0.1 + 0.1j) * 2))
        assert choose_rho(1e-4, 3) == 0.9

    def test_line_graph_of_p4(self):
        G = line_graph(path(4))
        for lam in (0.2, 0.2 + 0.1j, 0.3j):
            res = approx_independence_clawfree(G, lam, 0.05)
            assert approx_matches(res.value, oracle.exact_independence(G, lam), 0.05)

    def test_beyond_tree_threshold(self):
        # lambda = 0.5 is outside the degree-2 disk of radius 1/4 but fine for claw-free graphs
        G = cycle(7)
        res = approx_independence_clawfree(G, 0.5, 0.05)
        assert approx_matches(res.value, oracle.exact_independence(G, 0.5), 0.05)

    def test_rejects(self):
        star = graph_from_edges([(0, 1), (0, 2), (0, 3)])
        assert find_claw(star) == (0, (1, 2, 3))
        with pytest.raises(InvalidInputError):
            approx_independence_clawfree(star, 0.1, 0.05)
        with pytest.raises(OutOfRegionError):
            approx_independence_clawfree(path(3), -0.1, 0.05)
        with pytest.raises(ResourceLimitError):
            approx_independence_clawfree(cycle(5), 50.0, 0.05)


class TestTutte:
    def test_examples(self, K2, C3):
        assert approx_matches(approx_tutte(K2, 30, -1, 0.01).value, 870, 0.01)
        res = approx_tutte(C3, 30, -1, 0.01)
        assert approx_matches(res.value, 24360, 0.01)
        assert res.value.real == pytest.approx(24359.999999999993, rel=1e-12)  # frozen

    def test_rescaling(self):
        G = random_graphs(12, 1, 7, 3, n_min=7)[0]
        q = 25 * np.exp(0.4j)
        res = approx_tutte(G, q, -1, 0.01)
        assert res.log_value - res.raw_log_value == pytest.approx(G.n * np.log(q))

    def test_errors(self, C3):
        with pytest.raises(InvalidInputError):
            approx_tutte(Multigraph(2, ((0, 0), (0, 1))), 30, -1, 0.01)
        with pytest.raises(OutOfRegionError):
            approx_tutte(C3, 10, -1, 0.01)
        with pytest.raises(MissingConstantError):
            approx_tutte(C3, 30, 1, 0.01)

    def test_explicit_constant(self, C3):
        res = approx_tutte(C3, 200, 1.0, 0.01, K=60)
        assert approx_matches(res.value, oracle.exact_tutte(C3, 200, 1.0), 0.01)


def spin_model_json(k, default, edges=None):
    enc = lambda A: [[[float(np.real(x)), float(np.imag(x))] for x in row] for row in A]
    data = {"k": k, "default": enc(default)}
    if edges:
        data["edges"] = {f"{u}-{v}": enc(A) for (u, v), A in edges.items()}
    return json.dumps(data)


class TestSpin:
    def test_all_ones(self):
        G = random_graphs(21, 1, 7, 3, n_min=7)[0]
        res = approx_spin(G, SpinModel(3, np.ones((3, 3))), 0.01)
        assert res.value == pytest.approx(3**G.n)
        assert np.all(res.power_sums == 0)

    def test_k2(self, K2):
        model = SpinModel(2, np.array([[1.1, 1], [1, 0.9]]))
        assert approx_matches(approx_spin(K2, model, 0.01).value, 4.0, 0.01)
        assert oracle.exact_spin(K2, model) == pytest.approx(4.0)

    def test_per_edge_matrices(self):
        G = cycle(4)
        A = np.array([[1.05, 0.97 + 0.02j], [0.97 + 0.02j, 1.0]])
        model = SpinModel.from_json(spin_model_json(2, np.ones((2, 2)), {(1, 0): A, (3, 2): A.conj()}))
        assert np.allclose(model.matrix(0, 1), A)
        res = approx_spin(G, model, 0.01)
        assert approx_matches(res.value, oracle.exact_spin(G, model), 0.01)

    def test_region(self, C3):
        far = SpinModel(2, np.array([[1.5, 1], [1, 1]]))
        with pytest.raises(OutOfRegionError):
            approx_spin(C3, far, 0.01)
        with pytest.warns(UserWarning):
            res = approx_spin(C3, far, 0.01, override_region_check=True)
        assert res.warnings

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            SpinModel(2, np.array([[1, 0.9], [1, 1]]))
        with pytest.raises(ParseError):
            SpinModel.from_json('{"k": 2, "default": [[1, 1]]}')
        with pytest.raises(ParseError):
            SpinModel.from_json("{")


class TestEdgeColoring:
    def test_helpers(self):
        assert compositions(2, 2) == ((2, 0), (1, 1), (0, 2))
        assert multinomial((2, 1)) == 3

    def test_all_ones(self):
        G = Multigraph(3, ((0, 1), (1, 2), (1, 1)))
        res = approx_edge_coloring(G, EdgeColoringModel(2, 1.0), 0.01)
        assert res.value == pytest.approx(2**G.m)

    def test_matchings_oracle(self, C3):
        model = EdgeColoringModel(2, 1.0, {(2, 0): 0.0})
        assert oracle.exact_edge_coloring(C3, model) == pytest.approx(4)
        with pytest.raises(OutOfRegionError):
            approx_edge_coloring(C3, model, 0.01)

    def test_small_perturbation(self):
        G = random_graphs(31, 1, 7, 3, n_min=7)[0]
        model = EdgeColoringModel.from_json(json.dumps({
            "k": 2,
            "default": [1, 0],
            "entries": [{"counts": [2, 1], "value": [1.05, 0.02]}, {"counts": [1, 1], "value": [0.95, 0]}],
            "per_vertex": {"0": {"entries": [{"counts": [0, 2], "value": [1.04, 0]}]}},
        }))
        res = approx_edge_coloring(G, model, 0.01)
        assert approx_matches(res.value, oracle.exact_edge_coloring(G, model), 0.01)

    def test_undefined(self, C3):
        model = EdgeColoringModel(2, None, {(1, 1): 1.0})
        with pytest.raises(InvalidInputError):
            approx_edge_coloring(C3, model, 0.01)
