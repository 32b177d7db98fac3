import importlib
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psrestore.raster import PanImage
from psrestore.weights import WeightParams, WeightGraph, compute_weights, domain_mask
from psrestore.solver import (Field, DualField, SolverParams, PrimalDualSolver, nonlocal_gradient,
                              nonlocal_divergence, estimate_operator_norm, prox_data, prox_dual,
                              energy, filter_component)
from psrestore.recorder import Recorder
from psrestore.utilities import InvariantError, DimensionError

from oracles import dense_gradient, dual_projected_gradient


def _graph(seed, size=8, nu_r=2, h_sim=2.0):
    # h_sim on the scale of the patch distances of a uniform [0, 1) PAN, so
    # that off-center weights stay far from zero
    rng = np.random.default_rng(seed)
    pan = PanImage(rng.uniform(0, 1, size=(size, size)))
    return compute_weights(pan, WeightParams(nu_r=nu_r, h_sim=h_sim))


def _random_graph(rng, size, nu_r):
    K = (2 * nu_r + 1)**2
    weights = rng.uniform(0, 1, size=(K, size, size))
    return WeightGraph(weights * domain_mask(size, size, nu_r), nu_r)


class TestOperator:

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), nu_r=st.integers(1, 3))
    def test_adjoint_identity(self, seed, nu_r):
        rng = np.random.default_rng(seed)
        graph = _random_graph(rng, 8, nu_r)
        u = Field(rng.standard_normal((8, 8)))
        q = DualField(rng.standard_normal(graph.weights.shape), nu_r)

        lhs = np.sum(nonlocal_gradient(u, graph).values * q.values)
        rhs = np.sum(u.data * nonlocal_divergence(q, graph).data)
        bound = 1e-10 * np.linalg.norm(u.data) * np.linalg.norm(q.values)
        assert abs(lhs + rhs) <= bound

    def test_graphs_carry_off_center_weight(self):
        for seed in range(5):
            graph = _graph(seed)
            off_center = 1.0 - graph.weights[graph.center]
            assert off_center.mean() >= 0.5
            assert off_center.min() >= 0.1

    def test_gradient_matches_dense_matrix(self, rng):
        graph = _graph(1, size=6, nu_r=2)
        u = Field(rng.standard_normal((6, 6)))
        D = dense_gradient(graph)
        expected = D @ u.values
        assert np.allclose(nonlocal_gradient(u, graph).values.reshape(-1), expected, atol=1e-13)

    def test_divergence_matches_dense_transpose(self, rng):
        graph = _graph(2, size=6, nu_r=1)
        q = DualField(rng.standard_normal(graph.weights.shape), 1)
        D = dense_gradient(graph)
        expected = -D.T @ q.values.reshape(-1)
        assert np.allclose(nonlocal_divergence(q, graph).values, expected, atol=1e-13)

    def test_gradient_of_constant_is_zero(self):
        graph = _graph(3)
        grad = nonlocal_gradient(Field(np.full((8, 8), 2.5)), graph)
        assert np.all(grad.values == 0.0)

    def test_single_dual_entry(self):
        graph = _graph(15, size=5, nu_r=1)
        k = 5                                   # offset (0, +1)
        assert graph.offsets[k] == (0, 1)
        values = np.zeros(graph.weights.shape)
        values[k, 2, 1] = 0.7
        div = nonlocal_divergence(DualField(values, 1), graph).data
        s = np.sqrt(graph.weights[k, 2, 1])
        expected = np.zeros((5, 5))
        expected[2, 1] = s * 0.7
        expected[2, 2] = -s * 0.7
        assert np.allclose(div, expected, rtol=0.0, atol=1e-15)

    def test_self_only_graph(self):
        weights = np.zeros((9, 4, 4))
        weights[4] = 1.0                        # offset (0, 0)
        graph = WeightGraph(weights, 1)
        assert estimate_operator_norm(graph) == pytest.approx(2.0)
        grad = nonlocal_gradient(Field(np.arange(16.0).reshape(4, 4)), graph)
        assert np.all(grad.values == 0.0)

    def test_operator_norm_bounds_spectral_norm(self):
        for seed in range(5):
            graph = _graph(seed, size=6, nu_r=2)
            assert np.linalg.norm(dense_gradient(graph), 2) <= estimate_operator_norm(graph) + 1e-12

    def test_grid_mismatch(self):
        graph = _graph(4)
        with pytest.raises(DimensionError):
            nonlocal_gradient(Field(np.zeros((7, 8))), graph)


class TestProx:

    def test_prox_data(self):
        u = Field(np.array([[1.0, 3.0]]))
        f = Field(np.array([[3.0, 3.0]]))
        out = prox_data(u, f, 1.0)
        assert np.allclose(out.data, [[2.0, 3.0]])

    def test_prox_data_large_step(self):
        out = prox_data(Field(np.array([[5.0]])), Field(np.array([[3.0]])), 1e6)
        assert out.data[0, 0] == pytest.approx(3.000002, abs=1e-5)

    def test_prox_data_fixed_point(self, rng):
        f = Field(rng.standard_normal((4, 4)))
        assert np.array_equal(prox_data(f, f, 0.37).data, f.data)

    def test_prox_data_rejects_nonpositive_tau(self):
        f = Field(np.zeros((2, 2)))
        with pytest.raises(InvariantError):
            prox_data(f, f, 0.0)

    def test_prox_dual_interior_and_boundary(self):
        values = np.zeros((9, 1, 2))
        values[0, 0, 0] = 0.25     # norm lam/2: unchanged
        values[0, 0, 1] = 1.0      # norm 2 lam: scaled onto the ball
        out = prox_dual(DualField(values, 1), 0.5)
        assert out.values[0, 0, 0] == 0.25
        assert out.values[0, 0, 1] == pytest.approx(0.5)

    def test_prox_dual_random(self, rng):
        q = DualField(rng.standard_normal((25, 5, 5)), 2)
        out = prox_dual(q, 0.7)
        norms = out.pixelNorms()
        assert np.all(norms <= 0.7 + 1e-12)
        # directions are preserved
        ratio = out.values / q.values
        assert np.allclose(ratio, ratio[:1], rtol=1e-12)

    def test_energy_data_term_only(self, rng):
        graph = _graph(5)
        u = Field(rng.standard_normal((8, 8)))
        f = Field(rng.standard_normal((8, 8)))
        assert energy(u, f, graph, 0.0) == 0.5 * np.sum((u.data - f.data)**2)

    def test_energy_of_constant_at_data(self):
        graph = _graph(6)
        f = Field(np.full((8, 8), 1.5))
        assert energy(f, f, graph, 3.0) == 0.0


class TestParams:

    def test_defaults(self):
        params = SolverParams()
        assert params.theta == 1.0
        assert params.lambdaFor(2) == params.lam

    def test_per_component_lambda(self):
        params = SolverParams(lambdas=[0.1, 0.2, 0.3])
        assert params.lambdaFor(3) == 0.3
        with pytest.raises(InvariantError):
            params.lambdaFor(4)

    @pytest.mark.parametrize('kwargs', [{'lam': -1.0}, {'theta': 1.5}, {'max_iters': 0},
                                        {'rel_tol': -1e-3}, {'tau': 0.0}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvariantError):
            SolverParams(**kwargs)

    def test_step_condition(self):
        assert SolverParams().steps(2.0) == pytest.approx((0.495, 0.495))
        with pytest.raises(InvariantError):
            SolverParams(tau=1.0, sigma=1.0).steps(2.0)


class TestFilter:

    def test_zero_lambda_is_identity(self, rng):
        graph = _graph(7)
        f = Field(rng.standard_normal((8, 8)))
        out = filter_component(f, graph, SolverParams(lam=0.0))
        assert np.array_equal(out.data, f.data)

    def test_constant_input_is_fixed(self):
        graph = _graph(8)
        f = Field(np.full((8, 8), -3.25))
        out = filter_component(f, graph, SolverParams(lam=2.0))
        assert np.array_equal(out.data, f.data)

    def test_zero_lambda_converges_after_one_iteration(self, rng):
        solver = PrimalDualSolver(_graph(9), SolverParams(lam=0.0))
        solver.solve(Field(rng.standard_normal((8, 8))))
        assert solver.converged
        assert solver.iterations == 1

    @pytest.mark.parametrize('instance', range(10))
    def test_matches_dual_oracle(self, instance):
        rng = np.random.default_rng(100 + instance)
        lam = (0.1, 0.5, 2.0)[instance % 3]
        graph = _graph(200 + instance, size=8, nu_r=1 + instance % 2)
        f = Field(rng.uniform(0, 1, size=(8, 8)))

        u = filter_component(f, graph, SolverParams(lam=lam, max_iters=20000, rel_tol=0.0))
        expected = dual_projected_gradient(f.values, dense_gradient(graph), lam).reshape(8, 8)

        # the filter moves the data, so the comparison is not between two copies of f
        assert np.max(np.abs(expected - f.data)) > 1e-3
        assert np.max(np.abs(u.data - expected)) <= 1e-3
        e_cp = energy(u, f, graph, lam)
        e_oracle = energy(Field(expected), f, graph, lam)
        assert e_cp - e_oracle <= 1e-6 * e_oracle

    def test_energy_decreases(self, rng):
        graph = _graph(10)
        f = Field(rng.uniform(0, 1, size=(8, 8)))
        recorder = Recorder()
        u = filter_component(f, graph, SolverParams(lam=0.5, max_iters=200, rel_tol=0.0), recorder=recorder)
        trace = recorder.toDataFrame()
        assert len(trace) == 201
        assert trace['energy'].iloc[-1] <= trace['energy'].iloc[10]
        assert trace['energy'].iloc[-1] <= trace['energy'].iloc[0]
        assert energy(u, f, graph, 0.5) <= energy(f, f, graph, 0.5)

    def test_energy_is_monotone_after_warmup(self, rng):
        graph = _graph(16)
        f = Field(rng.uniform(0, 1, size=(8, 8)))
        recorder = Recorder()
        filter_component(f, graph, SolverParams(lam=0.1, max_iters=300, rel_tol=0.0), recorder=recorder)
        steps = np.diff(recorder.fetchRecord('energy')[10:])
        assert np.all(steps <= 1e-10)

    def test_maximum_principle(self, rng):
        graph = _graph(11)
        f = Field(rng.uniform(-2, 5, size=(8, 8)))
        u = filter_component(f, graph, SolverParams(lam=1.0, max_iters=20000, rel_tol=0.0))
        eps = 1e-6 * (f.data.max() - f.data.min())
        assert not np.allclose(u.data, f.data, rtol=0.0, atol=1e-3)
        assert u.data.min() >= f.data.min() - eps
        assert u.data.max() <= f.data.max() + eps

    def test_banded_sweeps_match_single_band(self, rng, monkeypatch):
        graph = _graph(17, size=9, nu_r=2)
        f = Field(rng.uniform(0, 1, size=(9, 9)))
        params = SolverParams(lam=0.5, max_iters=50, rel_tol=0.0)
        whole = filter_component(f, graph, params)
        module = importlib.import_module('psrestore.solver.PrimalDualSolver')
        monkeypatch.setattr(module, '_BAND_PIXELS', 20)          # two rows per band
        banded = filter_component(f, graph, params)
        assert len(graph.bandSlices(2)) == 5
        assert np.allclose(banded.data, whole.data, rtol=0.0, atol=1e-12)

    def test_filter_keeps_mean(self, rng):
        graph = _graph(12)
        f = Field(rng.uniform(0, 1, size=(8, 8)))
        u = filter_component(f, graph, SolverParams(lam=0.5, max_iters=2000, rel_tol=0.0))
        assert u.mean() == pytest.approx(f.mean(), abs=1e-6)

    def test_recorder_and_state(self, rng):
        graph = _graph(13)
        solver = PrimalDualSolver(graph, SolverParams(lam=0.3, max_iters=5, rel_tol=0.0))
        recorder = Recorder()
        solver.setRecorder(recorder)
        solver.solve(Field(rng.uniform(0, 1, size=(8, 8))), component=2)

        state = solver.fetchState()
        assert state['iterations'] == 5
        assert state['converged'] is False
        assert state['lambda'] == 0.3
        assert state['sigma'] * state['tau'] * state['L']**2 <= 1.0
        assert list(recorder.fetchRecord('component')) == [2] * 6
        assert list(recorder.fetchRecord('iteration')) == list(range(6))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            filter_component(Field(np.zeros((6, 8))), _graph(14), SolverParams())
