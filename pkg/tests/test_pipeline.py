import json
import time
from dataclasses import replace
import numpy as np
import pytest

from psrestore.raster import MultiBandImage, PanImage
from psrestore.pca import fit_pca, forward_pca
from psrestore.solver import Field, SolverParams
from psrestore.weights import WeightParams
from psrestore.histmatch import MatchParams, match_global
from psrestore.metrics import rmse
from psrestore.pipeline import (SimulationSpec, mtf_downsample, simulate_pan, simulate_dataset, upsample,
                                baseline_pansharpen, RestoreParams, Restoration, restore, make_scene,
                                Tuner, load_grid, Experiment)
from psrestore.utilities import InvariantError, DimensionError

FAST = RestoreParams(weights=WeightParams(nu_r=3), match=MatchParams(window=9))

# uniform [0, 1) PAN noise needs h_sim on the scale of its patch distances,
# otherwise every off-center weight underflows and the filter does nothing
NOISY = RestoreParams(weights=WeightParams(nu_r=3, h_sim=2.0), match=MatchParams(window=9))


class TestMtf:

    def test_identity(self, random_image):
        img = random_image(12, 10)
        out = mtf_downsample(img, 1, 1.0)
        assert np.allclose(out.data, img.data, rtol=0.0, atol=1e-12)

    def test_constant(self):
        img = MultiBandImage(np.full((2, 12, 12), 0.7))
        out = mtf_downsample(img, 3, 0.15)
        assert out.data.shape == (2, 4, 4)
        assert np.allclose(out.data, 0.7, rtol=0.0, atol=1e-12)

    def test_gain_at_nyquist(self):
        xx = np.mgrid[0:16, 0:16][1]
        pan = PanImage(np.cos(np.pi * xx / 2.0))
        out = mtf_downsample(pan, 2, 0.15)
        assert out.data.shape == (8, 8)
        assert np.allclose(np.abs(out.data), 0.15, rtol=0.0, atol=1e-6)

    def test_mean_preserved(self, random_image):
        img = random_image(24, 24)
        out = mtf_downsample(img, 4, 0.3)
        assert np.allclose(out.data.mean(axis=(1, 2)), img.data.mean(axis=(1, 2)), atol=1e-12)

    def test_not_divisible(self, random_image):
        with pytest.raises(InvariantError):
            mtf_downsample(random_image(10, 12), 4, 0.3)

    @pytest.mark.parametrize('cut', [0.0, 1.5])
    def test_invalid_cut(self, random_image, cut):
        with pytest.raises(InvariantError):
            mtf_downsample(random_image(8, 8), 2, cut)


class TestUpsample:

    def test_identity(self, random_image):
        img = random_image(5, 6)
        assert np.array_equal(upsample(img, 1).data, img.data)

    def test_constant(self):
        out = upsample(MultiBandImage(np.full((3, 4, 5), 2.0)), 3)
        assert out.data.shape == (3, 12, 15)
        assert np.allclose(out.data, 2.0, rtol=0.0, atol=1e-12)

    @pytest.mark.parametrize('width,height,factor', [(5, 6, 3), (8, 8, 2), (7, 4, 4)])
    def test_interpolates_samples(self, rng, width, height, factor):
        img = MultiBandImage(rng.uniform(0, 1, size=(2, height, width)))
        out = upsample(img, factor)
        assert np.allclose(out.data[:, ::factor, ::factor], img.data, rtol=0.0, atol=1e-12)

    def test_band_limited_signal(self):
        yy, xx = np.mgrid[0:32, 0:32].astype(float)
        fine = np.cos(2 * np.pi * xx / 32.0) + 0.5 * np.sin(2 * np.pi * 2 * yy / 32.0)
        coarse = MultiBandImage(np.stack([fine[::4, ::4], 2.0 * fine[::4, ::4]]))
        out = upsample(coarse, 4)
        assert np.allclose(out.data[0], fine, atol=1e-12)
        assert np.allclose(out.data[1], 2.0 * fine, atol=1e-12)


class TestSimulatePan:

    def test_one_hot(self, random_image):
        img = random_image()
        pan = simulate_pan(img, (0.0, 1.0, 0.0, 0.0))
        assert np.array_equal(pan.data, img.data[1])

    def test_identical_bands(self, rng):
        band = rng.uniform(0, 1, size=(6, 6))
        pan = simulate_pan(MultiBandImage(np.stack([band] * 4)), SimulationSpec().pan_coeffs)
        assert np.allclose(pan.data, band, rtol=0.0, atol=1e-15)

    def test_weighted_sum(self):
        img = MultiBandImage(np.arange(1.0, 5.0).reshape(4, 1, 1) * np.ones((4, 2, 2)))
        pan = simulate_pan(img, (0.1, 0.4, 0.25, 0.25))
        assert np.allclose(pan.data, 2.65)

    @pytest.mark.parametrize('coeffs', [(0.5, 0.5, 0.5, -0.5), (0.2, 0.2, 0.2, 0.2), (0.5, 0.5)])
    def test_invalid_coefficients(self, random_image, coeffs):
        with pytest.raises(InvariantError):
            simulate_pan(random_image(), coeffs)


class TestSimulationSpec:

    def test_defaults(self):
        spec = SimulationSpec()
        assert spec.ref_factor * spec.ms_factor == 12
        assert sum(spec.pan_coeffs) == pytest.approx(1.0)

    def test_json_round_trip(self, tmp_path):
        spec = SimulationSpec(ms_factor=2, ms_cut=0.3)
        path = tmp_path / 'spec.json'
        spec.toJson(path)
        assert SimulationSpec.fromJson(path) == spec

    def test_json_partial_and_unknown(self, tmp_path):
        path = tmp_path / 'spec.json'
        path.write_text(json.dumps({'ref_factor': 2}))
        assert SimulationSpec.fromJson(path).ref_factor == 2
        path.write_text(json.dumps({'ratio': 2}))
        with pytest.raises(InvariantError):
            SimulationSpec.fromJson(path)

    @pytest.mark.parametrize('kwargs', [{'ref_factor': 0}, {'ms_factor': 1.5}, {'ref_mtf': 0.0}, {'ms_cut': 2.0}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvariantError):
            SimulationSpec(**kwargs)


class TestSimulateDataset:

    def test_shapes(self, random_image):
        spec = SimulationSpec(ref_factor=1, ms_factor=2)
        reference, pan, ms = simulate_dataset(random_image(16, 16), spec)
        assert reference.data.shape == (4, 16, 16)
        assert pan.data.shape == (16, 16)
        assert ms.data.shape == (4, 8, 8)

    def test_default_shapes(self, random_image):
        reference, pan, ms = simulate_dataset(random_image(24, 24))
        assert reference.data.shape == (4, 8, 8)
        assert pan.data.shape == (8, 8)
        assert ms.data.shape == (4, 2, 2)

    def test_identity(self, random_image):
        img = random_image(12, 12)
        spec = SimulationSpec(ref_factor=1, ref_mtf=1.0, ms_factor=1, ms_cut=1.0)
        reference, pan, ms = simulate_dataset(img, spec)
        assert np.allclose(reference.data, img.data, atol=1e-12)
        assert np.allclose(ms.data, img.data, atol=1e-12)
        assert np.allclose(pan.data, simulate_pan(img, spec.pan_coeffs).data, atol=1e-12)

    def test_band_by_band(self, random_image):
        img = random_image(24, 24)
        spec = SimulationSpec(ref_factor=2, ms_factor=3)
        reference, _, ms = simulate_dataset(img, spec)
        for m in range(4):
            band = PanImage(img.data[m])
            assert np.allclose(reference.data[m], mtf_downsample(band, 2, 0.15).data, atol=1e-12)
            assert np.allclose(ms.data[m], mtf_downsample(band, 6, 0.35, hard_cut=False).data, atol=1e-12)

    def test_not_divisible(self, random_image):
        with pytest.raises(InvariantError):
            simulate_dataset(random_image(18, 18))


class TestBaseline:

    def test_shapes(self, random_image, random_pan):
        fused = baseline_pansharpen(random_image(4, 4), random_pan(16, 16), 4)
        assert fused.data.shape == (4, 16, 16)

    def test_pan_equal_first_component(self, random_image):
        ms = random_image(6, 6)
        up = upsample(ms, 2)
        pc1 = forward_pca(up, fit_pca(up)).band(0)
        fused = baseline_pansharpen(ms, PanImage(pc1), 2)
        assert np.allclose(fused.data, up.data, atol=1e-10)

    def test_first_component_is_matched_pan(self, small_dataset):
        up = upsample(small_dataset['ms'], 4)
        basis = fit_pca(up)
        expected = match_global(small_dataset['pan'], Field(forward_pca(up, basis).band(0)))
        got = forward_pca(small_dataset['fused'], basis).band(0)
        assert np.allclose(got, expected.data, atol=1e-9)

    def test_better_than_interpolation(self, small_dataset):
        up = upsample(small_dataset['ms'], 4)
        reference = small_dataset['reference']
        assert rmse(reference, small_dataset['fused']) < rmse(reference, up)

    def test_grid_mismatch(self, random_image, random_pan):
        with pytest.raises(DimensionError):
            baseline_pansharpen(random_image(4, 4), random_pan(15, 16), 4)


class TestRestore:

    def test_shape_and_finite(self, random_image, random_pan):
        fused = random_image(16, 16)
        out = restore(fused, random_pan(16, 16), NOISY)
        assert out.data.shape == fused.data.shape
        assert np.all(np.isfinite(out.data))

    def test_chromatic_filter_is_active(self, random_image, random_pan):
        fused = random_image(16, 16)
        pan = random_pan(16, 16)
        unfiltered = replace(NOISY, solver=SolverParams(lam=0.0))
        difference = restore(fused, pan, NOISY).data - restore(fused, pan, unfiltered).data
        assert np.max(np.abs(difference)) > 1e-5

    def test_affine_bands_are_fixed(self, random_pan):
        pan = random_pan(16, 16)
        a = np.array([0.5, 1.0, 1.5, 0.8])
        b = np.array([0.1, -0.2, 0.3, 0.0])
        fused = MultiBandImage(a[:, None, None] * pan.data + b[:, None, None])
        params = RestoreParams(weights=WeightParams(nu_r=2, h_sim=2.0), solver=SolverParams(lam=1e-8),
                               match=MatchParams(use_global=True))
        out = restore(fused, pan, params)
        assert np.allclose(out.data, fused.data, rtol=0.0, atol=1e-6)

    def test_threads_do_not_change_result(self, random_image, random_pan):
        fused = random_image(16, 16, bands=5)
        pan = random_pan(16, 16)
        one = restore(fused, pan, NOISY, threads=1)
        three = restore(fused, pan, NOISY, threads=3)
        assert np.array_equal(one.data, three.data)

    def test_precomputed_graph(self, random_image, random_pan):
        from psrestore.weights import compute_weights
        fused = random_image(16, 16)
        pan = random_pan(16, 16)
        graph = compute_weights(pan, NOISY.weights)
        assert np.array_equal(restore(fused, pan, NOISY, graph=graph).data, restore(fused, pan, NOISY).data)
        with pytest.raises(DimensionError):
            restore(fused, pan, NOISY, graph=compute_weights(random_pan(12, 12), NOISY.weights))

    def test_single_band(self, random_image, random_pan):
        with pytest.raises(InvariantError):
            restore(random_image(8, 8, bands=1), random_pan(8, 8))

    def test_grid_mismatch(self, random_image, random_pan):
        with pytest.raises(DimensionError):
            restore(random_image(8, 8), random_pan(10, 8))

    def test_trace_and_report(self, random_image, random_pan, capsys):
        restoration = Restoration(RestoreParams(weights=WeightParams(nu_r=1),
                                                solver=SolverParams(max_iters=7, rel_tol=0.0),
                                                match=MatchParams(window=5)))
        restoration.startRecorder()
        restoration.run(random_image(10, 10, bands=3), random_pan(10, 10))
        trace = restoration.fetchTrace()
        assert list(trace['component'].unique()) == [1, 2]
        assert len(trace) == 2 * 8
        assert [s['iterations'] for s in restoration.states] == [7, 7]

        restoration.report()
        out = capsys.readouterr().out
        assert "C1: lambda=0.5 iterations=7" in out

    def test_component_scale(self, random_image):
        img = MultiBandImage(np.linspace(1.0, 3.0, 32).reshape(2, 4, 4))
        assert RestoreParams().componentScale(img) == pytest.approx(127.5)
        assert RestoreParams(normalize=False).componentScale(img) == 1.0

    def test_does_not_degrade_small_scene(self, small_dataset):
        restored = restore(small_dataset['fused'], small_dataset['pan'], FAST)
        before = rmse(small_dataset['reference'], small_dataset['fused'])
        after = rmse(small_dataset['reference'], restored)
        assert after <= 1.02 * before

    @pytest.mark.slow
    @pytest.mark.parametrize('seed', [11, 12, 13])
    def test_full_size_scene(self, seed):
        experiment = Experiment(threads=4)
        experiment.run(make_scene(768, seed=seed))
        fus = experiment.reports['Fus'].values
        rest = experiment.reports['Rest'].values
        for key in ('RMSE', 'ERGAS', 'SAM'):
            assert rest[key] < fus[key]
        assert rest['Q4'] > fus['Q4']
        assert rest['D_s'] < fus['D_s']
        assert rest['QNR'] > fus['QNR']

    @pytest.mark.slow
    def test_single_thread_runtime(self):
        spec = SimulationSpec()
        highres = make_scene(512, seed=21)
        pan = simulate_pan(highres, spec.pan_coeffs)
        start = time.perf_counter()
        restored = restore(highres, pan, threads=1)
        elapsed = time.perf_counter() - start
        assert restored.data.shape == (4, 512, 512)
        assert elapsed <= 120.0


class TestTuner:

    def test_grid(self, random_image, random_pan):
        fused = random_image(12, 12)
        pan = random_pan(12, 12)
        reference = random_image(12, 12)
        tuner = Tuner(FAST)
        table = tuner.run(fused, pan, reference, [0.05, 0.2], [0.1, 1.0])
        assert list(table.columns) == ['h_sim', 'lambda', 'rmse']
        assert len(table) == 4
        assert table['rmse'].is_monotonic_increasing
        best = tuner.best()
        assert best['rmse'] == table['rmse'].min()
        params = tuner.bestParams()
        assert params.solver.lam == best['lambda']
        assert params.weights.h_sim == best['h_sim']

    def test_empty_grid(self, random_image, random_pan):
        with pytest.raises(InvariantError):
            Tuner(FAST).run(random_image(8, 8), random_pan(8, 8), random_image(8, 8), [], [0.5])

    def test_best_before_run(self):
        with pytest.raises(InvariantError):
            Tuner().best()

    def test_load_grid(self, tmp_path):
        path = tmp_path / 'grid.json'
        path.write_text(json.dumps({'lambda': [0.25, 0.5]}))
        assert load_grid(path) == ([None], [0.25, 0.5])
        path.write_text(json.dumps({'h_sim': [1.0], 'nu_r': [3]}))
        with pytest.raises(InvariantError):
            load_grid(path)


class TestExperiment:

    def test_table(self):
        experiment = Experiment(params=FAST, block=16)
        table = experiment.run(make_scene(96, seed=5))
        assert list(table.columns) == ['EXP', 'Fus', 'Rest']
        for key in ('RMSE', 'ERGAS', 'SAM', 'Q4', 'D_lambda', 'D_s', 'QNR'):
            assert key in table.index
        assert experiment.restored.data.shape == (4, 32, 32)
        assert set(experiment.timing) == {'fusion', 'restoration'}
        assert experiment.reports['Fus'].parameters['ms_mtf'] == experiment.spec.ms_cut
        assert np.all(np.isfinite(table.values))


class TestScene:

    def test_range_and_shape(self):
        scene = make_scene(40, bands=3, seed=1)
        assert scene.data.shape == (3, 40, 40)
        assert scene.data.min() >= 1e-3
        assert scene.data.max() <= 1.0 - 1e-3

    def test_deterministic(self):
        assert np.array_equal(make_scene(32, seed=7).data, make_scene(32, seed=7).data)
        assert not np.array_equal(make_scene(32, seed=7).data, make_scene(32, seed=8).data)

    @pytest.mark.parametrize('size', [3, 10.5])
    def test_invalid_size(self, size):
        with pytest.raises(InvariantError):
            make_scene(size)
