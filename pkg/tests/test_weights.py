import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psrestore.raster import PanImage
from psrestore.weights import (WeightParams, WeightGraph, window_offsets, domain_mask, overlap,
                               patch_distance, compute_kernel, compute_weights)
from psrestore.utilities import InvariantError

from oracles import brute_force_weights


class TestWindow:

    def test_offsets_are_row_major(self):
        offsets = window_offsets(1)
        assert len(offsets) == 9
        assert offsets[0] == (-1, -1)
        assert offsets[4] == (0, 0)
        assert offsets[5] == (0, 1)

    def test_overlap_pairs_pixels_with_neighbors(self):
        a = np.arange(12.0).reshape(3, 4)
        dst, src = overlap(3, 4, 0, 1)
        assert np.array_equal(a[src], a[dst] + 1.0)
        dst, src = overlap(3, 4, -1, 2)
        assert np.array_equal(a[src], a[dst] - 2.0)
        assert a[dst].shape == (2, 2)

    def test_overlap_outside_grid(self):
        assert overlap(3, 4, 3, 0) is None
        assert overlap(3, 4, 0, -4) is None


class TestParams:

    def test_defaults(self):
        params = WeightParams()
        assert (params.nu_r, params.patch_size, params.h_spt) == (7, 3, 2.5)
        assert params.window == 15

    @pytest.mark.parametrize('kwargs', [{'nu_r': 0}, {'patch_radius': -1}, {'h_spt': 0.0}, {'h_sim': -1.0}])
    def test_invalid(self, kwargs):
        with pytest.raises(InvariantError):
            WeightParams(**kwargs)

    def test_default_h_sim_follows_pan_range(self):
        pan = PanImage(np.array([[0.0, 50.0], [10.0, 20.0]]))
        assert WeightParams().resolveHsim(pan) == pytest.approx(2.0)
        assert WeightParams(h_sim=3.0).resolveHsim(pan) == 3.0


class TestWeights:

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), nu_r=st.integers(1, 3),
           width=st.integers(3, 9), height=st.integers(3, 9))
    def test_rows_sum_to_one(self, seed, nu_r, width, height):
        rng = np.random.default_rng(seed)
        pan = PanImage(rng.uniform(0, 100, size=(height, width)))
        graph = compute_weights(pan, WeightParams(nu_r=nu_r))
        assert np.max(np.abs(graph.rowSums() - 1.0)) <= 1e-12
        assert np.all(graph.weights >= 0.0)

    def test_matches_brute_force(self, random_pan):
        pan = random_pan(6, 5)
        params = WeightParams(nu_r=2, patch_radius=1, h_spt=2.5, h_sim=0.3)
        graph = compute_weights(pan, params)
        expected = brute_force_weights(pan, 2, 1, 2.5, 0.3)
        assert np.allclose(graph.dense(), expected, rtol=1e-12, atol=1e-15)

    def test_kernel_is_symmetric(self, random_pan):
        pan = random_pan(7, 6)
        kernel = compute_kernel(pan, WeightParams(nu_r=2))
        dense = WeightGraph(kernel, 2).dense()
        assert np.allclose(dense, dense.T, rtol=0, atol=1e-15)

    def test_out_of_image_neighbors_have_zero_weight(self, random_pan):
        graph = compute_weights(random_pan(5, 5), WeightParams(nu_r=2))
        corner = graph.row(0, 0)
        assert np.all(corner[:2, :] == 0.0)
        assert np.all(corner[:, :2] == 0.0)
        assert corner.sum() == pytest.approx(1.0, abs=1e-12)

    def test_constant_pan_gives_spatial_gaussian(self):
        pan = PanImage(np.full((9, 9), 4.0))
        graph = compute_weights(pan, WeightParams(nu_r=2, h_spt=2.5))
        d2 = np.array([[dy * dy + dx * dx for dx in range(-2, 3)] for dy in range(-2, 3)], dtype=float)
        expected = np.exp(-d2 / 2.5**2)
        expected /= expected.sum()
        assert np.allclose(graph.row(4, 4), expected, rtol=1e-12)

    def test_similar_patches_get_larger_weights(self):
        data = np.zeros((7, 7))
        data[:, 4:] = 10.0
        pan = PanImage(data)
        row = compute_weights(pan, WeightParams(nu_r=2, h_sim=1.0)).row(2, 3)
        # same side of the edge versus across it, at equal spatial distance
        assert row[2, 1] > row[2, 3]

    def test_pan_smaller_than_patch(self):
        with pytest.raises(InvariantError):
            compute_weights(PanImage(np.ones((2, 2))), WeightParams(nu_r=1, patch_radius=2))

    def test_row_outside_grid(self, random_pan):
        graph = compute_weights(random_pan(4, 4), WeightParams(nu_r=1))
        with pytest.raises(InvariantError):
            graph.row(4, 0)

    def test_graph_validates_shape_and_sign(self):
        with pytest.raises(InvariantError):
            WeightGraph(np.ones((8, 3, 3)), 1)
        with pytest.raises(InvariantError):
            WeightGraph(-np.ones((9, 3, 3)), 1)

    def test_graph_rejects_weight_outside_image(self):
        weights = np.zeros((9, 3, 3))
        weights[4] = 1.0
        weights[0, 1, 1] = 0.5                  # offset (-1, -1) of the center pixel
        WeightGraph(weights, 1)
        weights[0, 0, 2] = 0.5                  # offset (-1, -1) of a top row pixel
        with pytest.raises(InvariantError):
            WeightGraph(weights, 1)

    def test_domain_mask(self):
        mask = domain_mask(3, 4, 1)
        assert mask.shape == (9, 3, 4)
        assert mask[4].all()
        assert not mask[0, 0, :].any()
        assert mask[0, 1:, 1:].all()
        assert not mask[5, :, 3].any()

    def test_column_sums_match_dense(self, random_pan):
        graph = compute_weights(random_pan(6, 5), WeightParams(nu_r=2, h_sim=1.0))
        assert np.allclose(graph.columnSums().reshape(-1), graph.dense().sum(axis=0), rtol=0, atol=1e-14)

    def test_bands_cover_edge_slices(self, random_pan):
        graph = compute_weights(random_pan(7, 10), WeightParams(nu_r=2, h_sim=1.0))

        def coverage(slices):
            mask = np.zeros(graph.weights.shape, dtype=bool)
            for k, dst, src in slices:
                assert not mask[k][dst].any()
                mask[k][dst] = True
            return mask

        edges = coverage(graph.edgeSlices())
        bands = coverage([s for band in graph.bandSlices(3) for s in band])
        assert np.array_equal(edges, bands)
        assert not edges[graph.center].any()
        assert len(graph.bandSlices(3)) == 4

    def test_self_weight_is_row_maximum(self, random_pan):
        pan = random_pan(9, 7)
        for h_sim in (0.1, 1.0, None):
            graph = compute_weights(pan, WeightParams(nu_r=2, h_sim=h_sim))
            assert np.all(graph.weights[graph.center] >= graph.weights.max(axis=0))

    def test_kernel_grows_with_h_sim(self, random_pan):
        pan = random_pan(8, 8)
        kernels = [compute_kernel(pan, WeightParams(nu_r=2, h_sim=h)) for h in (0.05, 0.2, 1.0, 5.0)]
        for narrow, wide in zip(kernels[:-1], kernels[1:]):
            assert np.all(narrow <= wide)
        off_center = np.delete(kernels[-1], 12, axis=0)
        assert off_center.max() > 0.1


class TestPatchDistance:

    def test_self_distance_is_zero(self, random_pan):
        pan = random_pan(5, 5)
        assert patch_distance(pan, 12, 12) == 0.0

    def test_symmetric(self, random_pan):
        pan = random_pan(5, 5)
        assert patch_distance(pan, 3, 17) == patch_distance(pan, 17, 3)

    def test_hand_computed(self):
        pan = PanImage(np.array([[0.0, 1.0, 2.0],
                                 [3.0, 4.0, 5.0],
                                 [6.0, 7.0, 8.0]]))
        # interior pixel 4 against its right neighbor 5 (mirrored column x=3 equals x=2)
        # differences: columns (0,1,2) vs (1,2,2) on every row
        expected = 3 * (1.0 + 1.0 + 0.0)
        assert patch_distance(pan, 4, 5) == pytest.approx(expected)

    def test_index_out_of_range(self, random_pan):
        with pytest.raises(InvariantError):
            patch_distance(random_pan(3, 3), 0, 9)
