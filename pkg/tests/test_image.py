import numpy as np
import pytest

from graintex.image import (
    binarize,
    equalize_histogram,
    intensity_histogram,
    merge_channels,
    otsu_threshold,
    split_channels,
    to_grayscale,
)
from oracles import equalize_mapping, otsu_exhaustive


def rgb_constant(r, g, b, shape=(2, 2)):
    img = np.empty((*shape, 3), dtype=np.uint8)
    img[..., 0], img[..., 1], img[..., 2] = r, g, b
    return img


class TestToGrayscale:
    def test_white_maps_to_white(self):
        assert np.all(to_grayscale(rgb_constant(255, 255, 255)) == 255)

    def test_black_maps_to_black(self):
        assert np.all(to_grayscale(rgb_constant(0, 0, 0)) == 0)

    @pytest.mark.parametrize("rgb,expected", [
        ((255, 0, 0), 76),    # round(76.245)
        ((0, 255, 0), 150),   # round(149.685)
        ((0, 0, 255), 29),    # round(29.07)
        ((10, 20, 30), 18),   # round(2.99 + 11.74 + 3.42 = 18.15)
    ])
    def test_luma_weights_rounded_half_up(self, rgb, expected):
        assert to_grayscale(rgb_constant(*rgb))[0, 0] == expected

    def test_output_shape_and_dtype(self):
        rng = np.random.default_rng(0)
        img = rng.integers(0, 256, size=(7, 5, 3), dtype=np.uint8)
        gray = to_grayscale(img)
        assert gray.shape == (7, 5) and gray.dtype == np.uint8

    def test_rejects_single_channel(self):
        with pytest.raises(ValueError):
            to_grayscale(np.zeros((4, 4), dtype=np.uint8))

    def test_pure(self):
        rng = np.random.default_rng(1)
        img = rng.integers(0, 256, size=(9, 9, 3), dtype=np.uint8)
        assert np.array_equal(to_grayscale(img), to_grayscale(img))


class TestSplitChannels:
    def test_constant_pixels(self):
        r, g, b = split_channels(rgb_constant(10, 20, 30))
        assert np.all(r == 10) and np.all(g == 20) and np.all(b == 30)

    def test_index_arithmetic_2x1(self):
        img = np.array([[[1, 2, 3], [4, 5, 6]]], dtype=np.uint8)
        r, g, b = split_channels(img)
        assert r.tolist() == [[1, 4]]
        assert g.tolist() == [[2, 5]]
        assert b.tolist() == [[3, 6]]

    def test_split_merge_roundtrip(self):
        rng = np.random.default_rng(2)
        img = rng.integers(0, 256, size=(11, 6, 3), dtype=np.uint8)
        assert np.array_equal(merge_channels(*split_channels(img)), img)

    def test_rejects_single_channel(self):
        with pytest.raises(ValueError):
            split_channels(np.zeros((4, 4), dtype=np.uint8))


class TestEqualize:
    def test_constant_maps_to_255(self):
        for value in (0, 42, 255):
            img = np.full((5, 4), value, dtype=np.uint8)
            assert np.all(equalize_histogram(img) == 255)

    def test_2x2_example(self):
        img = np.array([[10, 10], [200, 250]], dtype=np.uint8)
        out = equalize_histogram(img)
        assert out.tolist() == [[128, 128], [191, 255]]

    def test_matches_cdf_oracle(self):
        rng = np.random.default_rng(3)
        img = rng.integers(0, 256, size=(13, 9), dtype=np.uint8)
        mapping = equalize_mapping(img)
        expected = np.array([[mapping[v] for v in row] for row in img.tolist()])
        assert np.array_equal(equalize_histogram(img), expected)

    def test_mapping_monotone(self):
        rng = np.random.default_rng(4)
        img = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
        mapping = {}
        out = equalize_histogram(img)
        for v, t in zip(img.ravel().tolist(), out.ravel().tolist()):
            assert mapping.setdefault(v, t) == t
        levels = sorted(mapping)
        for a, b in zip(levels, levels[1:]):
            assert mapping[a] <= mapping[b]

    def test_ramp_idempotent(self):
        # 16x16 ramp holds each intensity exactly once
        ramp = np.arange(256, dtype=np.uint8).reshape(16, 16)
        once = equalize_histogram(ramp)
        assert np.array_equal(equalize_histogram(once), once)

    def test_rejects_color(self):
        with pytest.raises(ValueError):
            equalize_histogram(np.zeros((2, 2, 3), dtype=np.uint8))


class TestOtsu:
    def test_bimodal_zero_255_separates(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            hist = np.zeros(256, dtype=np.int64)
            hist[0] = rng.integers(1, 100)
            hist[255] = rng.integers(1, 100)
            t = otsu_threshold(hist)
            assert 0 <= t <= 254  # binarize then splits 0 from 255 exactly

    def test_single_intensity_returns_it(self):
        hist = np.zeros(256, dtype=np.int64)
        hist[7] = 12
        assert otsu_threshold(hist) == 7

    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            hist = rng.integers(0, 50, size=256)
            if hist.sum() == 0:
                hist[128] = 1
            assert otsu_threshold(hist) == otsu_exhaustive(hist)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            otsu_threshold(np.zeros(256, dtype=np.int64))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            otsu_threshold(np.ones(128, dtype=np.int64))


class TestBinarize:
    def test_threshold_255_all_false(self):
        rng = np.random.default_rng(7)
        img = rng.integers(0, 256, size=(6, 6), dtype=np.uint8)
        assert not binarize(img, 255).any()

    def test_threshold_0_marks_positive_pixels(self):
        img = np.array([[0, 1], [100, 0]], dtype=np.uint8)
        assert binarize(img, 0).tolist() == [[False, True], [True, False]]

    def test_strictly_greater(self):
        img = np.array([[5, 100, 200]], dtype=np.uint8)
        assert binarize(img, 100).tolist() == [[False, False, True]]

    def test_raising_threshold_never_adds_grains(self):
        rng = np.random.default_rng(8)
        img = rng.integers(0, 256, size=(10, 10), dtype=np.uint8)
        prev = binarize(img, 0)
        for t in range(1, 256):
            cur = binarize(img, t)
            assert not np.any(cur & ~prev)
            prev = cur


def test_intensity_histogram_counts_and_total():
    img = np.array([[0, 0, 3], [255, 3, 3]], dtype=np.uint8)
    hist = intensity_histogram(img)
    assert hist.shape == (256,)
    assert hist[0] == 2 and hist[3] == 3 and hist[255] == 1
    assert hist.sum() == img.size
