import numpy as np
import pytest

from graintex.baselines import (
    GLCM_FEATURE_NAMES,
    LBP_FEATURE_NAMES,
    glcm_features,
    lbp_features,
)
from oracles import glcm_full, lbp_histogram


class TestLbp:
    def test_constant_image_is_point_mass_at_255(self):
        img = np.full((8, 8), 90, dtype=np.uint8)
        hist = lbp_features(img)
        assert hist[255] == 1.0
        assert hist.sum() == 1.0

    def test_single_window_code_128(self):
        # only the top-left neighbor exceeds the center -> 10000000b
        img = np.array(
            [[200, 0, 0],
             [0, 100, 0],
             [0, 0, 0]], dtype=np.uint8)
        hist = lbp_features(img)
        assert hist[128] == 1.0

    def test_sums_to_one(self):
        rng = np.random.default_rng(40)
        for _ in range(5):
            img = rng.integers(0, 256, size=(12, 9), dtype=np.uint8)
            assert lbp_features(img).sum() == pytest.approx(1.0, abs=1e-12)

    def test_matches_double_loop_oracle(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            img = rng.integers(0, 256, size=(10, 10), dtype=np.uint8)
            assert lbp_features(img).tolist() == lbp_histogram(img)

    def test_invariant_under_monotone_remap(self):
        rng = np.random.default_rng(42)
        img = rng.integers(0, 100, size=(14, 14), dtype=np.uint8)
        remapped = (img.astype(np.int64) * 2 + 17).astype(np.uint8)  # strictly increasing on [0, 99]
        assert np.array_equal(lbp_features(img), lbp_features(remapped))

    def test_rejects_too_small(self):
        with pytest.raises(ValueError):
            lbp_features(np.zeros((2, 5), dtype=np.uint8))

    def test_rejects_color(self):
        with pytest.raises(ValueError):
            lbp_features(np.zeros((5, 5, 3), dtype=np.uint8))


class TestGlcm:
    def test_constant_image_degenerate_values(self):
        img = np.full((8, 8), 130, dtype=np.uint8)
        feats = glcm_features(img)
        for block in range(4):
            contrast, energy, homogeneity, correlation = feats[4 * block : 4 * block + 4]
            assert contrast == 0.0
            assert energy == 1.0
            assert homogeneity == 1.0
            assert correlation == 0.0  # zero marginal variance convention

    def test_checkerboard_horizontal_offset(self):
        # levels alternate 0 / 15, so every horizontal pair is (0,15) or (15,0)
        img = np.indices((8, 8)).sum(axis=0) % 2 * 255
        feats = glcm_features(img.astype(np.uint8), levels=16)
        assert feats[0] == pytest.approx(15**2, rel=1e-12)   # contrast, offset (0,1)
        assert feats[1] == pytest.approx(0.5, rel=1e-12)     # energy
        assert feats[3] == pytest.approx(-1.0, rel=1e-12)    # perfectly anti-correlated

    def test_matches_double_loop_oracle(self):
        rng = np.random.default_rng(43)
        for _ in range(5):
            img = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
            assert glcm_features(img) == pytest.approx(glcm_full(img), rel=1e-12)

    def test_contrast_zero_iff_equal_pairs(self):
        flat = np.full((6, 6), 37, dtype=np.uint8)
        assert glcm_features(flat)[0::4].tolist() == [0.0, 0.0, 0.0, 0.0]
        stripe = flat.copy()
        stripe[:, 3:] = 240  # one vertical boundary with unequal levels
        assert glcm_features(stripe)[0] > 0

    def test_rejects_single_row_for_vertical_offset(self):
        with pytest.raises(ValueError):
            glcm_features(np.zeros((1, 5), dtype=np.uint8))

    def test_rejects_bad_levels(self):
        with pytest.raises(ValueError):
            glcm_features(np.zeros((4, 4), dtype=np.uint8), levels=1)


def test_feature_name_layouts():
    assert len(LBP_FEATURE_NAMES) == 256
    assert LBP_FEATURE_NAMES[0] == "lbp_000" and LBP_FEATURE_NAMES[255] == "lbp_255"
    assert len(GLCM_FEATURE_NAMES) == 16
    assert GLCM_FEATURE_NAMES[0] == "contrast_h"
    assert GLCM_FEATURE_NAMES[-1] == "correlation_a"
