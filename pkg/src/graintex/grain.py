"""Grain-component analysis: count grains per window, histogram them over a
non-overlapping tiling, and reduce the normalized histogram to a compact
statistical feature vector.

A k x k window (k odd, default 3) is characterized by its grain count g:
0 if the window's center pixel is not a grain, otherwise the number of
grain pixels among the k*k - 1 non-center cells. Tiling an image with
non-overlapping windows and histogramming g yields a texture signature
that is reduced to <energy, entropy, mean, variance>; for color images
the reduction is applied per RGB channel and concatenated to 12 features.
"""

from dataclasses import dataclass

import numpy as np

from .image import (
    binarize,
    equalize_histogram,
    intensity_histogram,
    otsu_threshold,
    split_channels,
    to_grayscale,
)

__all__ = [
    "GRAY_FEATURE_NAMES",
    "COLOR_FEATURE_NAMES",
    "GrainHistogram",
    "GrainDistribution",
    "count_grains",
    "grain_histogram",
    "normalize",
    "features",
    "gray_pipeline",
    "color_pipeline",
]

GRAY_FEATURE_NAMES = ("energy", "entropy", "mean", "variance")
COLOR_FEATURE_NAMES = tuple(
    f"{name}_{ch}" for ch in ("r", "g", "b") for name in GRAY_FEATURE_NAMES
)


def _check_mask_size(mask_size: int) -> int:
    k = int(mask_size)
    if k < 3 or k % 2 == 0:
        raise ValueError(f"mask size must be an odd integer >= 3, got {mask_size}")
    return k


@dataclass(frozen=True)
class GrainHistogram:
    """Counts of windows by grain count: counts[g] windows had count g.

    counts has mask_size**2 bins (g = 0 .. k*k - 1); window_total is the
    number of complete windows tiled.
    """

    mask_size: int
    counts: np.ndarray

    def __post_init__(self):
        k = _check_mask_size(self.mask_size)
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (k * k,):
            raise ValueError(
                f"histogram for a {k}x{k} mask needs {k * k} bins, got shape {counts.shape}"
            )
        if np.any(counts < 0):
            raise ValueError("grain counts must be non-negative")
        object.__setattr__(self, "counts", counts)

    @property
    def window_total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class GrainDistribution:
    """Normalized grain histogram: probs[g] = counts[g] / window_total."""

    mask_size: int
    probs: np.ndarray

    def __post_init__(self):
        k = _check_mask_size(self.mask_size)
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (k * k,):
            raise ValueError(
                f"distribution for a {k}x{k} mask needs {k * k} bins, got shape {probs.shape}"
            )
        object.__setattr__(self, "probs", probs)


def count_grains(window) -> int:
    """Grain count of a single k x k boolean window (k odd).

    0 when the center cell is not a grain regardless of the neighborhood;
    otherwise the number of grain cells among the non-center cells, so the
    result ranges over 0 .. k*k - 1.
    """
    w = np.asarray(window, dtype=bool)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"window must be square, got shape {w.shape}")
    k = w.shape[0]
    if k % 2 == 0:
        raise ValueError(f"window size must be odd, got {k}")
    if not w[k // 2, k // 2]:
        return 0
    return int(w.sum()) - 1


def grain_histogram(grains, mask_size: int = 3) -> GrainHistogram:
    """Histogram grain counts over a non-overlapping k x k tiling.

    Windows are anchored at (i*k, j*k) from the top-left corner; partial
    windows at the right and bottom edges are discarded, so
    window_total = (h // k) * (w // k).
    """
    g = np.asarray(grains, dtype=bool)
    if g.ndim != 2:
        raise ValueError(f"binary image must be 2-D, got shape {g.shape}")
    k = _check_mask_size(mask_size)
    h, w = g.shape
    if h < k or w < k:
        raise ValueError(f"image {h}x{w} is smaller than the {k}x{k} mask")

    rows, cols = h // k, w // k
    tiles = g[: rows * k, : cols * k].reshape(rows, k, cols, k)
    sums = tiles.sum(axis=(1, 3))
    centers = tiles[:, k // 2, :, k // 2]
    per_window = np.where(centers, sums - 1, 0)
    counts = np.bincount(per_window.ravel(), minlength=k * k)
    return GrainHistogram(k, counts)


def normalize(hist: GrainHistogram) -> GrainDistribution:
    """Turn window counts into probabilities P(g) = N(g) / M."""
    m = hist.window_total
    if m == 0:
        raise ValueError("cannot normalize a histogram with zero windows")
    return GrainDistribution(hist.mask_size, hist.counts / m)


def features(dist: GrainDistribution) -> np.ndarray:
    """Reduce a grain distribution to <energy, entropy, mean, variance>.

    energy   = sum P(g)^2
    entropy  = -sum P(g) log2 P(g), with 0 log 0 = 0
    mean     = sum g P(g)
    variance = sqrt(sum (g - mean)^2 P(g))

    The last dimension is kept under the name "variance" even though the
    square root makes it a standard deviation; the 4-dim layout and order
    are fixed regardless of mask size.
    """
    p = dist.probs
    g = np.arange(p.size, dtype=np.float64)
    mean = float(np.dot(g, p))
    variance = float(np.sqrt(np.dot((g - mean) ** 2, p)))
    energy = float(np.dot(p, p))
    nz = p[p > 0]
    entropy = float(-np.dot(nz, np.log2(nz))) + 0.0
    return np.array([energy, entropy, mean, variance])


def _channel_features(gray, mask_size: int, equalize: bool) -> np.ndarray:
    if equalize:
        gray = equalize_histogram(gray)
    t = otsu_threshold(intensity_histogram(gray))
    grains = binarize(gray, t)
    return features(normalize(grain_histogram(grains, mask_size)))


def gray_pipeline(img, mask_size: int = 3, equalize: bool = False) -> np.ndarray:
    """Grayscale feature pipeline: convert if needed, optionally equalize,
    Otsu-threshold, binarize, histogram grain counts, reduce to 4 features."""
    arr = np.asarray(img)
    gray = to_grayscale(arr) if arr.ndim == 3 else arr
    return _channel_features(gray, mask_size, equalize)


def color_pipeline(img, mask_size: int = 3, equalize: bool = False) -> np.ndarray:
    """Color feature pipeline: run the grayscale tail on each RGB channel
    independently (each channel gets its own Otsu threshold) and
    concatenate <F_r, F_g, F_b> into 12 features."""
    channels = split_channels(img)
    return np.concatenate(
        [_channel_features(ch, mask_size, equalize) for ch in channels]
    )
