"""Raster image primitives: grayscale conversion, channel splitting,
histogram equalization, Otsu thresholding and binarization.

Images are numpy arrays of dtype uint8: shape (h, w) for single-channel,
(h, w, 3) for RGB. Binary images are boolean arrays of shape (h, w) where
True marks a grain pixel. All functions are pure.
"""

import numpy as np

__all__ = [
    "to_grayscale",
    "split_channels",
    "merge_channels",
    "intensity_histogram",
    "equalize_histogram",
    "otsu_threshold",
    "binarize",
]


def _as_color(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected a 3-channel image, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must have at least one pixel")
    return arr


def _as_gray(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a single-channel image, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("image must have at least one pixel")
    return arr


def to_grayscale(img) -> np.ndarray:
    """Convert an RGB image to 8-bit grayscale using BT.601 luma weights.

    Each output pixel is round(0.299*R + 0.587*G + 0.114*B), rounded
    half-up. Computed in integer arithmetic so the result is exact.
    Rejects single-channel input: feeding an already-gray image here is a
    pipeline-wiring bug, not something to paper over.
    """
    arr = _as_color(img).astype(np.int64)
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    return ((299 * r + 587 * g + 114 * b + 500) // 1000).astype(np.uint8)


def split_channels(img):
    """Split an RGB image into its (R, G, B) planes, in that order."""
    arr = _as_color(img)
    return arr[..., 0].copy(), arr[..., 1].copy(), arr[..., 2].copy()


def merge_channels(r, g, b) -> np.ndarray:
    """Recombine three single-channel planes into an RGB image."""
    r, g, b = _as_gray(r), _as_gray(g), _as_gray(b)
    if not (r.shape == g.shape == b.shape):
        raise ValueError("channel planes must share the same shape")
    return np.stack([r, g, b], axis=-1)


def intensity_histogram(img) -> np.ndarray:
    """256-bin intensity histogram of a single-channel image."""
    gray = _as_gray(img)
    return np.bincount(gray.ravel(), minlength=256).astype(np.int64)


def equalize_histogram(img) -> np.ndarray:
    """Histogram-equalize a single-channel image.

    Output pixel is round(255 * CDF(v)) with CDF(v) = (#pixels <= v) / n,
    rounded half-up. The mapping is computed in integer arithmetic:
    floor((510*cum + n) / (2n)) equals the half-up rounding exactly. The
    induced intensity mapping is non-decreasing; a constant image maps to
    constant 255.
    """
    gray = _as_gray(img)
    n = gray.size
    cum = np.cumsum(np.bincount(gray.ravel(), minlength=256).astype(np.int64))
    mapping = ((510 * cum + n) // (2 * n)).astype(np.uint8)
    return mapping[gray]


def otsu_threshold(hist) -> int:
    """Otsu's threshold for a 256-bin intensity histogram.

    Returns the level t maximizing the between-class variance
    w0(t)*w1(t)*(mu0(t) - mu1(t))**2, where class 0 holds intensities <= t
    and class 1 holds intensities > t. Ties break toward the smallest t.
    If all mass sits at a single intensity, that intensity is returned.

    The candidates are compared in exact integer arithmetic (the variance
    is proportional to (S0*W1 - S1*W0)**2 / (W0*W1) with integer class
    sums), so the argmax is never perturbed by rounding.
    """
    counts = np.asarray(hist)
    if counts.shape != (256,):
        raise ValueError(f"histogram must have 256 bins, got shape {counts.shape}")
    if np.any(counts < 0):
        raise ValueError("histogram counts must be non-negative")
    total = int(counts.sum())
    if total == 0:
        raise ValueError("histogram is empty (the source image has no pixels)")

    nonzero = np.flatnonzero(counts)
    if nonzero.size == 1:
        return int(nonzero[0])

    c = [int(x) for x in counts]
    s_total = sum(i * x for i, x in enumerate(c))
    best_t, best_num, best_den = 0, -1, 1
    w0 = s0 = 0
    for t in range(256):
        w0 += c[t]
        s0 += t * c[t]
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        num = (s0 * w1 - (s_total - s0) * w0) ** 2
        den = w0 * w1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t


def binarize(img, threshold: int) -> np.ndarray:
    """Binarize a single-channel image: grain where pixel > threshold."""
    gray = _as_gray(img)
    if not 0 <= int(threshold) <= 255:
        raise ValueError(f"threshold must be in [0, 255], got {threshold}")
    return gray > threshold
