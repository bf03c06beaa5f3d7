"""Baseline texture descriptors for comparison runs: a 256-bin local
binary pattern histogram and co-occurrence (Haralick) statistics.
"""

import numpy as np

__all__ = [
    "LBP_FEATURE_NAMES",
    "GLCM_FEATURE_NAMES",
    "GLCM_OFFSETS",
    "lbp_features",
    "glcm_features",
]

LBP_FEATURE_NAMES = tuple(f"lbp_{i:03d}" for i in range(256))

# Neighbor offsets clockwise from the top-left cell; the first offset
# contributes the most significant bit of the 8-bit code.
_LBP_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1))

# Co-occurrence offsets (dr, dc): horizontal, vertical, diagonal, anti-diagonal.
GLCM_OFFSETS = ((0, 1), (1, 0), (1, 1), (1, -1))
_GLCM_OFFSET_TAGS = ("h", "v", "d", "a")
_GLCM_STAT_NAMES = ("contrast", "energy", "homogeneity", "correlation")
GLCM_FEATURE_NAMES = tuple(
    f"{stat}_{tag}" for tag in _GLCM_OFFSET_TAGS for stat in _GLCM_STAT_NAMES
)


def _as_gray(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a single-channel image, got shape {arr.shape}")
    return arr


def lbp_features(img) -> np.ndarray:
    """Normalized 256-bin histogram of radius-1, 8-neighbor LBP codes.

    For every interior pixel the 8 neighbors are compared against the
    center (neighbor >= center sets the bit), read clockwise from the
    top-left neighbor as the most significant bit. The histogram over all
    interior pixels is normalized to sum 1.
    """
    gray = _as_gray(img)
    h, w = gray.shape
    if h < 3 or w < 3:
        raise ValueError(f"LBP needs at least a 3x3 image, got {h}x{w}")

    center = gray[1 : h - 1, 1 : w - 1]
    codes = np.zeros(center.shape, dtype=np.int64)
    for bit, (dr, dc) in enumerate(_LBP_OFFSETS):
        neighbor = gray[1 + dr : h - 1 + dr, 1 + dc : w - 1 + dc]
        codes |= (neighbor >= center).astype(np.int64) << (7 - bit)
    hist = np.bincount(codes.ravel(), minlength=256).astype(np.float64)
    return hist / codes.size


def _cooccurrence(levels_img, levels: int, dr: int, dc: int) -> np.ndarray:
    h, w = levels_img.shape
    r0, r1 = max(0, -dr), h - max(0, dr)
    c0, c1 = max(0, -dc), w - max(0, dc)
    if r1 <= r0 or c1 <= c0:
        raise ValueError(f"image {h}x{w} has no pixel pairs at offset ({dr}, {dc})")
    a = levels_img[r0:r1, c0:c1].ravel()
    b = levels_img[r0 + dr : r1 + dr, c0 + dc : c1 + dc].ravel()
    counts = np.bincount(a * levels + b, minlength=levels * levels)
    counts = counts.reshape(levels, levels)
    sym = counts + counts.T
    return sym / sym.sum()


def _haralick_stats(p: np.ndarray) -> tuple[float, float, float, float]:
    q = p.shape[0]
    i = np.arange(q, dtype=np.float64)[:, None]
    j = np.arange(q, dtype=np.float64)[None, :]
    diff = i - j
    contrast = float((diff**2 * p).sum())
    energy = float((p * p).sum())
    homogeneity = float((p / (1.0 + diff**2)).sum())

    marginal = p.sum(axis=1)  # symmetric matrix: row and column marginals agree
    mu = float(np.dot(np.arange(q), marginal))
    var = float(np.dot((np.arange(q) - mu) ** 2, marginal))
    if var == 0.0:
        correlation = 0.0
    else:
        correlation = float(((i - mu) * (j - mu) * p).sum() / var)
    return contrast, energy, homogeneity, correlation


def glcm_features(img, levels: int = 16) -> np.ndarray:
    """Haralick features from symmetric co-occurrence matrices.

    Intensities are quantized to `levels` gray levels (v * levels // 256).
    For each of the four offsets a symmetric, sum-1 co-occurrence matrix
    is built and reduced to <contrast, energy, homogeneity, correlation>;
    the four blocks are concatenated offset-major into 16 features.
    Correlation is defined as 0 when the marginal variance is 0.
    """
    gray = _as_gray(img)
    if not 2 <= int(levels) <= 256:
        raise ValueError(f"levels must be in [2, 256], got {levels}")
    quantized = (gray.astype(np.int64) * levels) // 256
    out = []
    for dr, dc in GLCM_OFFSETS:
        out.extend(_haralick_stats(_cooccurrence(quantized, levels, dr, dc)))
    return np.array(out)
