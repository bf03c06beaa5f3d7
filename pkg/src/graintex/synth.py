"""Synthetic texture corpus generator.

Produces four texture families that differ by construction in bright-pixel
density and spatial structure, so their grain-component histograms are
separable: sparse speckle (~10% bright), dense speckle (~40% bright),
horizontal banding, and blob noise. Every image gets its own seeded
jitter (density, band period, blob count, tint, noise), and the whole
corpus is a pure function of (seed, classes, per_class, size).
"""

from pathlib import Path

import numpy as np

from .io import save_image

__all__ = ["FAMILIES", "family_image", "generate_dataset"]

FAMILIES = ("speckle_sparse", "speckle_dense", "bands", "blobs")


def _speckle(rng, size: int, lo: float, hi: float) -> np.ndarray:
    density = rng.uniform(lo, hi)
    return rng.random((size, size)) < density


def _bands(rng, size: int) -> np.ndarray:
    period = int(rng.integers(6, 13))
    duty = rng.uniform(0.35, 0.6)
    phase = int(rng.integers(0, period))
    rows = ((np.arange(size) + phase) % period) < period * duty
    mask = np.repeat(rows[:, None], size, axis=1)
    flips = rng.random((size, size)) < 0.04
    return mask ^ flips


def _blobs(rng, size: int) -> np.ndarray:
    mask = np.zeros((size, size), dtype=bool)
    yy, xx = np.mgrid[0:size, 0:size]
    for _ in range(int(rng.integers(8, 15))):
        cy, cx = rng.uniform(0, size, size=2)
        radius = rng.uniform(0.05 * size, 0.12 * size)
        mask |= (yy - cy) ** 2 + (xx - cx) ** 2 <= radius * radius
    return mask


def _render(rng, mask: np.ndarray) -> np.ndarray:
    """Turn a boolean structure mask into a tinted, noisy RGB image with a
    clearly bimodal per-channel histogram (so thresholding recovers the
    structure)."""
    dark = rng.uniform(25, 55)
    bright = rng.uniform(185, 230)
    base = np.where(mask, bright, dark)
    tint = rng.uniform(0.85, 1.0, size=3)
    img = np.empty((*mask.shape, 3), dtype=np.float64)
    for c in range(3):
        img[..., c] = base * tint[c] + rng.normal(0.0, 6.0, mask.shape)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def family_image(family: str, rng, size: int) -> np.ndarray:
    """One RGB image of the given family, jittered by `rng`."""
    if family == "speckle_sparse":
        mask = _speckle(rng, size, 0.07, 0.13)
    elif family == "speckle_dense":
        mask = _speckle(rng, size, 0.35, 0.45)
    elif family == "bands":
        mask = _bands(rng, size)
    elif family == "blobs":
        mask = _blobs(rng, size)
    else:
        raise ValueError(f"unknown texture family {family!r}; use one of {FAMILIES}")
    return _render(rng, mask)


def generate_dataset(out_dir, classes: int = 4, per_class: int = 20,
                     size: int = 96, seed: int = 42) -> list:
    """Write `per_class` PNGs for each of the first `classes` families
    into per-family subdirectories of `out_dir`. Deterministic per seed:
    image (family f, index i) is drawn from default_rng([seed, f, i]).
    Returns the written paths in generation order."""
    if not 1 <= classes <= len(FAMILIES):
        raise ValueError(f"classes must be in [1, {len(FAMILIES)}], got {classes}")
    if per_class < 1:
        raise ValueError(f"per_class must be >= 1, got {per_class}")
    if size < 3:
        raise ValueError(f"size must be >= 3, got {size}")
    out_dir = Path(out_dir)
    written = []
    for f, family in enumerate(FAMILIES[:classes]):
        family_dir = out_dir / family
        family_dir.mkdir(parents=True, exist_ok=True)
        for i in range(per_class):
            rng = np.random.default_rng([seed, f, i])
            img = family_image(family, rng, size)
            path = family_dir / f"{family}_{i:03d}.png"
            save_image(path, img)
            written.append(path)
    return written
