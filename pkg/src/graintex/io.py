"""Image file handling.

PNG and JPEG go through Pillow. Binary PGM (P5) and PPM (P6) are handled
by a small built-in codec so test fixtures round-trip bit-exactly
(maxval 255, one byte per sample, row-major).
"""

import re
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

__all__ = [
    "ImageReadError",
    "load_image",
    "save_image",
    "read_pnm",
    "write_pnm",
]

_PNM_MAGICS = (b"P5", b"P6")

# whitespace and '#' comments, then one decimal header field
_PNM_FIELD = re.compile(rb"(?:\s+|#[^\n]*\n?)*(\d+)")


class ImageReadError(ValueError):
    """Raised when a file cannot be decoded into a supported raster image."""


def load_image(path) -> np.ndarray:
    """Decode an image file into a uint8 array, (h, w) or (h, w, 3).

    Dispatches on content: P5/P6 magic bytes go to the PNM codec,
    everything else to Pillow. Only 8-bit grayscale and RGB are
    supported; alpha channels and deeper bit depths are rejected.
    """
    path = Path(path)
    try:
        with path.open("rb") as fh:
            head = fh.read(2)
    except OSError as exc:
        raise ImageReadError(f"{path}: {exc}") from exc
    if head in _PNM_MAGICS:
        return read_pnm(path)
    try:
        with Image.open(path) as im:
            if im.mode == "P":
                im = im.convert("RGB")
            if im.mode == "L":
                return np.asarray(im, dtype=np.uint8)
            if im.mode == "RGB":
                return np.asarray(im, dtype=np.uint8)
            raise ImageReadError(
                f"{path}: unsupported mode {im.mode!r} (only 8-bit grayscale and RGB)"
            )
    except UnidentifiedImageError as exc:
        raise ImageReadError(f"{path}: not a recognized image file") from exc
    except OSError as exc:
        raise ImageReadError(f"{path}: {exc}") from exc


def save_image(path, img) -> None:
    """Write a uint8 array as PNG/JPEG (via Pillow) or PGM/PPM by extension."""
    path = Path(path)
    arr = _check_array(img)
    if path.suffix.lower() in (".pgm", ".ppm"):
        write_pnm(path, arr)
        return
    mode = "L" if arr.ndim == 2 else "RGB"
    Image.fromarray(arr, mode=mode).save(path)


def _check_array(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.dtype != np.uint8:
        raise ValueError(f"expected uint8 pixels, got dtype {arr.dtype}")
    if arr.ndim == 2 or (arr.ndim == 3 and arr.shape[2] == 3):
        return arr
    raise ValueError(f"expected (h, w) or (h, w, 3) array, got shape {arr.shape}")


def read_pnm(path) -> np.ndarray:
    """Read a binary PGM (P5) or PPM (P6) file with maxval 255."""
    path = Path(path)
    data = path.read_bytes()
    if data[:2] not in _PNM_MAGICS:
        raise ImageReadError(f"{path}: not a binary PGM/PPM file")
    channels = 1 if data[:2] == b"P5" else 3

    # Header: magic, width, height, maxval as whitespace-separated tokens,
    # with '#' comments running to end of line. Exactly one whitespace byte
    # separates the maxval from the pixel data.
    pos = 2
    fields = []
    while len(fields) < 3:
        m = _PNM_FIELD.match(data, pos)
        if m is None:
            raise ImageReadError(f"{path}: truncated or malformed PNM header")
        fields.append(int(m.group(1)))
        pos = m.end()
    width, height, maxval = fields
    if maxval != 255:
        raise ImageReadError(f"{path}: only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise ImageReadError(f"{path}: bad dimensions {width}x{height}")
    pos += 1  # the single whitespace byte after maxval

    n = width * height * channels
    raster = data[pos : pos + n]
    if len(raster) != n:
        raise ImageReadError(f"{path}: expected {n} raster bytes, got {len(raster)}")
    arr = np.frombuffer(raster, dtype=np.uint8)
    if channels == 1:
        return arr.reshape(height, width).copy()
    return arr.reshape(height, width, 3).copy()


def write_pnm(path, img) -> None:
    """Write a uint8 array as binary PGM (2-D input) or PPM ((h, w, 3) input)."""
    arr = _check_array(img)
    magic = b"P5" if arr.ndim == 2 else b"P6"
    h, w = arr.shape[:2]
    header = magic + b"\n%d %d\n255\n" % (w, h)
    Path(path).write_bytes(header + arr.tobytes())
