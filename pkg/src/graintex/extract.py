"""Feature extraction settings and the CSV feature table.

An ExtractionSpec pins everything that determines a feature vector for an
image: the method (grain-component, LBP or GLCM), color vs gray handling,
mask size and the equalization flag. Model files embed these settings so
that classification can rerun the identical pipeline.

Feature CSV format: UTF-8, comma-separated, LF line endings, header row
"path,label,<dim names...>", one row per image, floats printed with 17
significant digits so parsing them back is lossless.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import baselines, grain
from .image import to_grayscale

__all__ = [
    "METHODS",
    "ExtractionSpec",
    "extract_features",
    "write_feature_csv",
    "read_feature_csv",
]

METHODS = ("ppu", "lbp", "glcm")

_LAYOUT_NAMES = {
    "ppu-gray": grain.GRAY_FEATURE_NAMES,
    "ppu-color": grain.COLOR_FEATURE_NAMES,
    "lbp": baselines.LBP_FEATURE_NAMES,
    "glcm": baselines.GLCM_FEATURE_NAMES,
}


@dataclass(frozen=True)
class ExtractionSpec:
    """Everything needed to turn an image into one feature vector."""

    method: str = "ppu"
    color: bool = True
    mask_size: int = 3
    equalize: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown feature method {self.method!r}; use one of {METHODS}")
        if self.method != "ppu" and self.color:
            raise ValueError(f"{self.method} features are gray-level only")
        if self.method == "ppu" and (self.mask_size < 3 or self.mask_size % 2 == 0):
            raise ValueError(f"mask size must be an odd integer >= 3, got {self.mask_size}")

    @property
    def layout(self) -> str:
        if self.method == "ppu":
            return "ppu-color" if self.color else "ppu-gray"
        return self.method

    @property
    def feature_names(self) -> tuple:
        return _LAYOUT_NAMES[self.layout]

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "color": self.color,
            "mask_size": self.mask_size,
            "equalize": self.equalize,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExtractionSpec":
        return cls(
            method=d["method"],
            color=bool(d["color"]),
            mask_size=int(d["mask_size"]),
            equalize=bool(d["equalize"]),
        )

    @classmethod
    def from_layout(cls, layout: str, mask_size: int = 3, equalize: bool = False) -> "ExtractionSpec":
        if layout not in _LAYOUT_NAMES:
            raise ValueError(f"unknown feature layout {layout!r}")
        if layout == "ppu-color":
            return cls("ppu", True, mask_size, equalize)
        if layout == "ppu-gray":
            return cls("ppu", False, mask_size, equalize)
        return cls(layout, False, mask_size, equalize)


def extract_features(img, spec: ExtractionSpec) -> np.ndarray:
    """Extract the feature vector described by `spec` from one image."""
    arr = np.asarray(img)
    if spec.method == "ppu":
        if spec.color:
            return grain.color_pipeline(arr, spec.mask_size, spec.equalize)
        return grain.gray_pipeline(arr, spec.mask_size, spec.equalize)
    gray = to_grayscale(arr) if arr.ndim == 3 else arr
    if spec.method == "lbp":
        return baselines.lbp_features(gray)
    return baselines.glcm_features(gray)


def layout_from_names(names) -> str:
    """Identify the feature layout from CSV dimension names."""
    names = tuple(names)
    for layout, expected in _LAYOUT_NAMES.items():
        if names == expected:
            return layout
    raise ValueError(
        f"feature columns {names[:4]}... do not match any known layout "
        f"({', '.join(_LAYOUT_NAMES)})"
    )


def write_feature_csv(path, rows, feature_names) -> None:
    """Write feature rows [(path, label, values), ...] as a feature table."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["path", "label", *feature_names])
        for img_path, label, values in rows:
            writer.writerow([img_path, label, *(format(v, ".17g") for v in values)])


def read_feature_csv(path):
    """Read a feature table; returns (feature_names, paths, labels, matrix)."""
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty feature table") from None
        if len(header) < 3 or header[:2] != ["path", "label"]:
            raise ValueError(f"{path}: expected header 'path,label,<features...>'")
        names = tuple(header[2:])
        paths, labels, matrix = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            paths.append(row[0])
            labels.append(row[1])
            matrix.append([float(v) for v in row[2:]])
    if not paths:
        raise ValueError(f"{path}: feature table has no rows")
    return names, paths, labels, np.array(matrix, dtype=np.float64)
