"""graintex: texture classification from grain-component histograms,
with LBP and GLCM baselines and a repeated-split evaluation harness."""

from .baselines import glcm_features, lbp_features
from .classify import (
    KnnModel,
    LabeledDataset,
    NaiveBayesModel,
    Standardizer,
    evaluate,
    stratified_split,
    train_knn,
    train_naive_bayes,
)
from .extract import ExtractionSpec, extract_features
from .grain import (
    COLOR_FEATURE_NAMES,
    GRAY_FEATURE_NAMES,
    GrainDistribution,
    GrainHistogram,
    color_pipeline,
    count_grains,
    features,
    grain_histogram,
    gray_pipeline,
    normalize,
)
from .image import (
    binarize,
    equalize_histogram,
    intensity_histogram,
    otsu_threshold,
    split_channels,
    to_grayscale,
)
from .io import load_image, save_image

__version__ = "0.1.0"

__all__ = [
    "COLOR_FEATURE_NAMES",
    "GRAY_FEATURE_NAMES",
    "ExtractionSpec",
    "GrainDistribution",
    "GrainHistogram",
    "KnnModel",
    "LabeledDataset",
    "NaiveBayesModel",
    "Standardizer",
    "binarize",
    "color_pipeline",
    "count_grains",
    "equalize_histogram",
    "evaluate",
    "extract_features",
    "features",
    "glcm_features",
    "grain_histogram",
    "gray_pipeline",
    "intensity_histogram",
    "lbp_features",
    "load_image",
    "normalize",
    "otsu_threshold",
    "save_image",
    "split_channels",
    "stratified_split",
    "to_grayscale",
    "train_knn",
    "train_naive_bayes",
]
