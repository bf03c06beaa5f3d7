"""Dataset handling, z-score standardization, KNN and Gaussian naive
Bayes classifiers, and the repeated stratified-split evaluation harness.

Feature dimensions live on very different scales (energy is at most 1,
mean can reach k*k - 1), so both classifiers standardize inputs with
statistics fitted on training data only. Every tie is broken
deterministically; all randomness flows from explicit seeds.
"""

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "LabeledDataset",
    "Standardizer",
    "KnnModel",
    "NaiveBayesModel",
    "EvalReport",
    "stratified_split",
    "train_knn",
    "train_naive_bayes",
    "make_classifier",
    "evaluate",
    "model_to_dict",
    "model_from_dict",
    "save_model",
    "load_model",
]

_VARIANCE_FLOOR = 1e-9
_STD_FLOOR = 1e-9


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix (n, d) with one label per row and named dimensions."""

    features: np.ndarray
    labels: tuple
    feature_names: tuple

    def __post_init__(self):
        x = np.asarray(self.features, dtype=np.float64)
        if x.ndim != 2:
            raise ValueError(f"feature matrix must be 2-D, got shape {x.shape}")
        if x.shape[0] != len(self.labels):
            raise ValueError(
                f"{x.shape[0]} feature rows but {len(self.labels)} labels"
            )
        if x.shape[1] != len(self.feature_names):
            raise ValueError(
                f"{x.shape[1]} feature columns but {len(self.feature_names)} names"
            )
        if x.shape[0] < 1:
            raise ValueError("dataset needs at least one sample")
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    @property
    def classes(self) -> tuple:
        return tuple(sorted(set(self.labels)))

    def __len__(self) -> int:
        return self.features.shape[0]

    def subset(self, indices) -> "LabeledDataset":
        idx = list(indices)
        return LabeledDataset(
            self.features[idx], tuple(self.labels[i] for i in idx), self.feature_names
        )


def stratified_split(ds: LabeledDataset, train_fraction: float, seed: int):
    """Split into (train, test), preserving per-class proportions.

    Per class, samples are shuffled with a generator seeded by `seed` and
    ceil(fraction * n_c) go to train, always leaving at least one for
    test. The two halves partition the dataset and the result is a pure
    function of (dataset, fraction, seed).
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train fraction must be in (0, 1), got {train_fraction}")
    counts = Counter(ds.labels)
    for label, n in counts.items():
        if n < 2:
            raise ValueError(f"class {label!r} has {n} sample(s); need at least 2 to split")

    rng = np.random.default_rng(seed)
    train_idx, test_idx = [], []
    for label in ds.classes:
        idx = [i for i, lab in enumerate(ds.labels) if lab == label]
        order = rng.permutation(len(idx))
        # epsilon guards against fraction * n landing a hair above an integer
        n_train = math.ceil(train_fraction * len(idx) - 1e-9)
        n_train = min(max(n_train, 1), len(idx) - 1)
        shuffled = [idx[j] for j in order]
        train_idx.extend(shuffled[:n_train])
        test_idx.extend(shuffled[n_train:])
    return ds.subset(sorted(train_idx)), ds.subset(sorted(test_idx))


@dataclass(frozen=True)
class Standardizer:
    """Per-dimension z-scoring with statistics from the training set."""

    means: np.ndarray
    stds: np.ndarray

    @classmethod
    def fit(cls, features) -> "Standardizer":
        x = np.asarray(features, dtype=np.float64)
        return cls(x.mean(axis=0), np.maximum(x.std(axis=0), _STD_FLOOR))

    def transform(self, x) -> np.ndarray:
        return (np.asarray(x, dtype=np.float64) - self.means) / self.stds


def _check_query(x, dim: int) -> np.ndarray:
    q = np.asarray(x, dtype=np.float64)
    if q.shape != (dim,):
        raise ValueError(f"query has shape {q.shape}, model expects ({dim},)")
    return q


@dataclass(frozen=True)
class KnnModel:
    """K-nearest-neighbors over standardized training vectors."""

    k: int
    standardizer: Standardizer
    train_features: np.ndarray  # already standardized
    train_labels: tuple

    def predict(self, x) -> str:
        """Majority label among the k nearest training samples by
        Euclidean distance. Vote ties break toward the smaller mean
        distance within the tied labels, then the smaller label."""
        q = self.standardizer.transform(_check_query(x, self.train_features.shape[1]))
        dist = np.sqrt(((self.train_features - q) ** 2).sum(axis=1))
        nearest = np.argsort(dist, kind="stable")[: self.k]
        votes = Counter(self.train_labels[i] for i in nearest)
        top = max(votes.values())
        tied = [label for label, n in votes.items() if n == top]
        if len(tied) == 1:
            return tied[0]
        mean_dist = {
            label: float(np.mean([dist[i] for i in nearest if self.train_labels[i] == label]))
            for label in tied
        }
        return min(tied, key=lambda label: (mean_dist[label], label))


@dataclass(frozen=True)
class NaiveBayesModel:
    """Gaussian naive Bayes with per-class diagonal covariances."""

    standardizer: Standardizer
    classes: tuple
    priors: np.ndarray
    means: np.ndarray      # (n_classes, d)
    variances: np.ndarray  # (n_classes, d), floored

    def log_posteriors(self, x) -> np.ndarray:
        q = self.standardizer.transform(_check_query(x, self.means.shape[1]))
        log_density = (
            -0.5 * np.log(2.0 * np.pi * self.variances)
            - (q - self.means) ** 2 / (2.0 * self.variances)
        ).sum(axis=1)
        return np.log(self.priors) + log_density

    def predict(self, x) -> str:
        # argmax returns the first maximum; classes are sorted, so exact
        # ties resolve to the lexicographically smallest label
        return self.classes[int(np.argmax(self.log_posteriors(x)))]


def train_knn(train: LabeledDataset, k: int, standardizer: Standardizer = None) -> KnnModel:
    if k < 1 or k % 2 == 0:
        raise ValueError(f"k must be odd and >= 1, got {k}")
    std = standardizer if standardizer is not None else Standardizer.fit(train.features)
    return KnnModel(k, std, std.transform(train.features), train.labels)


def train_naive_bayes(train: LabeledDataset, standardizer: Standardizer = None) -> NaiveBayesModel:
    std = standardizer if standardizer is not None else Standardizer.fit(train.features)
    x = std.transform(train.features)
    classes = train.classes
    priors, means, variances = [], [], []
    for label in classes:
        rows = x[[i for i, lab in enumerate(train.labels) if lab == label]]
        priors.append(rows.shape[0] / x.shape[0])
        means.append(rows.mean(axis=0))
        variances.append(np.maximum(rows.var(axis=0), _VARIANCE_FLOOR))
    return NaiveBayesModel(
        std, classes, np.array(priors), np.array(means), np.array(variances)
    )


def make_classifier(name: str):
    """Map a classifier name ("knn1", "knn3", "knn5", "nb") to a trainer
    callable (dataset, standardizer) -> model."""
    if name == "nb":
        return lambda ds, std: train_naive_bayes(ds, standardizer=std)
    if name.startswith("knn"):
        try:
            k = int(name[3:])
        except ValueError:
            raise ValueError(f"unknown classifier {name!r}") from None
        if k < 1 or k % 2 == 0:
            raise ValueError(f"knn neighbor count must be odd and >= 1, got {k}")
        return lambda ds, std: train_knn(ds, k, standardizer=std)
    raise ValueError(f"unknown classifier {name!r}; use knn<odd k> or nb")


def accuracy(model, test: LabeledDataset) -> float:
    """Percentage of test samples classified correctly."""
    correct = sum(
        model.predict(test.features[i]) == test.labels[i] for i in range(len(test))
    )
    return 100.0 * correct / len(test)


@dataclass
class EvalReport:
    """Mean/std accuracy per (feature method, classifier) cell."""

    methods: tuple
    classifiers: tuple
    cells: dict  # (method, classifier) -> {"mean": float, "std": float}
    splits: int
    train_fraction: float
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "splits": self.splits,
            "train_fraction": self.train_fraction,
            "seed": self.seed,
            "classifiers": list(self.classifiers),
            "methods": {
                m: {c: dict(self.cells[(m, c)]) for c in self.classifiers}
                for m in self.methods
            },
        }

    def render_table(self) -> str:
        """Aligned text table, one row per feature method and one
        "mean +- std" cell per classifier."""
        header = ["method"] + [str(c) for c in self.classifiers]
        rows = [
            [m] + [
                "{mean:.2f} ± {std:.2f}".format(**self.cells[(m, c)])
                for c in self.classifiers
            ]
            for m in self.methods
        ]
        widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
                 for r in [header] + rows]
        return "\n".join(lines)


def evaluate(datasets, classifiers, splits: int, train_fraction: float, seed: int) -> EvalReport:
    """Run the repeated-split benchmark.

    `datasets` maps feature-method name -> LabeledDataset (same images,
    different features). For run i = 1..splits each dataset is split with
    seed + i, a standardizer is fitted on the train half, every classifier
    is trained on it, and test accuracy is recorded. Cells hold the mean
    and population standard deviation over the runs.
    """
    if splits < 1:
        raise ValueError(f"need at least 1 split, got {splits}")
    classifiers = tuple(classifiers)
    trainers = {name: make_classifier(name) for name in classifiers}
    methods = tuple(datasets)
    cells = {}
    for method in methods:
        ds = datasets[method]
        scores = {name: [] for name in classifiers}
        for i in range(1, splits + 1):
            try:
                train, test = stratified_split(ds, train_fraction, seed + i)
            except ValueError as exc:
                raise ValueError(f"method {method!r}: {exc}") from None
            std = Standardizer.fit(train.features)
            for name in classifiers:
                try:
                    model = trainers[name](train, std)
                except ValueError as exc:
                    raise ValueError(f"method {method!r}, classifier {name!r}: {exc}") from None
                scores[name].append(accuracy(model, test))
        for name in classifiers:
            runs = np.array(scores[name])
            cells[(method, name)] = {
                "mean": float(runs.mean()),
                "std": float(runs.std()),
            }
    return EvalReport(methods, classifiers, cells, splits, train_fraction, seed)


def model_to_dict(model, layout: str, extraction: dict) -> dict:
    """Serialize a trained model to a versioned JSON-ready dict."""
    base = {
        "version": 1,
        "layout": layout,
        "extraction": dict(extraction),
        "standardizer": {
            "means": model.standardizer.means.tolist(),
            "stds": model.standardizer.stds.tolist(),
        },
    }
    if isinstance(model, KnnModel):
        base.update(
            kind="knn",
            k=model.k,
            train_features=model.train_features.tolist(),
            train_labels=list(model.train_labels),
        )
    elif isinstance(model, NaiveBayesModel):
        base.update(
            kind="nb",
            classes=list(model.classes),
            priors=model.priors.tolist(),
            means=model.means.tolist(),
            variances=model.variances.tolist(),
        )
    else:
        raise TypeError(f"cannot serialize model of type {type(model).__name__}")
    return base


def model_from_dict(doc: dict):
    """Inverse of model_to_dict; returns (model, layout, extraction)."""
    if doc.get("version") != 1:
        raise ValueError(f"unsupported model version {doc.get('version')!r}")
    std = Standardizer(
        np.array(doc["standardizer"]["means"], dtype=np.float64),
        np.array(doc["standardizer"]["stds"], dtype=np.float64),
    )
    kind = doc.get("kind")
    if kind == "knn":
        model = KnnModel(
            int(doc["k"]),
            std,
            np.array(doc["train_features"], dtype=np.float64),
            tuple(doc["train_labels"]),
        )
    elif kind == "nb":
        model = NaiveBayesModel(
            std,
            tuple(doc["classes"]),
            np.array(doc["priors"], dtype=np.float64),
            np.array(doc["means"], dtype=np.float64),
            np.array(doc["variances"], dtype=np.float64),
        )
    else:
        raise ValueError(f"unknown model kind {kind!r}")
    return model, doc["layout"], dict(doc["extraction"])


def save_model(path, model, layout: str, extraction: dict) -> None:
    doc = model_to_dict(model, layout, extraction)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_model(path):
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return model_from_dict(doc)
