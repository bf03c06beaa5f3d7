"""Command-line interface.

Subcommands: extract (directory -> feature CSV), train (CSV -> model
JSON), classify (model + image -> label), evaluate (directory -> accuracy
report), synth (write a synthetic texture corpus).

Exit codes: 0 success, 1 usage error, 2 data error. Every command is
deterministic given its flags and seed: directory listings are sorted
before processing and no output embeds timestamps.
"""

import argparse
import json
import sys
from pathlib import Path

from .classify import (
    LabeledDataset,
    evaluate,
    load_model,
    make_classifier,
    save_model,
    train_knn,
    train_naive_bayes,
)
from .extract import (
    METHODS,
    ExtractionSpec,
    extract_features,
    layout_from_names,
    read_feature_csv,
    write_feature_csv,
)
from .io import ImageReadError, load_image
from .synth import FAMILIES, generate_dataset

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".pgm", ".ppm")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _add_color_flags(parser):
    # default None = "not requested": ppu defaults to color, lbp/glcm to gray
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--color", dest="color", action="store_const", const=True,
                       default=None, help="use the 12-dim per-RGB-channel features")
    group.add_argument("--gray", dest="color", action="store_const", const=False,
                       help="convert to grayscale and use the 4-dim features")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graintex",
                     description="Grain-component texture classification toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="extract features from a labeled image directory")
    p.add_argument("input_dir", help="directory with one subdirectory per class")
    p.add_argument("--features", choices=METHODS, default="ppu")
    _add_color_flags(p)
    p.add_argument("--mask", type=int, default=3, help="odd mask size for ppu features")
    p.add_argument("--equalize", action="store_true",
                   help="histogram-equalize channels before thresholding (ppu only)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="train a classifier from a feature CSV")
    p.add_argument("--features", required=True, metavar="CSV", help="feature table from extract")
    p.add_argument("--classifier", choices=("knn", "nb"), default="knn")
    p.add_argument("--k", type=int, default=3, help="neighbor count for knn (odd)")
    p.add_argument("--mask", type=int, default=3,
                   help="mask size the features were extracted with (stored in the model)")
    p.add_argument("--equalize", action="store_true",
                   help="features were extracted with equalization (stored in the model)")
    p.add_argument("--model", required=True, help="output model JSON path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="classify one image with a trained model")
    p.add_argument("--model", required=True, help="model JSON from train")
    p.add_argument("image", help="image to classify")
    p.add_argument("--features", choices=METHODS, default=None,
                   help="assert the model was trained on this feature method")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--color", dest="color", action="store_const", const=True, default=None)
    group.add_argument("--gray", dest="color", action="store_const", const=False)
    p.add_argument("--mask", type=int, default=None)
    p.add_argument("--equalize", dest="equalize", action="store_const", const=True, default=None)
    p.add_argument("--no-equalize", dest="equalize", action="store_const", const=False)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", help="repeated-split accuracy benchmark")
    p.add_argument("--dataset", required=True, help="directory with one subdirectory per class")
    p.add_argument("--features", default="ppu,lbp,glcm",
                   help="comma-separated feature methods (default: ppu,lbp,glcm)")
    p.add_argument("--classifiers", default="knn1,knn3,knn5,nb",
                   help="comma-separated classifiers (default: knn1,knn3,knn5,nb)")
    p.add_argument("--splits", type=int, default=10)
    p.add_argument("--train-frac", type=float, default=0.65)
    p.add_argument("--seed", type=int, default=42)
    _add_color_flags(p)
    p.add_argument("--mask", type=int, default=3)
    p.add_argument("--equalize", action="store_true")
    p.add_argument("--out", default=None, help="write the report as JSON to this path")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic 4-family texture corpus")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--classes", type=int, default=4,
                   help=f"number of families to generate (1..{len(FAMILIES)})")
    p.add_argument("--per-class", type=int, default=20)
    p.add_argument("--size", type=int, default=96)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_synth)

    return parser


def _scan_dataset(input_dir) -> list:
    """Sorted (path, label) pairs; label = subdirectory name."""
    root = Path(input_dir)
    if not root.is_dir():
        raise DataError(f"{input_dir}: not a directory")
    entries = []
    for sub in sorted(p for p in root.iterdir() if p.is_dir()):
        for f in sorted(sub.iterdir()):
            if f.is_file() and f.suffix.lower() in IMAGE_EXTENSIONS:
                entries.append((f, sub.name))
    if not entries:
        raise DataError(f"{input_dir}: no images found in class subdirectories")
    entries.sort(key=lambda e: e[0].as_posix())
    return entries


def _make_spec(method: str, color, mask: int, equalize: bool) -> ExtractionSpec:
    if color and method != "ppu":
        raise UsageError(f"--color cannot be combined with --features {method} "
                         f"({method} features are gray-level only)")
    try:
        if method == "ppu":
            return ExtractionSpec("ppu", color if color is not None else True, mask, equalize)
        return ExtractionSpec(method, False, mask, equalize)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_extract(args) -> int:
    spec = _make_spec(args.features, args.color, args.mask, args.equalize)
    entries = _scan_dataset(args.input_dir)
    rows = []
    for path, label in entries:
        try:
            vec = extract_features(load_image(path), spec)
        except (ImageReadError, ValueError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            continue
        rows.append((path.as_posix(), label, vec))
    if not rows:
        raise DataError(f"{args.input_dir}: every image failed to load or extract")
    write_feature_csv(args.out, rows, spec.feature_names)
    print(f"wrote {len(rows)} rows ({spec.layout}) to {args.out}")
    return EXIT_OK


def cmd_train(args) -> int:
    names, _paths, labels, matrix = read_feature_csv(args.features)
    try:
        layout = layout_from_names(names)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    try:
        spec = ExtractionSpec.from_layout(layout, args.mask, args.equalize)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ds = LabeledDataset(matrix, tuple(labels), names)
    if args.classifier == "knn":
        if args.k < 1 or args.k % 2 == 0:
            raise UsageError(f"--k must be odd and >= 1, got {args.k}")
        model = train_knn(ds, args.k)
    else:
        model = train_naive_bayes(ds)
    save_model(args.model, model, layout, spec.to_dict())
    print(f"trained {args.classifier} on {len(ds)} samples ({layout}) -> {args.model}")
    return EXIT_OK


def cmd_classify(args) -> int:
    model, layout, extraction = load_model(args.model)
    stored = ExtractionSpec.from_dict(extraction)

    requested = {}
    if args.features is not None:
        requested["method"] = args.features
    if args.color is not None:
        requested["color"] = args.color
    if args.mask is not None:
        requested["mask_size"] = args.mask
    if args.equalize is not None:
        requested["equalize"] = args.equalize
    if requested:
        merged = dict(stored.to_dict())
        merged.update(requested)
        if merged["method"] != "ppu" and merged.get("color"):
            raise DataError(
                f"model layout {layout!r} is gray-level; a color pipeline was "
                f"requested for method {merged['method']!r}"
            )
        req_spec = ExtractionSpec.from_dict(merged)
        if req_spec != stored:
            raise DataError(
                f"model layout {layout!r} ({stored.to_dict()}) does not match "
                f"requested layout {req_spec.layout!r} ({req_spec.to_dict()})"
            )

    img = load_image(args.image)
    label = model.predict(extract_features(img, stored))
    print(label)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    methods = [m.strip() for m in args.features.split(",") if m.strip()]
    if not methods:
        raise UsageError("--features must name at least one method")
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown feature method {m!r}; use one of {METHODS}")
    classifiers = [c.strip() for c in args.classifiers.split(",") if c.strip()]
    if not classifiers:
        raise UsageError("--classifiers must name at least one classifier")
    for c in classifiers:
        try:
            make_classifier(c)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.splits < 1:
        raise UsageError(f"--splits must be >= 1, got {args.splits}")

    specs = {
        m: _make_spec(m, args.color if m == "ppu" else None, args.mask, args.equalize)
        for m in methods
    }
    entries = _scan_dataset(args.dataset)
    vectors = {m: [] for m in methods}
    labels = []
    for path, label in entries:
        try:
            img = load_image(path)
            per_method = {m: extract_features(img, specs[m]) for m in methods}
        except (ImageReadError, ValueError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            continue
        for m in methods:
            vectors[m].append(per_method[m])
        labels.append(label)
    if not labels:
        raise DataError(f"{args.dataset}: every image failed to load or extract")

    datasets = {
        m: LabeledDataset(vectors[m], tuple(labels), specs[m].feature_names)
        for m in methods
    }
    try:
        report = evaluate(datasets, classifiers, args.splits, args.train_frac, args.seed)
    except ValueError as exc:
        raise DataError(str(exc)) from None

    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )
    print(report.render_table())
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        written = generate_dataset(args.out, args.classes, args.per_class,
                                   args.size, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"wrote {len(written)} images to {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"graintex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ImageReadError, ValueError, OSError) as exc:
        print(f"graintex: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
