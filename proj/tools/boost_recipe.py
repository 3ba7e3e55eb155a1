#!/usr/bin/env python3
"""Train a histogram gradient-boosting classifier on exported feature CSVs.

Consumes the train/test CSVs written by `texpyr split` (header
`source_id,label,<columns...>`) and optionally the matching stats CSV to
apply the same train-only min-max normalization the in-repo classifiers use.

Defaults mirror the reference ensemble configuration (max_iter=1500,
max_bins=10); pass --max-iter with a small value for a quick smoke run.
"""

import argparse
import csv
import sys


def read_features(path):
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or len(header) < 3 or header[0] != "source_id" or header[1] != "label":
            raise SystemExit(f"schema error: {path}: header must start with 'source_id,label,'")
        columns = header[2:]
        ids, labels, rows = [], [], []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise SystemExit(
                    f"schema error: {path}:{line_no}: {len(row)} fields, expected {len(header)}")
            ids.append(row[0])
            labels.append(row[1])
            try:
                rows.append([float(v) for v in row[2:]])
            except ValueError as e:
                raise SystemExit(f"schema error: {path}:{line_no}: {e}")
    return columns, ids, labels, rows


def read_stats(path):
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != ["dim_name", "min", "max"]:
            raise SystemExit(f"schema error: {path}: expected header 'dim_name,min,max'")
        lo, hi = [], []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise SystemExit(f"schema error: {path}: row with {len(row)} fields")
            lo.append(float(row[1]))
            hi.append(float(row[2]))
    return lo, hi


def normalize(rows, lo, hi):
    out = []
    for row in rows:
        if len(row) != len(lo):
            raise SystemExit("schema error: stats dimensionality does not match features")
        out.append([(v - a) / (b - a) if b > a else 0.0 for v, a, b in zip(row, lo, hi)])
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--train", required=True, help="training feature CSV")
    parser.add_argument("--test", required=True, help="test feature CSV")
    parser.add_argument("--stats", help="min-max stats CSV fitted on the training split")
    parser.add_argument("--max-iter", type=int, default=1500)
    parser.add_argument("--max-bins", type=int, default=10)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    train_cols, _, train_y, train_x = read_features(args.train)
    test_cols, _, test_y, test_x = read_features(args.test)
    if train_cols != test_cols:
        raise SystemExit("schema error: train and test column sets differ")
    if not train_x or not test_x:
        raise SystemExit("schema error: empty train or test set")

    if args.stats:
        lo, hi = read_stats(args.stats)
        train_x = normalize(train_x, lo, hi)
        test_x = normalize(test_x, lo, hi)

    from sklearn.ensemble import HistGradientBoostingClassifier

    clf = HistGradientBoostingClassifier(
        max_iter=args.max_iter, max_bins=args.max_bins, random_state=args.seed)
    clf.fit(train_x, train_y)
    acc = clf.score(test_x, test_y)
    print(f"hist-gradient-boosting accuracy: {100.0 * acc:.2f}% "
          f"(train={len(train_x)} test={len(test_x)} dims={len(train_cols)} "
          f"max_iter={args.max_iter} max_bins={args.max_bins})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
