#!/usr/bin/env python3
"""Download the benchmark datasets the acceptance suite scores against.

The library itself never downloads anything; this helper exists so a
networked machine can populate data/ once:

    python scripts/fetch_datasets.py [--dest data]

Sources are public mirrors: the UCI Machine Learning Repository for
breast-w / heart / acute, and the FOLD-R-PP toolset repository for the
891/418 passenger-survival split (its test rows carry labels, unlike the
Kaggle copy).  Files are normalized to the schemas documented in
docs/datasets.md and validated by shape before being written.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import urllib.request
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
FOLD_REPO = "https://raw.githubusercontent.com/hwd404/FOLD-R-PP/main"

HEART_COLUMNS = [
    "age", "sex", "chest_pain", "resting_blood_pressure", "serum_cholestoral",
    "fasting_blood_sugar", "resting_ecg", "max_heart_rate",
    "exercise_induced_angina", "oldpeak", "slope", "major_vessels", "thal",
    "class",
]

BREASTW_COLUMNS = [
    "clump_thickness", "cell_size_uniformity", "cell_shape_uniformity",
    "marginal_adhesion", "single_epi_cell_size", "bare_nuclei",
    "bland_chromatin", "normal_nucleoli", "mitoses", "class",
]

ACUTE_COLUMNS = [
    "temperature", "nausea", "lumbar_pain", "urine_pushing",
    "micturition_pains", "burning", "inflammation",
]


def fetch(url: str) -> bytes:
    print(f"  GET {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read()


def write_csv(path: Path, header: list[str], rows: list[list[str]], shape: tuple[int, int]):
    if (len(rows), len(header)) != shape:
        raise SystemExit(
            f"{path.name}: got shape {(len(rows), len(header))}, expected {shape}; "
            "the upstream file layout may have changed"
        )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"  wrote {path} {shape}")


def fetch_breastw(dest: Path):
    raw = fetch(f"{UCI}/breast-cancer-wisconsin/breast-cancer-wisconsin.data").decode("ascii")
    rows = [line.split(",")[1:] for line in raw.strip().splitlines()]  # drop the id column
    write_csv(dest / "breast-w.csv", BREASTW_COLUMNS, rows, (699, 10))


def fetch_heart(dest: Path):
    raw = fetch(f"{UCI}/statlog/heart/heart.dat").decode("ascii")
    rows = [line.split() for line in raw.strip().splitlines()]
    write_csv(dest / "heart.csv", HEART_COLUMNS, rows, (270, 14))


def fetch_acute(dest: Path):
    # UTF-16, tab separated, decimal commas; two diagnosis columns of which
    # the first (bladder inflammation) is the documented target.
    raw = fetch(f"{UCI}/acute/diagnosis.data").decode("utf-16")
    rows = []
    for line in raw.strip().splitlines():
        cells = line.strip().split("\t")
        if len(cells) != 8:
            continue
        cells[0] = cells[0].replace(",", ".")
        rows.append(cells[:7])
    write_csv(dest / "acute.csv", ACUTE_COLUMNS, rows, (120, 7))


def _passenger_rows(raw: str) -> tuple[list[str], list[list[str]]]:
    reader = csv.reader(io.StringIO(raw))
    header = next(reader)
    header = ["status" if h.lower() in ("survived", "status") else h for h in header]
    if "status" not in header:
        raise SystemExit("passenger data: no survived/status column found")
    return header, list(reader)


def fetch_titanic(dest: Path):
    for name, out, n_rows in (("train", "titanic-train.csv", 891), ("test", "titanic-test.csv", 418)):
        raw = fetch(f"{FOLD_REPO}/data/titanic/{name}.csv").decode("utf-8-sig")
        header, rows = _passenger_rows(raw)
        write_csv(dest / out, header, rows, (n_rows, len(header)))


FETCHERS = {
    "breast-w": fetch_breastw,
    "heart": fetch_heart,
    "acute": fetch_acute,
    "titanic": fetch_titanic,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dest", default="data", help="output directory (default: data)")
    parser.add_argument(
        "--only", choices=sorted(FETCHERS), action="append",
        help="fetch just these datasets (repeatable)",
    )
    args = parser.parse_args(argv)
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name in args.only or sorted(FETCHERS):
        print(f"{name}:")
        try:
            FETCHERS[name](dest)
        except Exception as exc:  # keep going; report at the end
            print(f"  FAILED: {exc}", file=sys.stderr)
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
