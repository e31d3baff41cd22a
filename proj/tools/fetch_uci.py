#!/usr/bin/env python3
"""Fetch the benchmark datasets from the UCI archive into data/.

Needs network access; the build and unit tests run without these files,
but acceptance criteria over diabetes/glass/sonar stay red until the files
exist. Each dataset is rewritten into the local convention: header row,
snake_case attribute names, goal column named `class` last, descriptive
string labels, cells normalized through float().

Usage: python3 tools/fetch_uci.py [name ...]   (default: whatever is missing)
"""

import argparse
import sys
import urllib.request
from pathlib import Path

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"
DATA_DIR = Path(__file__).resolve().parent.parent / "data"

WINE_ATTRS = [
    "alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium",
    "total_phenols", "flavanoids", "nonflavanoid_phenols", "proanthocyanins",
    "color_intensity", "hue", "od280/od315_of_diluted_wines", "proline",
]

WBC_PARTS = [
    "radius", "texture", "perimeter", "area", "smoothness", "compactness",
    "concavity", "concave_points", "symmetry", "fractal_dimension",
]
WBC_ATTRS = ([f"mean_{p}" for p in WBC_PARTS] + [f"{p}_error" for p in WBC_PARTS]
             + [f"worst_{p}" for p in WBC_PARTS])

DIABETES_ATTRS = [
    "pregnancies", "plasma_glucose", "blood_pressure", "skin_thickness",
    "insulin", "body_mass_index", "diabetes_pedigree", "age",
]

GLASS_ATTRS = ["refractive_index", "sodium", "magnesium", "aluminum",
               "silicon", "potassium", "calcium", "barium", "iron"]


def rows_of(url):
    with urllib.request.urlopen(url, timeout=60) as resp:
        text = resp.read().decode("utf-8")
    return [line.split(",") for line in text.splitlines() if line.strip()]


def write_csv(name, attrs, rows):
    path = DATA_DIR / f"{name}.csv"
    with open(path, "w") as out:
        out.write(",".join(attrs + ["class"]) + "\n")
        for cells, label in rows:
            out.write(",".join(str(float(c)) for c in cells) + f",{label}\n")
    print(f"wrote {path} ({len(rows)} rows)")


def fetch_wine():
    rows = [(r[1:], f"class_{r[0]}") for r in rows_of(f"{BASE}/wine/wine.data")]
    write_csv("wine", WINE_ATTRS, rows)


def fetch_wbc():
    label = {"M": "malignant", "B": "benign"}
    rows = [(r[2:], label[r[1]])
            for r in rows_of(f"{BASE}/breast-cancer-wisconsin/wdbc.data")]
    write_csv("wbc", WBC_ATTRS, rows)


def fetch_diabetes():
    label = {"0": "tested_negative", "1": "tested_positive"}
    rows = [(r[:-1], label[r[-1]])
            for r in rows_of(f"{BASE}/pima-indians-diabetes/pima-indians-diabetes.data")]
    write_csv("diabetes", DIABETES_ATTRS, rows)


def fetch_glass():
    rows = [(r[1:-1], f"type_{r[-1]}") for r in rows_of(f"{BASE}/glass/glass.data")]
    write_csv("glass", GLASS_ATTRS, rows)


def fetch_sonar():
    label = {"R": "rock", "M": "mine"}
    url = f"{BASE}/undocumented/connectionist-bench/sonar/sonar.all-data"
    rows = [(r[:-1], label[r[-1]]) for r in rows_of(url)]
    write_csv("sonar", [f"band_{i}" for i in range(60)], rows)


FETCHERS = {
    "wine": fetch_wine,
    "wbc": fetch_wbc,
    "diabetes": fetch_diabetes,
    "glass": fetch_glass,
    "sonar": fetch_sonar,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", metavar="name",
                    help=f"datasets to fetch, from: {', '.join(FETCHERS)}"
                         " (default: the missing ones)")
    ap.add_argument("--force", action="store_true", help="refetch existing files")
    args = ap.parse_args()

    unknown = [n for n in args.names if n not in FETCHERS]
    if unknown:
        ap.error(f"unknown dataset(s): {', '.join(unknown)}")
    names = args.names or [n for n in FETCHERS
                           if args.force or not (DATA_DIR / f"{n}.csv").exists()]
    if not names:
        print("all dataset files present; use --force to refetch")
        return 0

    failed = 0
    for n in names:
        try:
            FETCHERS[n]()
        except Exception as e:  # keep going; report what a mirror must provide
            failed += 1
            print(f"{n}: fetch failed ({e}).\n"
                  f"  Place data/{n}.csv manually: header row, attribute columns,"
                  f" then a final 'class' column with string labels.",
                  file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
