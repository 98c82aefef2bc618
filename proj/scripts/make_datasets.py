#!/usr/bin/env python3
"""Regenerates the bundled benchmark CSVs under data/.

Bundled sets:
  wine     -- the classic 178x13 three-class wine chemistry data
              (shipped with scikit-learn).
  balance  -- balance-scale: all 625 combinations of weights/distances
              1..5 per arm; class by torque comparison. This rule
              reproduces the published file exactly.
  blobs9   -- synthetic: 3 classes, each a union of 3 Gaussian blobs.
  rings    -- synthetic: 2 concentric annuli.
  xorblobs -- synthetic: 4 corner blobs, diagonal pairs share a class.

Sets that cannot be generated (ukm, diabetes, hr, ...) must be fetched
from their upstream archives and dropped into data/ under the file names
listed in data/manifest.json.
"""

import argparse
import itertools
import os

import numpy as np


def write_csv(path, header, rows):
    with open(path, "w") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")
    print(f"wrote {path} ({len(rows)} rows)")


def fmt(x):
    return f"{x:.6f}"


def make_wine(out):
    from sklearn.datasets import load_wine

    wine = load_wine()
    header = [f"f{i}" for i in range(wine.data.shape[1])] + ["class"]
    rows = [
        [fmt(v) for v in x] + [str(y)]
        for x, y in zip(wine.data, wine.target)
    ]
    write_csv(os.path.join(out, "wine.csv"), header, rows)


def make_balance(out):
    rows = []
    for lw, ld, rw, rd in itertools.product(range(1, 6), repeat=4):
        left, right = lw * ld, rw * rd
        cls = "L" if left > right else ("R" if right > left else "B")
        rows.append([str(lw), str(ld), str(rw), str(rd), cls])
    write_csv(
        os.path.join(out, "balance.csv"),
        ["left_weight", "left_distance", "right_weight", "right_distance", "class"],
        rows,
    )


def blob(rng, center, std, n):
    return rng.normal(loc=center, scale=std, size=(n, 2))


def make_blobs9(out):
    rng = np.random.default_rng(90)
    centers = {
        0: [(0.15, 0.15), (0.85, 0.50), (0.30, 0.90)],
        1: [(0.50, 0.15), (0.15, 0.55), (0.85, 0.90)],
        2: [(0.85, 0.15), (0.50, 0.55), (0.15, 0.90)],
    }
    rows = []
    for cls, cs in centers.items():
        for c in cs:
            for x, y in blob(rng, c, 0.05, 50):
                rows.append([fmt(x), fmt(y), str(cls)])
    write_csv(os.path.join(out, "blobs9.csv"), ["x", "y", "class"], rows)


def make_rings(out):
    rng = np.random.default_rng(91)
    rows = []
    for cls, (r_lo, r_hi) in enumerate([(0.0, 0.35), (0.55, 0.85)]):
        for _ in range(200):
            r = rng.uniform(r_lo, r_hi)
            t = rng.uniform(0.0, 2.0 * np.pi)
            rows.append([fmt(r * np.cos(t)), fmt(r * np.sin(t)), str(cls)])
    write_csv(os.path.join(out, "rings.csv"), ["x", "y", "class"], rows)


def make_xorblobs(out):
    rng = np.random.default_rng(92)
    corners = [((0.2, 0.2), 0), ((0.8, 0.8), 0), ((0.2, 0.8), 1), ((0.8, 0.2), 1)]
    rows = []
    for center, cls in corners:
        for x, y in blob(rng, center, 0.08, 75):
            rows.append([fmt(x), fmt(y), str(cls)])
    write_csv(os.path.join(out, "xorblobs.csv"), ["x", "y", "class"], rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    make_wine(args.out)
    make_balance(args.out)
    make_blobs9(args.out)
    make_rings(args.out)
    make_xorblobs(args.out)


if __name__ == "__main__":
    main()
