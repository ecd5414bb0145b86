#!/usr/bin/env python3
"""Regenerates the small synthetic defect datasets under data/synthetic/.

The tables mimic static-code metric data: skewed, mostly integer-valued
counts with a minority "defective" class whose metrics run larger. They
exist only so tests and the CLI can run without the NASA corpus.
"""
import csv
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data" / "synthetic"

SPECS = [
    # name, rows, defective fraction, predictors, seed
    ("SYNA", 240, 0.20, 8, 11),
    ("SYNB", 180, 0.30, 6, 12),
    ("SYNC", 150, 0.15, 10, 13),
]


def make(rows, frac, p, seed):
    rng = np.random.default_rng(seed)
    y = (rng.random(rows) < frac).astype(int)
    y[:2] = [0, 1]
    size = rng.lognormal(mean=3.0 + 0.8 * y, sigma=0.9)
    cols = []
    for j in range(p):
        noise = rng.lognormal(mean=0.0, sigma=0.5, size=rows)
        if j % 3 == 0:
            cols.append(np.round(size * noise * (1 + j)))
        elif j % 3 == 1:
            cols.append(np.round(size * noise / (1 + j), 2))
        else:
            cols.append(np.round(rng.normal(0.4 * y, 1.0, rows), 3))
    return np.column_stack(cols), y


def main():
    (ROOT / "csv").mkdir(parents=True, exist_ok=True)
    for name, rows, frac, p, seed in SPECS:
        x, y = make(rows, frac, p, seed)
        names = [f"metric_{j + 1}" for j in range(p)]
        labels = ["Y" if v else "N" for v in y]
        with open(ROOT / f"{name}.arff", "w") as f:
            f.write(f"% synthetic defect data, seed {seed}\n@relation {name}\n\n")
            for n in names:
                f.write(f"@attribute {n} numeric\n")
            f.write("@attribute Defective {N,Y}\n\n@data\n")
            for row, lab in zip(x, labels):
                f.write(",".join(format(float(v), "g") for v in row) + f",{lab}\n")
        with open(ROOT / "csv" / f"{name}.csv", "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(names + ["Defective"])
            for row, lab in zip(x, labels):
                w.writerow([format(float(v), "g") for v in row] + [lab])


if __name__ == "__main__":
    main()
