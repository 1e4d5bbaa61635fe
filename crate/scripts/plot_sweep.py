#!/usr/bin/env python3
"""Plot one or more `bcbench sweep` CSVs.

Each input gives three panels: mean sample count against c, mean factor
difference against c, and 1/factor difference against mean sample count.
Series are labelled with the file stem, e.g. `oregon-vertex.csv` -> "oregon-vertex".

    python3 scripts/plot_sweep.py results/oregon-vertex.csv results/oregon-pair.csv -o oregon.png
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLUMNS = ["c", "mean_k", "mean_factor_diff", "inv_factor_diff"]


def read_sweep(path):
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != COLUMNS:
            raise SystemExit(f"{path}: expected header {','.join(COLUMNS)}, got {reader.fieldnames}")
        rows = [{k: float(v) for k, v in row.items()} for row in reader]
    return {col: [r[col] for r in rows] for col in COLUMNS}


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("csv", nargs="+", type=Path)
    parser.add_argument("-o", "--out", type=Path, default=Path("sweep.png"))
    args = parser.parse_args()

    fig, (ax_k, ax_err, ax_inv) = plt.subplots(1, 3, figsize=(15, 4.5))
    for path in args.csv:
        s = read_sweep(path)
        label = path.stem
        ax_k.plot(s["c"], s["mean_k"], marker="o", label=label)
        ax_err.plot(s["c"], s["mean_factor_diff"], marker="o", label=label)
        ax_inv.plot(s["mean_k"], s["inv_factor_diff"], marker="o", label=label)

    ax_k.set(xlabel="c", ylabel="mean samples k", title="Samples vs c")
    ax_err.set(xlabel="c", ylabel="mean |estimate - BC| / BC", title="Factor difference vs c")
    ax_inv.set(xlabel="mean samples k", ylabel="1 / factor difference", title="Accuracy vs samples")
    for ax in (ax_k, ax_err, ax_inv):
        ax.grid(alpha=0.3)
        ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
