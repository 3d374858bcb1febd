"""Render the two figure CSVs produced by the CLI.

Usage:
    asymq fig1 --n-list 100 316 1000 3162 10000 --out fig1.csv
    asymq fig2 --xi 0.3 --steps 200 --out fig2.csv
    python3 docs/plot_figures.py fig1.csv fig2.csv
"""

import csv
import math
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows


def plot_fig1(path, out="fig1.png"):
    rows = read_csv(path)
    n = [float(r["n"]) for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot([math.log10(v) for v in n], [float(r["S_exact_over_logn"]) for r in rows],
            "o", color="tab:blue", label="S / log n")
    ax.plot([math.log10(v) for v in n], [float(r["a_over_logn"]) for r in rows],
            "o", color="tab:red", label="surrogate / log n")
    ax.axhline(float(rows[0]["u"]), color="black", lw=1, label="limit u")
    ax.set_xlabel("log10 n")
    ax.set_ylabel("entropy / log n")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_fig2(path, out="fig2.png"):
    rows = read_csv(path)
    kappa = [float(r["kappa"]) for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(kappa, [float(r["h_mu"]) for r in rows], color="tab:green", label="h(mu)")
    ax.plot(kappa, [float(r["kappa_h_xi"]) for r in rows], color="tab:blue",
            label="kappa h(xi)")
    ax.set_xlabel("kappa")
    ax.set_ylabel("rate (bits)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: plot_figures.py FIG1_CSV FIG2_CSV")
    plot_fig1(sys.argv[1])
    plot_fig2(sys.argv[2])
