#!/usr/bin/env python3
# Copyright 2026 the aqr developers
# SPDX-License-Identifier: Apache-2.0
"""Plot aqr datasets.

Modes:
  errors  <optimize.csv> <bounds.csv> [mc.csv]  error probability vs mean photon number
  info    <info.csv>                            mutual information vs mean photon number
"""

import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_rows(path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def plot_errors(optimize_csv, bounds_csv, mc_csv=None, out="error_curves.png"):
    fig, ax = plt.subplots(figsize=(6, 4.5))

    curves = defaultdict(list)
    for row in read_rows(optimize_csv):
        curves[row["kind"]].append((float(row["mean_photon"]), float(row["p_error"])))
    for kind, points in curves.items():
        points.sort()
        ax.plot(*zip(*points), "--", label=kind)

    bounds = read_rows(bounds_csv)
    grid = [float(r["mean_photon"]) for r in bounds]
    ax.plot(grid, [float(r["helstrom"]) for r in bounds], "k-", label="Helstrom bound")
    ax.plot(grid, [float(r["qnl"]) for r in bounds], "r-", label="heterodyne limit")
    if any(float(r["qnl_scaled"]) != float(r["qnl"]) for r in bounds):
        ax.plot(grid, [float(r["qnl_scaled"]) for r in bounds], "-", color="gray",
                label="heterodyne limit (same DE)")

    if mc_csv:
        mc = defaultdict(list)
        for row in read_rows(mc_csv):
            mc[row["kind"]].append(
                (float(row["mean_photon"]), float(row["p_hat"]), float(row["std_error"]))
            )
        for kind, points in mc.items():
            points.sort()
            n, p, s = zip(*points)
            ax.errorbar(n, p, yerr=s, fmt="o", ms=3, label=f"{kind} (sampled)")

    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("mean photon number")
    ax.set_ylabel("error probability")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


def plot_info(info_csv, out="information_curves.png"):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    curves = defaultdict(list)
    comparators = {}
    for row in read_rows(info_csv):
        n = float(row["mean_photon"])
        curves[row["kind"]].append((n, float(row["bits"])))
        comparators[n] = (float(row["heterodyne_capacity"]), float(row["holevo"]))
    for kind, points in curves.items():
        points.sort()
        ax.plot(*zip(*points), "o--", ms=3, label=kind)
    grid = sorted(comparators)
    ax.plot(grid, [comparators[n][0] for n in grid], "r-", label="heterodyne capacity")
    ax.plot(grid, [comparators[n][1] for n in grid], "k-", label="Holevo bound")
    ax.set_xscale("log")
    ax.set_xlabel("mean photon number")
    ax.set_ylabel("bits per channel use")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


def main():
    if len(sys.argv) < 3:
        print(__doc__)
        return 2
    mode = sys.argv[1]
    if mode == "errors":
        plot_errors(*sys.argv[2:])
    elif mode == "info":
        plot_info(*sys.argv[2:])
    else:
        print(__doc__)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
