#!/usr/bin/env python3
"""Plot error against N^(1/3) and flops^(1/7) from one or more records.csv files,
and optionally draw a mesh file written by `hpilg mesh`."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_records(paths, out):
    fig, (ax_n, ax_w) = plt.subplots(1, 2, figsize=(10, 4))
    for path in paths:
        r = pd.read_csv(path)
        ax_n.semilogy(r.n_free ** (1 / 3), r.error_energy, "o-", label=path)
        ax_w.semilogy(r.flops_total ** (1 / 7), r.error_energy, "o-", label=path)
    ax_n.set_xlabel("N^(1/3)")
    ax_w.set_xlabel("flops^(1/7)")
    for ax in (ax_n, ax_w):
        ax.set_ylabel("energy error")
        ax.grid(True, which="both", alpha=0.3)
    ax_n.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(out, dpi=150)


def plot_mesh(path, out):
    with open(path) as f:
        nv, nt = map(int, f.readline().split())
        xy = [tuple(map(float, f.readline().split()[:2])) for _ in range(nv)]
        tris = [list(map(int, f.readline().split()[:3])) for _ in range(nt)]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.triplot([p[0] for p in xy], [p[1] for p in xy], tris, lw=0.4, color="k")
    ax.set_aspect("equal")
    fig.savefig(out, dpi=200)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("records", nargs="*", help="records.csv files")
    ap.add_argument("--mesh", help="mesh file to draw instead")
    ap.add_argument("-o", "--out", default="convergence.png")
    a = ap.parse_args()
    if a.mesh:
        plot_mesh(a.mesh, a.out)
    elif a.records:
        plot_records(a.records, a.out)
    else:
        ap.error("give records files or --mesh")
