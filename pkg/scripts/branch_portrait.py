#!/usr/bin/env python3
"""Trace the first few bifurcation branches and write one CSV per mode.

Produces the data behind a bifurcation portrait: for each mode l the
branch points (gamma, amplitude) and the window endpoints, plus a printed
summary of where consecutive branches share a gamma window.
"""

import argparse
from pathlib import Path

import muskat
from muskat.export import write_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--h", type=float, default=5.0, help="cell half-height")
    ap.add_argument("--modes", type=int, default=4, help="number of branches to trace")
    ap.add_argument("--n", type=int, default=80, help="points per branch")
    ap.add_argument("--outdir", default="out_branches", help="output directory")
    args = ap.parse_args()

    p = muskat.PhysicalParams(h=args.h)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    c = muskat.constants()
    print(f"lambda_star = {c.lambda_star:.12f}, h_star = {c.h_star:.12f}, h = {args.h}")
    for l in range(1, args.modes + 1):
        br = muskat.trace_branch(p, l=l, n_points=args.n)
        path = outdir / f"branch_l{l}.csv"
        write_table(
            str(path),
            {
                "l": l,
                "regime": br.regime.kind.value,
                "lambda_h_base": br.regime.lambda_h,
                "gamma_h_base": br.regime.gamma_h,
            },
            {
                "lambda": br.column("lam"),
                "gamma": br.column("gamma"),
                "alpha": br.column("alpha"),
                "amplitude": br.column("amplitude"),
            },
        )
        gammas = br.column("gamma")
        print(
            f"mode {l}: {br.regime.kind.value:17s} gamma in ({gammas.min():.4f}, {gammas.max():.4f})"
            f"  -> {path}"
        )

    print("\nshared gamma windows of consecutive branches:")
    for l, (lo, hi) in muskat.coexistence_levels(p, args.modes + 1):
        print(f"  modes {l} and {l+1}: gamma in ({lo:.4f}, {hi:.4f})")


if __name__ == "__main__":
    main()
