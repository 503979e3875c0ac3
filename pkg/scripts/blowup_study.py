#!/usr/bin/env python3
"""Follow the fundamental branch toward its endpoint for three cell heights.

Tabulates amplitude and maximal slope on a grid graded toward the endpoint
and prints which quantity blows up: below h_star the amplitude reaches the
cell wall at finite gamma_h, at h_star both diverge together, above h_star
the height saturates below the wall while the slope diverges.
"""

import argparse

import numpy as np

import muskat


def follow(h, n):
    p = muskat.PhysicalParams(h=h)
    reg = muskat.lambda_h(p)
    br = muskat.trace_branch(p, l=1, n_points=n)
    lams = br.column("lam")
    print(f"\nh = {h:.6g}: regime ({reg.kind.roman}) {reg.kind.value}")
    print(f"  endpoint lambda_h = {reg.lambda_h:.9f}, gamma_h = {reg.gamma_h:.9f}")
    print(f"  {'lambda':>12} {'gamma':>12} {'amplitude':>12} {'max_slope':>12}")
    order = np.argsort(lams)
    for idx in order[: min(6, n)]:
        pt = br.points[idx]
        print(f"  {pt.lam:12.6f} {pt.gamma:12.6f} {pt.amplitude:12.6f} {pt.alpha:12.3f}")
    amps = br.column("amplitude")
    print(f"  sup amplitude = {np.nanmax(amps):.6f} (cell wall at {h:.6g})")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=40, help="points per branch")
    args = ap.parse_args()

    h_star = muskat.constants().h_star
    print(f"threshold cell half-height h_star = {h_star:.12f}")
    for h in (0.5 * h_star, h_star, 2.0 * h_star):
        follow(h, args.n)


if __name__ == "__main__":
    main()
