#!/usr/bin/env python3
"""Measured vs. predicted growth rate as a function of wave amplitude.

At a fixed unstable carrier (default beta=gamma=1, k=1.6) the dominant
instability comes from the {-1,0} collision and its growth rate is
k^2*a*sqrt(-(n+xi0)(n+1+xi0)) to leading order.  This script sweeps a
range of amplitudes, prints the relative error and the local scaling
exponent, and optionally writes a CSV.
"""

import argparse
import csv
import sys

import numpy as np

from ostro_stab import (
    PhysicalParams,
    TruncationConfig,
    collision_xi,
    max_growth,
    predicted_growth_rate,
    stokes_coefficients,
)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--beta", type=float, default=1.0)
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--k", type=float, default=1.6)
    ap.add_argument("--a-lo", type=float, default=0.0025)
    ap.add_argument("--a-hi", type=float, default=0.04)
    ap.add_argument("--num", type=int, default=9)
    ap.add_argument("--N", type=int, default=32)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    wave = stokes_coefficients(PhysicalParams(args.beta, args.gamma, args.k))
    xis = collision_xi(wave.params, -1, 0)
    if not xis:
        sys.exit(f"k={args.k} is below the instability threshold")
    xi0 = xis[0]
    cfg = TruncationConfig(N=args.N)

    amplitudes = np.geomspace(args.a_lo, args.a_hi, args.num)
    rows = []
    prev = None
    print(f"collision at xi0 = {xi0:.8f}")
    print(f"{'a':>9} {'measured':>13} {'predicted':>13} {'rel err':>9} {'exp':>6}")
    for a in amplitudes:
        _, growth, _ = max_growth(wave, float(a), cfg)
        pred = predicted_growth_rate(wave, -1, xi0, float(a))
        exp = np.log(growth / prev[1]) / np.log(a / prev[0]) if prev else np.nan
        print(f"{a:9.5f} {growth:13.6e} {pred:13.6e} "
              f"{(growth - pred) / pred:+9.2%} {exp:6.3f}")
        rows.append([repr(float(a)), repr(growth), repr(pred)])
        prev = (a, growth)

    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["a", "growth", "predicted"])
            writer.writerows(rows)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
