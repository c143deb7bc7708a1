"""Approximate N_1 against brute force while the ancilla count grows."""

import argparse

from fermatzeta import FermatSurface, count_points
from fermatzeta.qsim import approx_count

SURFACES = [(7, 2, (-1, 1, 1, 1)), (7, 3, (1, 1, 1)), (5, 4, (1, 1, 1)), (13, 3, (1, 1, 1)), (13, 4, (1, 2, 3))]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-bits", default="4,6,8,10")
    ap.add_argument("--samples", type=int, default=0, help="0 means every tuple")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    print("p,m,coeffs,t_bits,exact,estimate,raw,error_bar")
    for p, m, coeffs in SURFACES:
        s = FermatSurface.over(p, m, coeffs)
        exact = count_points(s.to_poly_system(), 1)
        for t in (int(x) for x in args.t_bits.split(",")):
            est = approx_count(s, t_bits=t, exhaustive=args.samples == 0, samples=args.samples or 1,
                               seed=args.seed, exact_power_limit=16)
            print(f"{p},{m},{' '.join(map(str, coeffs))},{t},{exact},{est.estimate},{est.raw:.4f},{est.error_bar:.4f}")


if __name__ == "__main__":
    main()
