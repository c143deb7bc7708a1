"""Phase-estimation outcome distribution for one tuple, printed as a text histogram."""

import argparse

import numpy as np

from fermatzeta import FermatSurface
from fermatzeta.fermat import normalized_phase
from fermatzeta.qsim import phase_estimation


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=13)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--coeffs", default="1,1,1")
    ap.add_argument("--b", default="1,1,1")
    ap.add_argument("--t-bits", type=int, default=6)
    ap.add_argument("--shots", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    surface = FermatSurface.over(args.p, args.m, [int(c) for c in args.coeffs.split(",")])
    b = [int(x) for x in args.b.split(",")]
    est = phase_estimation(surface, b, args.t_bits, shots=args.shots, seed=args.seed, keep_distribution=True)
    true = np.angle(normalized_phase(surface, b)) % (2 * np.pi)
    N = 2**args.t_bits
    counts = np.bincount(est.outcomes, minlength=N)
    print(f"true theta {true:.6f}, modal estimate {est.theta_hat:.6f}, grid {2 * np.pi / N:.6f}")
    for k in np.flatnonzero(est.distribution > 1e-3):
        bar = "#" * int(round(60 * est.distribution[k]))
        print(f"{2 * np.pi * k / N:8.4f}  p={est.distribution[k]:.4f}  shots={counts[k]:4d}  {bar}")


if __name__ == "__main__":
    main()
