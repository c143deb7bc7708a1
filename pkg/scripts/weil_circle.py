"""Write normalized reciprocal roots of several Fermat curves/surfaces as CSV.

Each row is one root divided by q^((n-1)/2), so all points should sit on the
unit circle.
"""

import argparse
import csv
import sys

import numpy as np

from fermatzeta import FermatSurface, fermat_roots, verify_weil

CASES = [(5, 4, (1, 1, 1)), (7, 3, (1, 1, 1)), (13, 3, (1, 2, 5)), (13, 4, (1, 1, 1)),
         (13, 6, (1, 1, 1)), (7, 3, (1, 1, 1, 1)), (7, 2, (-1, 1, 1, 1)), (31, 5, (1, 3, 7))]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["p", "m", "coeffs", "b", "re", "im", "angle", "weil"])
    for p, m, coeffs in CASES:
        s = FermatSurface.over(p, m, coeffs)
        prof = fermat_roots(s)
        verdict = verify_weil(prof).as_dict()["verdict"]
        for b, a in zip(prof.tuples, prof.roots):
            z = a / prof.expected_modulus
            w.writerow([p, m, " ".join(map(str, coeffs)), " ".join(map(str, b)),
                        f"{z.real:.12f}", f"{z.imag:.12f}", f"{np.angle(z):.12f}", verdict])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
