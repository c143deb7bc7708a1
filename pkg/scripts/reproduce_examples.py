"""Print the worked examples: line, F_7 quadric, quartic curve, X^2 + 1."""

from pathlib import Path

from fermatzeta import FermatSurface, count_points, fermat_roots, load_poly_system, reconstruct_rational
from fermatzeta.fermat import counts_from_roots
from fermatzeta.series import euler_product_series, orbit_counts, zeta_series

DATA = Path(__file__).resolve().parents[1] / "data"


def main():
    line = load_poly_system(DATA / "line_f5.poly")
    print("line X1 + X2 over F_5:", [count_points(line, s) for s in range(1, 5)])

    quadric = FermatSurface.over(7, 2, (-1, 1, 1, 1))
    prof = fermat_roots(quadric)
    brute = [count_points(quadric.to_poly_system(), s) for s in (1, 2)]
    print("quadric over F_7: brute", brute, "from roots", [counts_from_roots(prof, s) for s in (1, 2)],
          "roots", prof.roots)

    quartic = FermatSurface.over(5, 4, (1, 1, 1))
    prof = fermat_roots(quartic, order=4)
    rz = reconstruct_rational(prof)
    print("quartic over F_5: P(T) =", rz.p_coeffs, "N_1..4 =", prof.counts)

    for p in (2, 3, 5):
        system = load_poly_system(DATA / f"gauss_f{p}.poly")
        counts = [count_points(system, s) for s in range(1, 7)]
        b = orbit_counts(counts)
        same = euler_product_series(b) == zeta_series(counts)
        print(f"X^2 + 1 over F_{p}: N = {counts}, orbits = {b}, Euler product matches: {same}")


if __name__ == "__main__":
    main()
