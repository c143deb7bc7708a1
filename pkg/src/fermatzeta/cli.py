"""Command-line front end.

Subcommands: count, zeta, simulate, qpe, estimate, orbits.  Every report is a
single JSON document (or CSV rows with a header) that embeds the resolved
configuration.  Exit codes: 0 success, 2 invalid input, 3 numerical
inconsistency, 4 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import (
    EnumerationCapExceeded,
    FieldTooLarge,
    ResidualTooLarge,
    StateTooLarge,
    ZetaError,
)
from .fermat import FermatSurface, fermat_roots, normalized_phase, reconstruct_rational, verify_weil
from .field import field_create
from .qsim import approx_count, circular_distance, phase_estimation, sample_phases, simulate_algorithm1
from .series import euler_product_series, orbit_counts, zeta_series
from .varieties import DEFAULT_CAP, PolySystem, count_points, load_poly_system

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_CAP = 0, 2, 3, 4
PHASE_TOL = 1e-6


class ValidationError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    p: int | None = None
    r: int = 1
    m: int | None = None
    coeffs: list | None = None
    n: int | None = None
    s: list[int] = field(default_factory=lambda: [1])
    order: int | None = None
    samples: int | None = None
    shots: int = 15
    t_bits: int = 8
    seed: int = 0
    cap: int = DEFAULT_CAP
    exhaustive: bool = False
    b: list[int] | None = None
    file: str | None = None
    diag: bool = False
    fmt: str = "json"
    out: str | None = None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _coeff_list(text: str) -> list:
    """Comma-separated coefficients; an element of F_{p^r} may be given as c0:c1:..."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append([int(x) for x in tok.split(":")] if ":" in tok else int(tok))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad coefficient {tok!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    g = shared.add_argument_group("equation")
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--r", type=int, default=1, help="extension degree of the base field (q = p^r)")
    g.add_argument("--m", type=int, help="degree of the diagonal equation")
    g.add_argument("--coeffs", type=_coeff_list, help="c_0,...,c_n (negative values reduced mod p)")
    g.add_argument("--n", type=int, help="index bound n (n+1 variables); inferred from --coeffs")
    g.add_argument("--diag", action="store_true", help="diagonal equation given by flags")
    g.add_argument("--file", help="polynomial system file")
    g = shared.add_argument_group("run")
    g.add_argument("--s", type=_int_list, default=[1], help="extension indices, e.g. 1,2")
    g.add_argument("--order", type=int, help="series order S")
    g.add_argument("--samples", type=int, help="sampled tuples (estimate/simulate) or shots (qpe)")
    g.add_argument("--shots", type=int, default=15, help="measurement shots per phase estimation")
    g.add_argument("--t-bits", dest="t_bits", type=int, default=8, help="ancilla qubits")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    g.add_argument("--exhaustive", action="store_true", help="use every tuple instead of sampling")
    g.add_argument("--b", type=_int_list, help="tuple b_0,...,b_n for qpe")
    fmt = shared.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    shared.add_argument("--out", help="write the report here instead of stdout")
    shared.set_defaults(fmt="json")

    parser = argparse.ArgumentParser(prog="fermatzeta", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("count", parents=[shared], help="brute-force point counts N_s")
    sub.add_parser("zeta", parents=[shared], help="Zeta function of a diagonal hypersurface")
    sub.add_parser("simulate", parents=[shared], help="circuit phases vs Gauss-sum phases")
    sub.add_parser("qpe", parents=[shared], help="phase estimation for one tuple")
    sub.add_parser("estimate", parents=[shared], help="approximate N_s from estimated phases")
    sub.add_parser("orbits", parents=[shared], help="orbit counts and Euler-product check")
    return parser


def _fix_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-1,1,1" as an option; glue it to its flag
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in ("--coeffs", "--b") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def parse_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(_fix_negative_values(argv))
    cfg = RunConfig(**vars(ns))
    validate(cfg)
    return cfg


def validate(cfg: RunConfig):
    def need(cond, msg):
        if not cond:
            raise ValidationError(msg)

    need(all(s >= 1 for s in cfg.s) and cfg.s, "--s entries must be >= 1")
    need(cfg.order is None or cfg.order >= 1, "--order must be >= 1")
    need(cfg.t_bits >= 1, "--t-bits must be >= 1")
    need(cfg.shots >= 1, "--shots must be >= 1")
    need(cfg.samples is None or cfg.samples >= 1, "--samples must be >= 1")
    need(cfg.cap >= 1, "--cap must be >= 1")
    uses_file = cfg.file is not None
    if cfg.subcommand in ("count", "orbits"):
        need(uses_file != bool(cfg.diag), "give exactly one of --file or --diag")
    else:
        need(not uses_file, f"{cfg.subcommand} works on diagonal equations given by flags")
    if not uses_file:
        need(cfg.p is not None and cfg.m is not None and cfg.coeffs, "--p, --m and --coeffs are required")
        need(cfg.r >= 1, "--r must be >= 1")
        need(cfg.m >= 2, "--m must be >= 2")
        need(len(cfg.coeffs) >= 2, "need at least two coefficients")
        if cfg.n is None:
            cfg.n = len(cfg.coeffs) - 1
        need(cfg.n == len(cfg.coeffs) - 1, f"--n {cfg.n} does not match {len(cfg.coeffs)} coefficients")
    if cfg.subcommand == "qpe":
        need(cfg.b is not None, "qpe needs --b")
    if cfg.subcommand == "orbits" and cfg.order is None:
        cfg.order = 4


# ---------------------------------------------------------------------------

def _surface(cfg: RunConfig) -> FermatSurface:
    return FermatSurface.over(cfg.p, cfg.m, cfg.coeffs, cfg.r)


def _diag_system(cfg: RunConfig) -> PolySystem:
    ctx = field_create(cfg.p, cfg.r)
    nv = cfg.n + 1
    poly = {}
    for i, c in enumerate(cfg.coeffs):
        exps = [0] * nv
        exps[i] = cfg.m
        poly[tuple(exps)] = ctx(c)
    return PolySystem(ctx, nv, (poly,), projective=True)


def _system(cfg: RunConfig) -> PolySystem:
    return load_poly_system(cfg.file) if cfg.file else _diag_system(cfg)


def _theta(z: complex) -> float:
    return float(np.angle(z) % (2 * np.pi))


def cmd_count(cfg: RunConfig) -> dict:
    system = _system(cfg)
    rows = [{"s": s, "N_s": count_points(system, s, cap=cfg.cap)} for s in cfg.s]
    return {"rows": rows, "summary": {"nvars": system.nvars, "projective": system.projective}}


def cmd_zeta(cfg: RunConfig) -> dict:
    surface = _surface(cfg)
    prof = fermat_roots(surface)
    rz = reconstruct_rational(prof)
    weil = verify_weil(prof)
    rows = []
    for j, (b, a) in enumerate(zip(prof.tuples, prof.roots)):
        rows.append(
            {
                "j": j,
                "b": list(b),
                "re": a.real,
                "im": a.imag,
                "modulus": abs(a),
                "phase": _theta(a),
            }
        )
    summary = {
        "p_coeffs": list(rz.p_coeffs),
        "p_position": "numerator" if rz.p_in_numerator else "denominator",
        "trivial_factors": [f"1-{a}T" for a in rz.trivial_factors],
        "root_count": len(prof.roots),
        "weil": weil.as_dict(),
    }
    if cfg.order:
        counts = [int(c) for c in prof.with_counts(cfg.order).counts]
        series = rz.series(cfg.order)
        summary["counts"] = counts
        summary["series"] = [str(c) for c in series.coeffs]
        summary["series_consistent"] = series == zeta_series(counts)
    status = "ok" if weil.passed else "fail"
    return {"rows": rows, "summary": summary, "status": status}


def cmd_simulate(cfg: RunConfig) -> dict:
    surface = _surface(cfg)
    tuples = surface.tuples()
    if cfg.samples is not None and cfg.samples < len(tuples):
        rng = np.random.default_rng(cfg.seed)
        pick = sorted(rng.choice(len(tuples), size=cfg.samples, replace=False))
        tuples = [tuples[k] for k in pick]
    rows = []
    worst = 0.0
    for b in tuples:
        run = simulate_algorithm1(surface, b)
        th_sim = _theta(run.phase)
        th_cls = _theta(normalized_phase(surface, b))
        delta = circular_distance(th_sim, th_cls)
        worst = max(worst, delta, 1 - run.overlap)
        rows.append(
            {
                "b": list(b),
                "theta_sim": th_sim,
                "theta_classical": th_cls,
                "delta": delta,
                "overlap": run.overlap,
            }
        )
    status = "ok" if worst < PHASE_TOL else "fail"
    return {"rows": rows, "summary": {"max_delta": worst, "tuples": len(rows)}, "status": status}


def cmd_qpe(cfg: RunConfig) -> dict:
    surface = _surface(cfg)
    shots = cfg.samples or cfg.shots
    est = phase_estimation(surface, cfg.b, cfg.t_bits, shots=shots, seed=cfg.seed)
    true = _theta(normalized_phase(surface, cfg.b))
    grid = 2 * math.pi / 2**cfg.t_bits
    rows = []
    for i, k in enumerate(est.outcomes):
        th = 2 * math.pi * k / 2**cfg.t_bits
        rows.append({"shot": i, "k": k, "theta": th, "within_grid": circular_distance(th, true) < grid})
    hits = sum(r["within_grid"] for r in rows)
    summary = {
        "theta_hat": est.theta_hat,
        "theta_true": true,
        "distance": circular_distance(est.theta_hat, true),
        "grid": grid,
        "hit_fraction": hits / len(rows),
    }
    return {"rows": rows, "summary": summary}


def cmd_estimate(cfg: RunConfig) -> dict:
    surface = _surface(cfg)
    phases = sample_phases(
        surface,
        samples=cfg.samples or 16,
        t_bits=cfg.t_bits,
        seed=cfg.seed,
        exhaustive=cfg.exhaustive,
        shots=cfg.shots,
    )
    system = surface.to_poly_system()
    rows = []
    for s in cfg.s:
        est = approx_count(surface, s, phases=phases)
        row = est.as_dict()
        row["trace_re"] = float(row["trace_re"])
        row["trace_im"] = float(row["trace_im"])
        row["N_s_exact"] = count_points(system, s, cap=cfg.cap) if system.enumeration_size(s) <= cfg.cap else None
        rows.append(row)
    return {"rows": rows, "summary": {"dim": phases.dim, "phases_sampled": len(phases.thetas)}}


def cmd_orbits(cfg: RunConfig) -> dict:
    system = _system(cfg)
    S = cfg.order
    counts = [count_points(system, s, cap=cfg.cap) for s in range(1, S + 1)]
    raw = orbit_counts(counts, check=False)
    ok = all(b.denominator == 1 and b >= 0 for b in raw)
    rows = [{"d": d, "N_d": counts[d - 1], "b_d": str(b) if b.denominator != 1 else int(b)} for d, b in enumerate(raw, 1)]
    summary = {"counts": counts, "verdict": "fail"}
    if ok:
        euler = euler_product_series([int(b) for b in raw], S)
        series = zeta_series(counts)
        summary["series"] = [str(c) for c in series.coeffs]
        ok = euler == series
    summary["verdict"] = "pass" if ok else "fail"
    return {"rows": rows, "summary": summary, "status": "ok" if ok else "fail"}


COMMANDS = {
    "count": cmd_count,
    "zeta": cmd_zeta,
    "simulate": cmd_simulate,
    "qpe": cmd_qpe,
    "estimate": cmd_estimate,
    "orbits": cmd_orbits,
}


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    raise TypeError(f"cannot serialize {type(x)}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=_jsonable) + "\n"
    rows = report["rows"]
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, list) else v for k, v in row.items()})
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[dict, int]:
    body = COMMANDS[cfg.subcommand](cfg)
    report = {
        "command": cfg.subcommand,
        "version": __version__,
        "config": {k: v for k, v in asdict(cfg).items() if k not in ("fmt", "out")},
        "status": body.get("status", "ok"),
        "rows": body["rows"],
        "summary": body.get("summary", {}),
    }
    code = EXIT_OK if report["status"] == "ok" else EXIT_NUMERIC
    return report, code


def _error_report(exc, code) -> str:
    return json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
    except ValidationError as exc:
        sys.stderr.write(_error_report(exc, EXIT_INVALID))
        return EXIT_INVALID
    except SystemExit as exc:  # argparse
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        report, code = run(cfg)
    except (EnumerationCapExceeded, StateTooLarge, FieldTooLarge) as exc:
        sys.stderr.write(_error_report(exc, EXIT_CAP))
        return EXIT_CAP
    except (ResidualTooLarge, ArithmeticError) as exc:
        sys.stderr.write(_error_report(exc, EXIT_NUMERIC))
        return EXIT_NUMERIC
    except (ZetaError, ValueError, OSError) as exc:
        sys.stderr.write(_error_report(exc, EXIT_INVALID))
        return EXIT_INVALID
    text = render(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
