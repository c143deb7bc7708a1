"""Polynomial systems over F_q and brute-force point counting.

Text format (one system per file)::

    # comments start with '#'
    p r projective|affine [vars=K]
    c*X0^a0*X1^a1 + c*X2 - X3^2
    ...

The header gives the characteristic, the extension degree of the base field
F_{p^r}, the point-set kind and optionally the number of variables K (default:
one more than the largest variable index used).  Each following non-blank line
is one polynomial.  A term is an optional integer coefficient followed by
``*``-separated factors ``Xi`` or ``Xi^e``; terms are joined by ``+``/``-``.
Coefficients are integers reduced mod p.  In projective mode every polynomial
must be homogeneous.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import EnumerationCapExceeded, PolyParseError
from .field import FieldCtx, field_create

DEFAULT_CAP = 10**8
CHUNK = 1 << 18

Poly = dict  # exponent tuple -> coefficient code in the base field


def projective_point_count(n: int, q: int) -> int:
    """|P^n(F_q)| = q^n + ... + q + 1."""
    if n < 0 or q < 2:
        raise ValueError("need n >= 0 and q >= 2")
    return sum(q**i for i in range(n + 1))


@dataclass(frozen=True)
class PolySystem:
    ctx: FieldCtx
    nvars: int
    polys: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]
    projective: bool = True

    def __post_init__(self):
        clean = []
        for poly in self.polys:
            items = poly.items() if isinstance(poly, dict) else poly
            terms = {}
            for exps, c in items:
                exps = tuple(int(e) for e in exps)
                if len(exps) != self.nvars:
                    raise ValueError(f"exponent vector {exps} has wrong length for {self.nvars} variables")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if isinstance(c, (int, np.integer)):
                    c = int(c) % self.ctx.p
                else:
                    self.ctx.check(c)
                    c = c.code
                if exps in terms:
                    c = int(self.ctx.add(terms[exps], c))
                terms[exps] = c
            clean.append(tuple(sorted((e, c) for e, c in terms.items() if c != 0)))
        object.__setattr__(self, "polys", tuple(clean))
        if self.projective:
            for i, poly in enumerate(self.polys):
                degs = {sum(e) for e, _ in poly}
                if len(degs) > 1:
                    raise ValueError(f"polynomial {i} is not homogeneous (degrees {sorted(degs)})")

    @property
    def n(self) -> int:
        """Projective dimension of the ambient space (nvars - 1)."""
        return self.nvars - 1

    def enumeration_size(self, s: int = 1) -> int:
        Q = self.ctx.q**s
        if self.projective:
            return projective_point_count(self.nvars - 1, Q)
        return Q**self.nvars

    def to_text(self) -> str:
        kind = "projective" if self.projective else "affine"
        lines = [f"{self.ctx.p} {self.ctx.r} {kind} vars={self.nvars}"]
        for poly in self.polys:
            terms = []
            for exps, c in poly:
                coef = self.ctx.coeffs(c)
                if any(coef[1:]):
                    raise ValueError("only prime-field coefficients can be written as text")
                factors = [str(coef[0])]
                factors += [f"X{i}" if e == 1 else f"X{i}^{e}" for i, e in enumerate(exps) if e]
                terms.append("*".join(factors))
            lines.append(" + ".join(terms) if terms else "0")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>X(?P<idx>\d+))|(?P<op>[-+*^]))")


def _parse_poly(text: str, lineno: int):
    """Parse one polynomial line into a list of (coef, {var: exp}) terms."""
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise PolyParseError(f"unexpected character {text[col - 1]!r}", lineno, col)
        col = m.start() + len(m.group(0)) - len(m.group(0).lstrip()) + 1
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), col))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("idx")), col))
        else:
            tokens.append(("op", m.group("op"), col))
        pos = m.end()

    terms = []
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def fail(msg, tok=None):
        col = tok[2] if tok else len(text) + 1
        raise PolyParseError(msg, lineno, col)

    if not tokens:
        fail("empty polynomial")
    while i < len(tokens):
        sign = 1
        while peek() and peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            i += 1
        coef = None
        exps: dict[int, int] = {}
        expect_factor = True
        while expect_factor:
            tok = peek()
            if tok is None:
                fail("expected a coefficient or variable")
            if tok[0] == "num":
                if coef is not None:
                    fail("second coefficient in one term", tok)
                coef = tok[1]
                i += 1
            elif tok[0] == "var":
                var = tok[1]
                i += 1
                e = 1
                if peek() and peek()[:2] == ("op", "^"):
                    i += 1
                    etok = peek()
                    if etok is None or etok[0] != "num":
                        fail("expected an exponent after '^'", etok)
                    e = etok[1]
                    i += 1
                exps[var] = exps.get(var, 0) + e
            else:
                fail(f"unexpected {tok[1]!r}", tok)
            if peek() and peek()[:2] == ("op", "*"):
                i += 1
            else:
                expect_factor = False
        tok = peek()
        if tok is not None and not (tok[0] == "op" and tok[1] in "+-"):
            fail(f"expected '+' or '-', got {tok[1]!r}", tok)
        terms.append((sign * (1 if coef is None else coef), exps))
    return terms


def parse_poly_system(text: str) -> PolySystem:
    header = None
    raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if header is None:
            header = (lineno, body)
        else:
            raw.append((lineno, body))
    if header is None:
        raise PolyParseError("missing header 'p r projective|affine'", 1, 1)

    lineno, body = header
    fields = body.split()
    if len(fields) not in (3, 4):
        raise PolyParseError("header must be 'p r projective|affine [vars=K]'", lineno, 1)
    try:
        p, r = int(fields[0]), int(fields[1])
    except ValueError:
        raise PolyParseError("p and r must be integers", lineno, 1) from None
    if fields[2] not in ("projective", "affine"):
        col = body.index(fields[2]) + 1
        raise PolyParseError(f"expected 'projective' or 'affine', got {fields[2]!r}", lineno, col)
    nvars = None
    if len(fields) == 4:
        m = re.fullmatch(r"vars=(\d+)", fields[3])
        if not m:
            raise PolyParseError("expected vars=K", lineno, body.index(fields[3]) + 1)
        nvars = int(m.group(1))

    parsed = [(ln, _parse_poly(b, ln)) for ln, b in raw]
    used = max((v for _, terms in parsed for _, ex in terms for v in ex), default=-1) + 1
    if nvars is None:
        nvars = used
    elif used > nvars:
        raise PolyParseError(f"variable X{used - 1} exceeds vars={nvars}", lineno, 1)
    if nvars < 1:
        raise PolyParseError("system has no variables; give vars=K in the header", lineno, 1)

    ctx = field_create(p, r)
    polys = []
    for ln, terms in parsed:
        poly: dict = {}
        for c, ex in terms:
            key = tuple(ex.get(v, 0) for v in range(nvars))
            poly[key] = (poly.get(key, 0) + c) % p
        polys.append(poly)
        if fields[2] == "projective":
            degs = {sum(k) for k, c in poly.items() if c}
            if len(degs) > 1:
                raise PolyParseError(f"polynomial is not homogeneous (degrees {sorted(degs)})", ln, 1)
    return PolySystem(ctx, nvars, tuple(polys), projective=fields[2] == "projective")


def load_poly_system(path) -> PolySystem:
    with open(path) as fh:
        return parse_poly_system(fh.read())


# ---------------------------------------------------------------------------
# counting

def _blocks(nvars: int, projective: bool, Q: int):
    """(leading zeros, number of free trailing coordinates, size) per block."""
    if not projective:
        return [(None, nvars, Q**nvars)]
    return [(k, nvars - 1 - k, Q ** (nvars - 1 - k)) for k in range(nvars)]


def _count_chunk(big: FieldCtx, polys, nvars, lead, nfree, lo, hi) -> int:
    Q = big.q
    idx = np.arange(lo, hi, dtype=np.int64)
    coords: list = [None] * nvars
    for j in range(nfree - 1, -1, -1):
        idx, d = np.divmod(idx, Q)
        coords[nvars - nfree + j] = d
    if lead is not None:
        for j in range(lead):
            coords[j] = 0
        coords[lead] = 1
    size = hi - lo
    ok = np.ones(size, dtype=bool)
    logs = [big.log_table[c] if isinstance(c, np.ndarray) else None for c in coords]
    for terms in polys:
        total = np.zeros(size, dtype=np.int64)
        for exps, c in terms:
            if any(e and isinstance(coords[v], int) and coords[v] == 0 for v, e in enumerate(exps)):
                continue
            lsum = np.full(size, int(big.log_table[c]), dtype=np.int64)
            zero = np.zeros(size, dtype=bool)
            for v, e in enumerate(exps):
                if e and logs[v] is not None:
                    lsum += e * logs[v]
                    zero |= coords[v] == 0
            val = np.where(zero, 0, big.exp_table[lsum % (Q - 1)])
            total = big.add(total, val)
        ok &= total == 0
        if not ok.any():
            break
    return int(np.count_nonzero(ok))


def count_points(system: PolySystem, s: int = 1, *, cap: int = DEFAULT_CAP, workers: int = 1) -> int:
    """Exact number of points of the system over F_{q^s}.

    Projective systems are enumerated over canonical representatives (first
    nonzero coordinate equal to 1); affine systems over all of F_{q^s}^K.
    The chunk partition is fixed, so the result does not depend on ``workers``.
    """
    if s < 1:
        raise ValueError("extension index s must be >= 1")
    estimate = system.enumeration_size(s)
    if estimate > cap:
        raise EnumerationCapExceeded(estimate, cap)
    big = field_create(system.ctx.p, system.ctx.r * s)
    emb = system.ctx.embedding_into(big)
    polys = [[(exps, int(emb[c])) for exps, c in poly] for poly in system.polys]

    jobs = []
    for lead, nfree, size in _blocks(system.nvars, system.projective, big.q):
        for lo in range(0, size, CHUNK):
            jobs.append((lead, nfree, lo, min(lo + CHUNK, size)))

    def run(job):
        return _count_chunk(big, polys, system.nvars, *job)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(run, jobs))
    return sum(map(run, jobs))
