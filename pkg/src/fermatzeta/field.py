"""Finite fields F_{p^r} in a polynomial basis with table-driven arithmetic.

Elements are encoded as integers ``v = c_0 + c_1 p + ... + c_{r-1} p^{r-1}``
where ``c_i`` are the coordinates in the basis ``1, t, ..., t^{r-1}``.  The
vectorized methods on :class:`FieldCtx` operate on numpy arrays of such codes;
:class:`FieldElement` wraps a single code for scalar work.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    ContextMismatch,
    DivisionByZero,
    DlogOfZero,
    FieldTooLarge,
    NotPrime,
)

MAX_FIELD_SIZE = 2**20


# ---------------------------------------------------------------------------
# small integer helpers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomials over F_p, coefficient lists low -> high

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = [x % p for x in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmulmod(a, b, f, p):
    return _pmod(_pmul(a, b, p), f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(list(a), f, p)
    while e > 0:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial f over F_p (Rabin's test).

    Also rejects any f with a root in F_p up front; that alone settles
    degrees 2 and 3.
    """
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    for x in range(p):
        if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    xpoly = [0, 1]
    if _psub(_ppowmod(xpoly, p**r, f, p), xpoly, p) != []:
        return False
    for ell in prime_factors(r):
        h = _psub(_ppowmod(xpoly, p ** (r // ell), f, p), xpoly, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _coeffs_of(v: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        v, c = divmod(v, p)
        out.append(c)
    return out


def _code_of(coeffs, p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r over F_p.

    Candidates are ordered by the base-p numeral c_{r-1}...c_1 c_0 of their
    non-leading coefficients.  Returned as (c_0, ..., c_{r-1}, 1).
    """
    for v in range(p**r):
        f = _coeffs_of(v, p, r) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {r} over F_{p}")


# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False, repr=False)
class FieldCtx:
    """Immutable description of F_{p^r}.

    ``exp_table[k]`` is the code of ``generator**k`` and ``log_table[v]`` the
    discrete log of code ``v`` (``-1`` at zero).  Both arrays are read-only.
    """

    p: int
    r: int
    modulus: tuple[int, ...]
    generator: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    trace_basis: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def key(self) -> tuple:
        return (self.p, self.r, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, r={self.r}, modulus={list(self.modulus)}, generator={self.coeffs(self.generator)})"

    # -- scalar construction ------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Element from an integer (reduced mod p into F_p) or a coefficient list."""
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.r:
            raise ValueError(f"expected at most {self.r} coefficients, got {len(coeffs)}")
        return FieldElement(self, _code_of(coeffs, self.p))

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for F_{self.q}")
        return FieldElement(self, int(code))

    def elements(self):
        for v in range(self.q):
            yield FieldElement(self, v)

    def coeffs(self, code: int) -> tuple[int, ...]:
        return tuple(_coeffs_of(int(code), self.p, self.r))

    @property
    def gen(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    def check(self, x: "FieldElement"):
        if x.ctx is not self and x.ctx != self:
            raise ContextMismatch(f"element of F_{x.ctx.q} used in F_{self.q}")

    # -- vectorized arithmetic on codes -------------------------------------

    def digits(self, a) -> np.ndarray:
        """Coordinates of codes, shape ``a.shape + (r,)``."""
        a = np.asarray(a, dtype=np.int64)
        pw = self.p ** np.arange(self.r, dtype=np.int64)
        return (a[..., None] // pw) % self.p

    def from_digits(self, d) -> np.ndarray:
        pw = self.p ** np.arange(self.r, dtype=np.int64)
        return (np.asarray(d, dtype=np.int64) % self.p) @ pw

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.r):
            out += ((a // pw + b // pw) % self.p) * pw
            pw *= self.p
        return out

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.r == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        pw = 1
        for _ in range(self.r):
            out += ((-(a // pw)) % self.p) * pw
            pw *= self.p
        return out

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log_table[a], self.log_table[b]
        prod = self.exp_table[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def pow(self, a, e: int) -> np.ndarray:
        """Elementwise a**e; 0**0 == 1, 0**e == 0 for e > 0."""
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones(a.shape, dtype=np.int64)
        if e < 0 and np.any(a == 0):
            raise DivisionByZero("negative power of zero")
        la = self.log_table[a]
        out = self.exp_table[(la * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def inv(self, a) -> np.ndarray:
        return self.pow(a, -1)

    def trace_codes(self, a) -> np.ndarray:
        """Tr(a) as residues in [0, p), using linearity over the basis."""
        tb = np.asarray(self.trace_basis, dtype=np.int64)
        return (self.digits(a) @ tb) % self.p

    @property
    def trace_table(self) -> np.ndarray:
        return _trace_table(self)

    # -- embedding ------------------------------------------------------------

    def embedding_into(self, big: "FieldCtx") -> np.ndarray:
        """Code map of a field embedding F_q -> F_Q (requires r | R, same p).

        t is sent to the smallest-code root of this field's modulus in the big
        field, so the map is deterministic.
        """
        return _embedding(self, big)

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "r": self.r,
                "modulus": list(self.modulus),
                "generator": list(self.coeffs(self.generator)),
            }
        )


@lru_cache(maxsize=None)
def _trace_table(ctx: FieldCtx) -> np.ndarray:
    t = ctx.trace_codes(np.arange(ctx.q))
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def _embedding(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    if small.p != big.p or big.r % small.r != 0:
        raise ContextMismatch(f"F_{small.q} does not embed in F_{big.q}")
    if small.r == 1:
        out = np.arange(small.q, dtype=np.int64)
        out.setflags(write=False)
        return out
    # find the smallest root of small.modulus among big-field codes
    xs = np.arange(big.q, dtype=np.int64)
    val = np.zeros(big.q, dtype=np.int64)
    for c in reversed(small.modulus):
        val = big.add(big.mul(val, xs), c)
    root = int(np.flatnonzero(val == 0)[0])
    powers = [1]
    for _ in range(small.r - 1):
        powers.append(int(big.mul(powers[-1], root)))
    digs = small.digits(np.arange(small.q))
    out = np.zeros(small.q, dtype=np.int64)
    for i, rho_i in enumerate(powers):
        out = big.add(out, big.mul(digs[:, i], rho_i))
    out.setflags(write=False)
    return out


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A single element of a FieldCtx, stored by its integer code."""

    ctx: FieldCtx
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.code)

    def __repr__(self):
        if self.ctx.r == 1:
            return f"F{self.ctx.q}({self.code})"
        return f"F{self.ctx.q}({list(self.coeffs)})"

    def _other(self, y) -> "FieldElement":
        if isinstance(y, FieldElement):
            self.ctx.check(y)
            return y
        if isinstance(y, (int, np.integer)):
            return self.ctx(int(y))
        return NotImplemented

    def __eq__(self, y):
        if isinstance(y, (int, np.integer)):
            return self.code == int(y) % self.ctx.p and self.code < self.ctx.p
        if isinstance(y, FieldElement):
            return self.ctx == y.ctx and self.code == y.code
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.code))

    def __bool__(self):
        return self.code != 0

    def __add__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return FieldElement(self.ctx, int(self.ctx.add(self.code, y.code)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, int(self.ctx.neg(self.code)))

    def __sub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return FieldElement(self.ctx, int(self.ctx.mul(self.code, y.code)))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if self.code == 0:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self.ctx, int(self.ctx.pow(self.code, -1)))

    def __truediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self * y.inv()

    def __rtruediv__(self, y):
        return self.inv() * y

    def __pow__(self, e: int):
        """Repeated squaring; negative exponents power the inverse."""
        if e < 0:
            return self.inv() ** (-e)
        result = FieldElement(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def trace(self) -> int:
        return trace(self)

    def dlog(self) -> int:
        return dlog(self)


def trace(x: FieldElement) -> int:
    """Absolute trace Tr(x) = x + x^p + ... + x^{p^{r-1}}, as a residue mod p."""
    return int(x.ctx.trace_codes(x.code))


def dlog(x: FieldElement) -> int:
    if x.code == 0:
        raise DlogOfZero("discrete log of zero")
    return int(x.ctx.log_table[x.code])


def _mult_matrix(a: list[int], f: list[int], p: int, r: int) -> np.ndarray:
    """Matrix over F_p of y -> a*y in the polynomial basis."""
    cols = []
    for j in range(r):
        col = _pmulmod(a, [0] * j + [1], f, p)
        cols.append(col + [0] * (r - len(col)))
    return np.array(cols, dtype=np.int64).T


def _power_table(g: list[int], f: list[int], p: int, r: int, n: int) -> np.ndarray:
    """Coordinates of g^0 .. g^{n-1}, shape (n, r), built block by block."""
    block = min(n, 1024)
    mg = _mult_matrix(g, f, p, r)
    rows = np.zeros((block, r), dtype=np.int64)
    rows[0, 0] = 1
    for k in range(1, block):
        rows[k] = (mg @ rows[k - 1]) % p
    out = np.zeros((n, r), dtype=np.int64)
    out[:block] = rows
    if block < n:
        gb = _ppowmod(g, block, f, p)
        mb = _mult_matrix(gb, f, p, r).T
        start = block
        while start < n:
            rows = (rows @ mb) % p
            stop = min(start + block, n)
            out[start:stop] = rows[: stop - start]
            start = stop
    return out


@lru_cache(maxsize=None)
def field_create(p: int, r: int = 1) -> FieldCtx:
    """Deterministically build F_{p^r}.

    The modulus is the smallest monic irreducible of degree r and the
    generator the smallest-code element of order q - 1.  Results are cached,
    so equal arguments return the same object.
    """
    if r < 1:
        raise ValueError(f"extension degree must be >= 1, got {r}")
    if not is_prime(p):
        raise NotPrime(p)
    q = p**r
    if q > MAX_FIELD_SIZE:
        raise FieldTooLarge(q, MAX_FIELD_SIZE)
    f = list(smallest_irreducible(p, r))
    n = q - 1
    factors = prime_factors(n)
    gen = None
    for v in range(1, q):
        g = _trim(_coeffs_of(v, p, r))
        if all(_ppowmod(g, n // ell, f, p) != [1] for ell in factors):
            gen = v
            break
    assert gen is not None
    g = _trim(_coeffs_of(gen, p, r))

    coords = _power_table(g, f, p, r, n)
    exp_table = coords @ (p ** np.arange(r, dtype=np.int64))
    log_table = np.full(q, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(n, dtype=np.int64)
    if np.any(log_table[1:] < 0):
        raise AssertionError("generator does not span the multiplicative group")

    trace_basis = []
    for i in range(r):
        ti = [0] * i + [1]
        acc: list[int] = []
        for k in range(r):
            acc = _psub(acc, [(-c) % p for c in _ppowmod(ti, p**k, f, p)], p)
        # Tr lands in F_p, so only the constant coordinate can be nonzero
        assert len(acc) <= 1
        trace_basis.append(acc[0] if acc else 0)

    exp_table.setflags(write=False)
    log_table.setflags(write=False)
    return FieldCtx(
        p=p,
        r=r,
        modulus=tuple(f),
        generator=gen,
        exp_table=exp_table,
        log_table=log_table,
        trace_basis=tuple(trace_basis),
    )
