"""Multiplicative characters of F_q and Gauss sums."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContextMismatch
from .field import FieldCtx, FieldElement


def root_of_unity(k, m: int):
    """exp(2 pi i k / m) with k reduced mod m first (works on arrays)."""
    k = np.mod(k, m)
    return np.exp(2j * np.pi * k / m)


@dataclass(frozen=True)
class Character:
    """chi^alpha(x) = w_{q-1}^(alpha * dlog x), chi^alpha(0) = 0."""

    alpha: int
    ctx: FieldCtx

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.alpha % (self.ctx.q - 1))

    @property
    def is_trivial(self) -> bool:
        return self.alpha == 0

    def __call__(self, x: FieldElement) -> complex:
        return char_eval(self, x)

    def __mul__(self, other: "Character") -> "Character":
        return char_mul(self, other)

    def __pow__(self, k: int) -> "Character":
        return Character(self.alpha * k, self.ctx)

    def inverse(self) -> "Character":
        return Character(-self.alpha, self.ctx)

    def values(self) -> np.ndarray:
        """chi(x) for every field code x, as a length-q complex array."""
        return _values(self.ctx, self.alpha)


def order_m_character(ctx: FieldCtx, m: int) -> Character:
    """The character chi^((q-1)/m), whose m-th power is trivial."""
    if (ctx.q - 1) % m:
        raise ValueError(f"m = {m} does not divide q - 1 = {ctx.q - 1}")
    return Character((ctx.q - 1) // m, ctx)


@lru_cache(maxsize=4096)
def _values(ctx: FieldCtx, alpha: int) -> np.ndarray:
    logs = ctx.log_table
    v = root_of_unity(alpha * logs, ctx.q - 1)
    v[0] = 0.0
    v.setflags(write=False)
    return v


def char_eval(chi: Character, x: FieldElement) -> complex:
    if x.ctx != chi.ctx:
        raise ContextMismatch("character and element live in different fields")
    if x.code == 0:
        return 0j
    return complex(root_of_unity(chi.alpha * int(chi.ctx.log_table[x.code]), chi.ctx.q - 1))


def char_mul(a: Character, b: Character) -> Character:
    if a.ctx != b.ctx:
        raise ContextMismatch("characters over different fields")
    return Character(a.alpha + b.alpha, a.ctx)


def gauss_sum(chi: Character) -> complex:
    """g(chi) = sum_x chi(x) w_p^Tr(x).  Memoized per (field, alpha)."""
    return _gauss_sum(chi.ctx, chi.alpha)


@lru_cache(maxsize=None)
def _gauss_sum(ctx: FieldCtx, alpha: int) -> complex:
    additive = root_of_unity(ctx.trace_table, ctx.p)
    return complex(np.sum(_values(ctx, alpha) * additive))
