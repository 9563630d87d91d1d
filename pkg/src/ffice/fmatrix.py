"""Permutation graphs, F-matrices, column operators and their conjugated closed forms.

Everything here works over a :class:`SiteContext`: one spectral parameter
and one ice type (``+1`` Gamma, ``-1`` Delta) per tensor site.  The type-A
model uses all-Gamma sites; the type-C model uses ``2r`` alternating sites
with parameters ``(z_1^-1, z_1, ..., z_r^-1, z_r)``.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Sequence

from . import exactalg as ea
from .exactalg import ONE, U, RatFun
from .perm import Permutation
from .tensorops import (
    CoVec,
    LinOp,
    Vec,
    apply,
    bit,
    co_apply,
    index_to_word,
    r_matrix,
    word_to_index,
)
from .weights import DELTA, GAMMA, a2, b2, cap_weight, ordinary_weight

DEFAULT_MAX_N = 8


class LimitExceeded(RuntimeError):
    pass


class SingularDelta(ZeroDivisionError):
    """A diagonal entry of F F* vanishes, so F cannot be inverted."""


def max_n(default: int = DEFAULT_MAX_N) -> int:
    env = os.environ.get("FFICE_MAX_N")
    return int(env) if env else default


def _guard(n: int, limit: int | None) -> None:
    limit = max_n() if limit is None else limit
    if n > limit:
        raise LimitExceeded(f"N = {n} exceeds the limit {limit} (set FFICE_MAX_N to override)")


@dataclass(frozen=True)
class SiteContext:
    x: tuple[RatFun, ...]
    eps: tuple[int, ...]
    sqrt_v: RatFun = U
    # Square roots of the type-C parameters z_l, needed by the caps.
    w: tuple[RatFun, ...] | None = None

    def __post_init__(self):
        if len(self.x) != len(self.eps):
            raise ValueError("x and eps must have the same length")
        if any(e not in (GAMMA, DELTA) for e in self.eps):
            raise ValueError("eps entries must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def is_type_c(self) -> bool:
        return self.w is not None

    @property
    def r(self) -> int:
        return self.n // 2

    @classmethod
    def type_a(cls, n: int, z: Sequence[RatFun] | None = None, sqrt_v: RatFun = U) -> "SiteContext":
        z = tuple(ea.z(i) for i in range(1, n + 1)) if z is None else tuple(z)
        return cls(z, (GAMMA,) * n, sqrt_v)

    @classmethod
    def type_c(cls, r: int, w: Sequence[RatFun] | None = None, sqrt_v: RatFun = U) -> "SiteContext":
        """Alternating context with x = (z_1^-1, z_1, ...); ``w`` holds the square roots of z."""
        w = tuple(ea.w(i) for i in range(1, r + 1)) if w is None else tuple(w)
        x, eps = [], []
        for wl in w:
            zl = wl * wl
            x += [zl.inverse(), zl]
            eps += [GAMMA, DELTA]
        return cls(tuple(x), tuple(eps), sqrt_v, w)

    @classmethod
    def alternating(cls, n: int) -> "SiteContext":
        """Symbolic context with independent parameters z_1..z_N and eps = (+1, -1, +1, ...)."""
        return cls(tuple(ea.z(i) for i in range(1, n + 1)), tuple(GAMMA if k % 2 == 0 else DELTA for k in range(n)))

    def rmat(self, a: int, b: int) -> LinOp:
        return r_matrix(a, b, self.x[a - 1], self.x[b - 1], self.eps[a - 1], self.eps[b - 1], self.n, self.sqrt_v)

    def b2(self, a: int, b: int) -> RatFun:
        return b2(self.x[a - 1], self.x[b - 1], self.eps[a - 1], self.eps[b - 1], self.sqrt_v)

    def a2(self, a: int, b: int) -> RatFun:
        return a2(self.x[a - 1], self.x[b - 1], self.eps[a - 1], self.eps[b - 1], self.sqrt_v)


# -- index sets ------------------------------------------------------------


def index_set_I(rho: Permutation) -> set[tuple[int, ...]]:
    """Weakly decreasing 0/1 words, strictly decreasing at every descent of rho."""
    out = set()
    for k in itertools.product((0, 1), repeat=rho.n):
        ok = all(
            k[t] >= k[t + 1] and (rho(t + 1) < rho(t + 2) or k[t] > k[t + 1]) for t in range(rho.n - 1)
        )
        if ok:
            out.add(k)
    return out


def index_set_Iprime(rho: Permutation) -> set[tuple[int, ...]]:
    """Weakly increasing 0/1 words, strictly increasing at every ascent of rho."""
    out = set()
    for k in itertools.product((0, 1), repeat=rho.n):
        ok = all(
            k[t] <= k[t + 1] and (rho(t + 1) > rho(t + 2) or k[t] < k[t + 1]) for t in range(rho.n - 1)
        )
        if ok:
            out.add(k)
    return out


def _words_selected(rho: Permutation, allowed: set[tuple[int, ...]]) -> list[int]:
    """Indices of words i with (i_rho(1), ..., i_rho(N)) in ``allowed``."""
    n = rho.n
    out = []
    for k in allowed:
        word = [0] * n
        for t in range(n):
            word[rho(t + 1) - 1] = k[t]
        out.append(word_to_index(word))
    return sorted(out)


def sort_permutation(word: Sequence[int]) -> Permutation:
    """The unique rho with word[rho(1)] >= ... >= word[rho(N)], ties broken by increasing position."""
    n = len(word)
    order = sorted(range(1, n + 1), key=lambda t: (-word[t - 1], t))
    return Permutation(tuple(order))


def sort_permutation_star(word: Sequence[int]) -> Permutation:
    """The unique rho* with word[rho*(1)] <= ... <= word[rho*(N)], ties broken by decreasing position."""
    n = len(word)
    order = sorted(range(1, n + 1), key=lambda t: (word[t - 1], -t))
    return Permutation(tuple(order))


# -- permutation graphs ----------------------------------------------------


def graph_factors(rho1: Permutation, rho2: Permutation, word: Sequence[int] | None = None) -> list[tuple[int, int]]:
    """Site pairs (a, b) of the R_{a,b} factors of the permutation graph, left to right.

    ``word`` spells rho2^-1 * rho1 as s_{w1} * ... * s_{wl}; any spelling (reduced
    or not) is accepted, and a reduced one is chosen when omitted.
    """
    tau = rho2.inverse() * rho1
    if word is None:
        word = tau.reduced_word()
    check = Permutation.identity(rho1.n)
    for i in word:
        check = check * Permutation.transposition(i, rho1.n)
    if check != tau:
        raise ValueError(f"word {list(word)} does not spell {tau}")
    pi = rho2
    pairs = []
    for i in word:
        pairs.append((pi(i), pi(i + 1)))
        pi = pi * Permutation.transposition(i, rho1.n)
    return pairs


def permutation_graph(rho1: Permutation, rho2: Permutation, ctx: SiteContext, word: Sequence[int] | None = None) -> LinOp:
    op = LinOp.identity(ctx.n)
    for a, b in graph_factors(rho1, rho2, word):
        op = op @ ctx.rmat(a, b)
    return op


# -- F, F*, Delta ----------------------------------------------------------


def build_F(ctx: SiteContext, limit: int | None = None) -> LinOp:
    """Sum over rho of the I(rho)-projector on outputs times R_id^rho, assembled row by row."""
    _guard(ctx.n, limit)
    n = ctx.n
    ident = Permutation.identity(n)
    entries: dict[tuple[int, int], RatFun] = {}
    for rho in Permutation.all(n):
        rows = _words_selected(rho, index_set_I(rho))
        if not rows:
            continue
        factors = [ctx.rmat(a, b) for a, b in graph_factors(ident, rho)]
        for row in rows:
            y = CoVec(n, {row: ONE})
            for fac in factors:
                y = co_apply(y, fac)
            for col, val in y.comps.items():
                key = (row, col)
                entries[key] = entries[key] + val if key in entries else val
    return LinOp(n, {k: v for k, v in entries.items() if not v.is_zero()})


def build_Fstar(ctx: SiteContext, limit: int | None = None) -> LinOp:
    """Sum over rho of R_rho^id times the I'(rho)-projector on inputs, assembled column by column."""
    _guard(ctx.n, limit)
    n = ctx.n
    ident = Permutation.identity(n)
    entries: dict[tuple[int, int], RatFun] = {}
    for rho in Permutation.all(n):
        cols = _words_selected(rho, index_set_Iprime(rho))
        if not cols:
            continue
        factors = [ctx.rmat(a, b) for a, b in graph_factors(rho, ident)]
        for col in cols:
            x = Vec(n, {col: ONE})
            for fac in reversed(factors):
                x = apply(fac, x)
            for row, val in x.comps.items():
                key = (row, col)
                entries[key] = entries[key] + val if key in entries else val
    return LinOp(n, {k: v for k, v in entries.items() if not v.is_zero()})


def delta_entry(ctx: SiteContext, idx: int) -> RatFun:
    n = ctx.n
    word = index_to_word(idx, n)
    val = ONE
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a == b:
                continue
            if word[a - 1] == 1 and word[b - 1] == 0:
                val = val * ctx.b2(a, b)
            elif a < b and word[a - 1] == 1 and word[b - 1] == 1:
                val = val * ctx.a2(a, b)
    return val


def delta_diagonal(ctx: SiteContext, limit: int | None = None) -> LinOp:
    """Closed-form diagonal of F F*; raises SingularDelta if an entry vanishes."""
    _guard(ctx.n, limit)
    values = {}
    for idx in range(2**ctx.n):
        val = delta_entry(ctx, idx)
        if val.is_zero():
            raise SingularDelta(f"diagonal entry at {index_to_word(idx, ctx.n)} vanishes")
        values[idx] = val
    return LinOp.diagonal(ctx.n, values)


def f_inverse(ctx: SiteContext, limit: int | None = None) -> LinOp:
    """F^-1 = F* Delta^-1."""
    delta = delta_diagonal(ctx, limit)
    inv = LinOp.diagonal(ctx.n, {i: v.inverse() for (i, _), v in delta.entries.items()})
    return build_Fstar(ctx, limit) @ inv


# -- column operators ------------------------------------------------------


def column_operator(alpha: int, ctx: SiteContext, sigma: Permutation | None = None) -> LinOp:
    """Single-column transfer operator with bottom edge 0 and top edge ``alpha``.

    Vertex k (bottom to top) sits at tensor site sigma(k) and carries that
    site's ice type and parameter; its left edge is the output spin and its
    right edge the input spin of that site.
    """
    n = ctx.n
    sites = list(sigma) if sigma is not None else list(range(1, n + 1))
    entries: dict[tuple[int, int], RatFun] = {}

    def scan(k: int, below: int, out_idx: int, in_idx: int, weight: RatFun) -> None:
        if k == n:
            if below == alpha:
                key = (out_idx, in_idx)
                entries[key] = entries[key] + weight if key in entries else weight
            return
        site = sites[k]
        shift = n - site
        for left in (0, 1):
            for right in (0, 1):
                top = right + below - left
                if top not in (0, 1):
                    continue
                wt = ordinary_weight(ctx.eps[site - 1], ctx.x[site - 1], left, top, right, below, ctx.sqrt_v)
                if wt.is_zero():
                    continue
                scan(k + 1, top, out_idx | (left << shift), in_idx | (right << shift), weight * wt)

    scan(0, 0, 0, 0, ONE)
    return LinOp(n, {k: v for k, v in entries.items() if not v.is_zero()})


def conjugated_column(alpha: int, ctx: SiteContext) -> LinOp:
    """Closed form of F S^[alpha] F^-1 as a sum of tensor products of 2x2 diagonals."""
    n = ctx.n
    # b2 of a single ordinary vertex is its parameter for both ice types
    if alpha == 0:
        values = {}
        for idx in range(2**n):
            val = ONE
            for t in range(1, n + 1):
                if bit(idx, t, n):
                    val = val * ctx.x[t - 1]
            values[idx] = val
        return LinOp.diagonal(n, values)
    entries: dict[tuple[int, int], RatFun] = {}
    for m in range(1, n + 1):
        low = [ctx.b2(m, t).inverse() if t != m else None for t in range(1, n + 1)]
        high = [ctx.x[t - 1] / ctx.a2(m, t) if t > m else ctx.x[t - 1] for t in range(1, n + 1)]
        for idx in range(2**n):
            if bit(idx, m, n):
                continue
            val = ONE
            for t in range(1, n + 1):
                if t != m:
                    val = val * (high[t - 1] if bit(idx, t, n) else low[t - 1])
            key = (idx, idx | (1 << (n - m)))
            entries[key] = entries[key] + val if key in entries else val
    return LinOp(n, {k: v for k, v in entries.items() if not v.is_zero()})


def conjugate(op: LinOp, ctx: SiteContext, limit: int | None = None) -> LinOp:
    return build_F(ctx, limit) @ op @ f_inverse(ctx, limit)


# -- caps ------------------------------------------------------------------


def _require_type_c(ctx: SiteContext) -> None:
    if not ctx.is_type_c:
        raise ValueError("cap vectors need a type-C context")


def cap_vector(ctx: SiteContext) -> Vec:
    """K with components prod_l C(i_{2l-1}, i_{2l}; z_l)."""
    _require_type_c(ctx)
    r = ctx.r
    comps = {}
    for choice in itertools.product(((1, 0), (0, 1)), repeat=r):
        word = [s for pair_ in choice for s in pair_]
        val = ONE
        for l, (bottom, top) in enumerate(choice):
            val = val * cap_weight(bottom, top, ctx.x[2 * l + 1], ctx.sqrt_v)
        if not val.is_zero():
            comps[word_to_index(word)] = val
    return Vec(ctx.n, comps)


def fk_closed_form(ctx: SiteContext) -> Vec:
    """F K as a sum over sign vectors e in {+-1}^r.

    Sign +1 on pair l means spins (1, 0) on sites (2l-1, 2l) and sign -1
    means (0, 1).
    """
    _require_type_c(ctx)
    r, sv = ctx.r, ctx.sqrt_v
    z = [ctx.x[2 * l + 1] for l in range(r)]
    pref = ONE
    for wl in ctx.w:
        pref = pref / wl
    comps = {}
    for e in itertools.product((1, -1), repeat=r):
        val = pref
        for a in range(r):
            val = val * (z[a] ** (-e[a]) + sv) / (z[a].inverse() + sv)
        for a in range(r):
            for b in range(a + 1, r):
                val = val * b2(z[b] ** (-e[b]), z[a] ** e[a], e[b], -e[a], sv)
        word = [s for ea_ in e for s in ((1, 0) if ea_ == 1 else (0, 1))]
        if not val.is_zero():
            comps[word_to_index(word)] = val
    return Vec(ctx.n, comps)


def fk_components(ctx: SiteContext) -> Vec:
    """F K from the componentwise product formula, a second closed form."""
    _require_type_c(ctx)
    r, sv = ctx.r, ctx.sqrt_v
    n = ctx.n
    z = [ctx.x[2 * l + 1] for l in range(r)]
    zi = [ctx.x[2 * l] for l in range(r)]
    comps = {}
    for idx in range(2**n):
        word = index_to_word(idx, n)
        if any(word[2 * a] == word[2 * a + 1] for a in range(r)):
            continue
        val = ONE
        for wl in ctx.w:
            val = val / wl
        for a in range(r):
            if word[2 * a] == 0:
                val = val * (z[a] + sv) / (zi[a] + sv)
        for a in range(r):
            for b in range(a + 1, r):
                lo_a, hi_a = word[2 * a], word[2 * a + 1]
                lo_b, hi_b = word[2 * b], word[2 * b + 1]
                if lo_a and lo_b:
                    val = val * b2(zi[b], z[a], GAMMA, DELTA, sv)
                if lo_a and hi_b:
                    val = val * b2(z[b], z[a], DELTA, DELTA, sv)
                if hi_a and lo_b:
                    val = val * b2(zi[b], zi[a], GAMMA, GAMMA, sv)
                if hi_a and hi_b:
                    val = val * b2(z[b], zi[a], DELTA, GAMMA, sv)
        comps[idx] = val
    return Vec(n, comps)


def zero_covector(n: int) -> CoVec:
    return CoVec(n, {0: ONE})


def ones_vector(n: int) -> Vec:
    return Vec(n, {2**n - 1: ONE})
