"""Lattice models, partition-function engines and the closed-form right-hand sides.

Two model families are supported:

* type A: ``N`` rows of Gamma ice (row ``i`` at ``z_i``, rows counted from the
  bottom), ``lambda_1 + N`` columns labelled ``0, 1, ...`` from the right.
  Left and bottom boundaries are ``+``, the right boundary is ``-`` and the
  top carries ``-`` at the columns ``lambda_i + N - i``.
* type C: ``2r`` rows alternating Gamma (at ``z_l^-1``) and Delta (at ``z_l``),
  ``lambda_1 + r`` columns labelled ``1/2, 3/2, ...`` from the right, each
  Gamma/Delta row pair joined on the right by a cap at ``z_l``.  Labels are
  stored as the integer ``j`` standing for ``j + 1/2``.

Four engines compute the same partition function: a pruned edge scan, a
row-transfer dynamic program, a product of column operators, and the
F-matrix conjugated closed forms.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactalg as ea
from .exactalg import ONE, U, ZERO, RatFun
from .fmatrix import (
    SingularDelta,
    SiteContext,
    cap_vector,
    column_operator,
    conjugated_column,
    fk_closed_form,
    ones_vector,
)
from .perm import Permutation, SignedPermutation
from .tensorops import apply
from .weights import DELTA, GAMMA, PATTERN_OF, cap_weight, ordinary_table, ordinary_weight

ENUMERATE_MAX_EDGES = 40
TRANSFER_MAX_COLS = 16
COLUMN_MAX_N = 12


class TooLarge(RuntimeError):
    pass


class SingularSpecialization(ValueError):
    """The numeric point makes a closed form divide by zero."""


def _limit(default: int) -> int:
    env = os.environ.get("FFICE_MAX_N")
    return max(default, int(env)) if env else default


# -- shapes and specs ------------------------------------------------------


def normalize_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"partition parts must be nonnegative: {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition must be weakly decreasing: {parts}")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def _pad(lam: tuple[int, ...], k: int) -> tuple[int, ...]:
    if len(lam) > k:
        raise ValueError(f"partition {lam} has more than {k} nonzero parts")
    return lam + (0,) * (k - len(lam))


@dataclass(frozen=True)
class ModelSpecA:
    """``z`` defaults to the symbols z_1..z_N; ``sqrt_v`` to the symbol u."""

    n: int
    lam: tuple[int, ...]
    z: tuple[RatFun, ...] | None = None
    sqrt_v: RatFun = U

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "lam", _pad(normalize_partition(self.lam), self.n))
        if self.z is None:
            object.__setattr__(self, "z", tuple(ea.z(i) for i in range(1, self.n + 1)))
        elif len(self.z) != self.n:
            raise ValueError(f"expected {self.n} spectral parameters")

    @property
    def v(self) -> RatFun:
        return self.sqrt_v * self.sqrt_v

    @property
    def ncols(self) -> int:
        return (self.lam[0] if self.n else 0) + self.n

    def context(self) -> SiteContext:
        return SiteContext.type_a(self.n, self.z, self.sqrt_v)


@dataclass(frozen=True)
class ModelSpecC:
    """``w`` holds the square roots of z_1..z_r (default: the symbols w_1..w_r)."""

    r: int
    lam: tuple[int, ...]
    w: tuple[RatFun, ...] | None = None
    sqrt_v: RatFun = U

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "lam", _pad(normalize_partition(self.lam), self.r))
        if self.w is None:
            object.__setattr__(self, "w", tuple(ea.w(i) for i in range(1, self.r + 1)))
        elif len(self.w) != self.r:
            raise ValueError(f"expected {self.r} spectral parameters")

    @property
    def z(self) -> tuple[RatFun, ...]:
        return tuple(x * x for x in self.w)

    @property
    def v(self) -> RatFun:
        return self.sqrt_v * self.sqrt_v

    @property
    def n(self) -> int:
        return 2 * self.r

    @property
    def ncols(self) -> int:
        return (self.lam[0] if self.r else 0) + self.r

    def context(self) -> SiteContext:
        return SiteContext.type_c(self.r, self.w, self.sqrt_v)


def top_boundary(spec) -> tuple[int, ...]:
    """Top spins indexed by column label (right to left); type C index j means label j + 1/2."""
    if isinstance(spec, ModelSpecA):
        marked = {spec.lam[i - 1] + spec.n - i for i in range(1, spec.n + 1)}
    else:
        marked = {spec.lam[i - 1] + spec.r - i for i in range(1, spec.r + 1)}
    return tuple(1 if j in marked else 0 for j in range(spec.ncols))


def column_label(spec, j: int) -> Fraction:
    return Fraction(j) if isinstance(spec, ModelSpecA) else Fraction(2 * j + 1, 2)


@dataclass(frozen=True)
class Row:
    eps: int
    z: RatFun


def _rows(spec) -> list[Row]:
    """Rows from bottom to top."""
    if isinstance(spec, ModelSpecA):
        return [Row(GAMMA, zi) for zi in spec.z]
    rows = []
    for zl in spec.z:
        rows += [Row(GAMMA, zl.inverse()), Row(DELTA, zl)]
    return rows


# -- engine 1: pruned edge scan --------------------------------------------


@dataclass
class EnumerationResult:
    value: RatFun
    states: int


def partition_enumerate(spec, max_edges: int | None = None) -> EnumerationResult:
    """Sum of state weights over all labellings of the free edges.

    Free edges are assigned one at a time; as soon as all four edges of a
    vertex (or both edges of a cap) are known its weight is multiplied in,
    and branches with weight zero are abandoned.
    """
    rows = _rows(spec)
    nr, nc = len(rows), spec.ncols
    if nr == 0:
        return EnumerationResult(ONE, 1)
    type_c = isinstance(spec, ModelSpecC)
    top = top_boundary(spec)[::-1]  # left to right

    # Edge ids: ("h", row, p) is the horizontal edge left of position p (p = nc is the
    # right boundary); ("v", row, p) is the vertical edge below vertex (row, p), row = nr is the top.
    fixed: dict[tuple, int] = {}
    for row in range(nr):
        fixed[("h", row, 0)] = 0
        if not type_c:
            fixed[("h", row, nc)] = 1
    for p in range(nc):
        fixed[("v", 0, p)] = 0
        fixed[("v", nr, p)] = top[p]
    # Raster order: each vertex is completed as soon as its right and top edges are set.
    free = [
        e
        for row in range(nr)
        for p in range(nc)
        for e in (("h", row, p + 1), ("v", row + 1, p))
        if e not in fixed
    ]
    limit = _limit(ENUMERATE_MAX_EDGES) if max_edges is None else max_edges
    if len(free) > limit:
        raise TooLarge(f"{len(free)} free edges exceed the limit {limit}")

    # Factors: ordinary vertices as (L, T, R, B) edge ids, caps as (bottom, top) ids.
    factors = []
    for row, rw in enumerate(rows):
        for p in range(nc):
            edges = (("h", row, p), ("v", row + 1, p), ("h", row, p + 1), ("v", row, p))
            factors.append(("vertex", rw, edges))
    if type_c:
        for l in range(spec.r):
            factors.append(("cap", spec.z[l], (("h", 2 * l, nc), ("h", 2 * l + 1, nc))))

    position = {e: k for k, e in enumerate(free)}
    ready: list[list[int]] = [[] for _ in free]
    constant = []
    for f_idx, (_, _, edges) in enumerate(factors):
        last = max((position[e] for e in edges if e in position), default=-1)
        if last < 0:
            constant.append(f_idx)
        else:
            ready[last].append(f_idx)

    spin = dict(fixed)
    sv = spec.sqrt_v
    tables = {id(rw): ordinary_table(rw.eps, rw.z, sv) for rw in rows}
    total = [ZERO]
    count = [0]

    def factor_weight(f_idx: int) -> RatFun:
        kind, data, edges = factors[f_idx]
        spins = tuple(spin[e] for e in edges)
        if kind == "cap":
            return cap_weight(spins[0], spins[1], data, sv)
        name = PATTERN_OF.get(spins)
        return ZERO if name is None else tables[id(data)][name]

    def scan(k: int, weight: RatFun) -> None:
        if k == len(free):
            total[0] = total[0] + weight
            count[0] += 1
            return
        edge = free[k]
        for s in (0, 1):
            spin[edge] = s
            w = weight
            for f_idx in ready[k]:
                w = w * factor_weight(f_idx)
                if w.is_zero():
                    break
            if not w.is_zero():
                scan(k + 1, w)
        del spin[edge]

    start = ONE
    for f_idx in constant:
        start = start * factor_weight(f_idx)
    if not start.is_zero():
        scan(0, start)
    return EnumerationResult(total[0], count[0])


# -- engine 2: row transfer ------------------------------------------------


@dataclass
class TransferResult:
    value: RatFun
    states: int


def partition_transfer(spec) -> TransferResult:
    """Row-by-row dynamic program over vertical spin profiles.

    Each DP entry carries the summed weight and the number of partial states.
    For type C the right spin of a Gamma row is held until the Delta row
    above it is finished and the cap between them is applied.
    """
    nc = spec.ncols
    if nc > _limit(TRANSFER_MAX_COLS):
        raise TooLarge(f"{nc} columns exceed the transfer limit")
    rows = _rows(spec)
    if not rows:
        return TransferResult(ONE, 1)
    type_c = isinstance(spec, ModelSpecC)
    sv = spec.sqrt_v
    top = top_boundary(spec)[::-1]

    # state: (profile of vertical spins above the current row, pending right spin or None)
    layer: dict[tuple, tuple[RatFun, int]] = {((0,) * nc, None): (ONE, 1)}
    for idx, rw in enumerate(rows):
        nxt: dict[tuple, tuple[RatFun, int]] = {}
        for (below, pending), (wt, cnt) in layer.items():
            for above, right, row_wt, row_cnt in _row_transfers(rw, below, sv):
                if type_c:
                    if rw.eps == GAMMA:
                        key = (above, right)
                        factor = row_wt
                    else:
                        cap = cap_weight(pending, right, spec.w[idx // 2] ** 2, sv)
                        if cap.is_zero():
                            continue
                        key = (above, None)
                        factor = row_wt * cap
                else:
                    if right != 1:
                        continue
                    key = (above, None)
                    factor = row_wt
                val = wt * factor
                if key in nxt:
                    old_w, old_c = nxt[key]
                    nxt[key] = (old_w + val, old_c + cnt * row_cnt)
                else:
                    nxt[key] = (val, cnt * row_cnt)
        layer = nxt
    final = layer.get((tuple(top), None))
    if final is None:
        return TransferResult(ZERO, 0)
    return TransferResult(final[0], final[1])


def _row_transfers(rw: Row, below: tuple[int, ...], sqrt_v: RatFun = U):
    """All (above profile, right spin, weight, count) reachable through one row from a + left edge."""
    partial = {((), 0): (ONE, 1)}
    for b in below:
        nxt = {}
        for (above, left), (wt, cnt) in partial.items():
            for t in (0, 1):
                r = left + t - b
                if r not in (0, 1):
                    continue
                vw = ordinary_weight(rw.eps, rw.z, left, t, r, b, sqrt_v)
                if vw.is_zero():
                    continue
                key = (above + (t,), r)
                val = wt * vw
                if key in nxt:
                    nxt[key] = (nxt[key][0] + val, nxt[key][1] + cnt)
                else:
                    nxt[key] = (val, cnt)
        partial = nxt
    for (above, right), (wt, cnt) in partial.items():
        if not wt.is_zero():
            yield above, right, wt, cnt


# -- engine 3: column operators --------------------------------------------


def partition_column_product(spec) -> RatFun:
    """<0..0| S^[m_last] ... S^[m_first] applied to |1..1> (type A) or to K (type C)."""
    n = spec.n
    if n > _limit(COLUMN_MAX_N):
        raise TooLarge(f"N = {n} exceeds the column-engine limit")
    if n == 0:
        return ONE
    ctx = spec.context()
    vec = ones_vector(n) if isinstance(spec, ModelSpecA) else cap_vector(ctx)
    ops = {a: column_operator(a, ctx) for a in (0, 1)}
    for m in top_boundary(spec):
        vec = apply(ops[m], vec)
    return vec.component(0)


# -- engine 4: conjugated closed forms -------------------------------------


def partition_fmatrix(spec) -> RatFun:
    """Same product with every column replaced by its F-conjugated closed form.

    Uses <0..0| F^-1 = <0..0| and F|1..1> = |1..1> (type A) or the closed
    form of F K (type C); no F-matrix is ever built.
    """
    n = spec.n
    if n == 0:
        return ONE
    ctx = spec.context()
    try:
        vec = ones_vector(n) if isinstance(spec, ModelSpecA) else fk_closed_form(ctx)
        ops = {a: conjugated_column(a, ctx) for a in (0, 1)}
    except ZeroDivisionError as exc:
        raise SingularDelta(f"closed forms undefined at this point: {exc}") from None
    for m in top_boundary(spec):
        vec = apply(ops[m], vec)
    return vec.component(0)


# -- symmetric functions and closed forms ----------------------------------


def semistandard_tableaux(lam: Sequence[int], n: int):
    """All SSYT of shape ``lam`` with entries in 1..n, as lists of rows."""
    lam = [p for p in lam if p > 0]
    cells = [(i, j) for i, p in enumerate(lam) for j in range(p)]
    filling: dict[tuple[int, int], int] = {}

    def fill(k: int):
        if k == len(cells):
            yield [[filling[(i, j)] for j in range(p)] for i, p in enumerate(lam)]
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for val in range(lo, n + 1):
            filling[(i, j)] = val
            yield from fill(k + 1)
        filling.pop((i, j), None)

    yield from fill(0)


def schur(lam: Sequence[int], z: Sequence[RatFun], method: str = "bialternant") -> RatFun:
    n = len(z)
    lam = _pad(normalize_partition(lam), n)
    if method == "tableaux":
        total = ZERO
        for tab in semistandard_tableaux(lam, n):
            term = ONE
            for row in tab:
                for entry in row:
                    term = term * z[entry - 1]
            total = total + term
        return total
    if method != "bialternant":
        raise ValueError(f"unknown method {method!r}")
    num = ZERO
    for sigma in Permutation.all(n):
        term = ONE if sigma.inversions() % 2 == 0 else -ONE
        for i in range(1, n + 1):
            term = term * z[sigma(i) - 1] ** (lam[i - 1] + n - i)
        num = num + term
    den = ONE
    for i in range(n):
        for j in range(i + 1, n):
            den = den * (z[i] - z[j])
    if den.is_zero():
        raise SingularSpecialization("coinciding z values make the alternant denominator vanish")
    return num / den


def theorem1_rhs(spec: ModelSpecA, method: str = "bialternant") -> RatFun:
    """prod_{i<j} (z_j - v z_i) times the Schur polynomial s_lambda(z)."""
    z, v = spec.z, spec.v
    pref = ONE
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            pref = pref * (z[j] - v * z[i])
    return pref * schur(spec.lam, z, method)


def hyperoctahedral_apply(sigma: SignedPermutation, f: RatFun) -> RatFun:
    """(sigma f)(z) = f(z_sigma(1), ..., z_sigma(r)) with z_{-i} = 1/z_i."""
    mapping = {i: (abs(s), 1 if s > 0 else -1) for i, s in enumerate(sigma.images, start=1)}
    return f.substitute_w(mapping)


def _signed_w(w: Sequence[RatFun], sigma: SignedPermutation) -> list[RatFun]:
    return [w[abs(s) - 1] if s > 0 else w[abs(s) - 1].inverse() for s in sigma.images]


def delta_c(w: Sequence[RatFun]) -> RatFun:
    """Type-C Weyl denominator in terms of the square roots w_i of z_i."""
    r = len(w)
    out = ONE
    for i in range(r):
        for j in range(i + 1, r):
            out = out * (w[i] / w[j] - w[j] / w[i]) * (w[i] * w[j] - (w[i] * w[j]).inverse())
    for i in range(r):
        zi = w[i] * w[i]
        out = out * (zi - zi.inverse())
    return out


def _theorem2_summand(lam: Sequence[int], w: Sequence[RatFun], sqrt_v: RatFun) -> RatFun:
    r = len(w)
    term = ONE
    for i in range(r):
        zi = w[i] * w[i]
        term = term * zi ** (lam[i] + r - i) * (1 + sqrt_v * zi.inverse())
    dc = delta_c(w)
    if dc.is_zero():
        raise SingularSpecialization("the type-C Weyl denominator vanishes at this point")
    return term / dc


HALF_STAIRCASES = ("decreasing", "increasing")


def theorem2_rhs(spec: ModelSpecC, half_staircase: str = "decreasing") -> RatFun:
    """z^{-rho_B} prod(1 - sqrt(v) z_i) prod_{i<j}(1 - v z_i z_j)(1 - v z_j/z_i) times the B_r sum.

    ``half_staircase`` picks rho_B: "decreasing" is (r - 1/2, ..., 1/2) and
    "increasing" is (1/2, ..., r - 1/2).  They coincide for r = 1; for r >= 2
    the lattice model built here equals the increasing variant, and the two
    differ by the monomial prod_i z_i^{r + 1 - 2i}.
    """
    if half_staircase not in HALF_STAIRCASES:
        raise ValueError(f"half_staircase must be one of {HALF_STAIRCASES}")
    r, w, sv = spec.r, spec.w, spec.sqrt_v
    v = sv * sv
    z = [x * x for x in w]
    pref = ONE
    for i in range(r):
        # exponent of w_i (0-based i) is -2 * rho_B[i]
        twice = 2 * (r - i) - 1 if half_staircase == "decreasing" else 2 * i + 1
        pref = pref * w[i] ** (-twice) * (1 - sv * z[i])
    for i in range(r):
        for j in range(i + 1, r):
            pref = pref * (1 - v * z[i] * z[j]) * (1 - v * z[j] / z[i])
    total = ZERO
    for sigma in SignedPermutation.all(r):
        total = total + _theorem2_summand(spec.lam, _signed_w(w, sigma), sv)
    return pref * total


# -- dispatch --------------------------------------------------------------

METHODS = ("enumerate", "transfer", "column", "fmatrix", "closed")


def evaluate(spec, method: str, half_staircase: str = "decreasing") -> RatFun:
    if method == "enumerate":
        return partition_enumerate(spec).value
    if method == "transfer":
        return partition_transfer(spec).value
    if method == "column":
        return partition_column_product(spec)
    if method == "fmatrix":
        return partition_fmatrix(spec)
    if method == "closed":
        return theorem1_rhs(spec) if isinstance(spec, ModelSpecA) else theorem2_rhs(spec, half_staircase)
    raise ValueError(f"unknown method {method!r}")
