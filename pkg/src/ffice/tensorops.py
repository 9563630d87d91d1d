"""Sparse exact linear algebra on the tensor power (C^2)^{(x)N}.

Basis vectors are spin words ``(i_1, ..., i_N)``; word ``i`` has linear
index ``sum_k i_k * 2**(N-k)`` so site 1 is the most significant bit.

A :class:`LinOp` stores its nonzero components keyed by
``(output index, input index)``.  In component notation ``(A)^{j}_{i}`` the
upper word ``j`` is the input and the lower word ``i`` the output::

    A |j> = sum_i (A)^{j}_{i} |i>
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exactalg import ONE, U, ZERO, RatFun
from .weights import PATTERNS, r_table


class SiteOutOfRange(IndexError):
    pass


class EqualSites(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def word_to_index(word: Sequence[int]) -> int:
    idx = 0
    for bit in word:
        idx = (idx << 1) | bit
    return idx


def index_to_word(idx: int, n: int) -> tuple[int, ...]:
    return tuple((idx >> (n - k)) & 1 for k in range(1, n + 1))


def bit(idx: int, site: int, n: int) -> int:
    return (idx >> (n - site)) & 1


def all_words(n: int) -> list[tuple[int, ...]]:
    return [index_to_word(i, n) for i in range(2**n)]


def _index(word, n: int) -> int:
    if isinstance(word, int):
        return word
    if len(word) != n:
        raise DimensionMismatch(f"word {word} does not have {n} sites")
    return word_to_index(word)


def _check_site(site: int, n: int) -> None:
    if not 1 <= site <= n:
        raise SiteOutOfRange(f"site {site} outside 1..{n}")


@dataclass(frozen=True)
class LinOp:
    n: int
    entries: Mapping[tuple[int, int], RatFun] = field(default_factory=dict)

    @classmethod
    def from_components(cls, n: int, comps: Iterable) -> "LinOp":
        """Build from ``(output word, input word, value)`` triples, summing repeats."""
        acc: dict[tuple[int, int], RatFun] = {}
        for out, inp, val in comps:
            key = (_index(out, n), _index(inp, n))
            acc[key] = acc[key] + val if key in acc else RatFun.coerce(val)
        return cls(n, {k: v for k, v in acc.items() if not v.is_zero()})

    @classmethod
    def identity(cls, n: int) -> "LinOp":
        return cls(n, {(i, i): ONE for i in range(2**n)})

    @classmethod
    def diagonal(cls, n: int, values: Mapping[int, RatFun]) -> "LinOp":
        return cls(n, {(i, i): v for i, v in values.items() if not v.is_zero()})

    def component(self, out, inp) -> RatFun:
        """(A)^{inp}_{out}: coefficient of |out> in A|inp>."""
        return self.entries.get((_index(out, self.n), _index(inp, self.n)), ZERO)

    def components(self):
        """Sorted ``(output word, input word, value)`` triples."""
        for (o, i) in sorted(self.entries):
            yield index_to_word(o, self.n), index_to_word(i, self.n), self.entries[(o, i)]

    def is_zero(self) -> bool:
        return not self.entries

    def is_diagonal(self) -> bool:
        return all(o == i for o, i in self.entries)

    def __eq__(self, other):
        if not isinstance(other, LinOp):
            return NotImplemented
        return self.n == other.n and dict(self.entries) == dict(other.entries)

    def __add__(self, other: "LinOp") -> "LinOp":
        _same_n(self.n, other.n)
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc[k] + v if k in acc else v
        return LinOp(self.n, {k: v for k, v in acc.items() if not v.is_zero()})

    def __sub__(self, other: "LinOp") -> "LinOp":
        return self + other.scale(-ONE)

    def __matmul__(self, other: "LinOp") -> "LinOp":
        return compose(self, other)

    def scale(self, c: RatFun) -> "LinOp":
        if c.is_zero():
            return LinOp(self.n, {})
        return LinOp(self.n, {k: v * c for k, v in self.entries.items()})

    def dense(self) -> list[list[RatFun]]:
        if self.n > 6:
            raise DimensionMismatch("dense matrices are only produced for N <= 6")
        dim = 2**self.n
        return [[self.entries.get((o, i), ZERO) for i in range(dim)] for o in range(dim)]


@dataclass(frozen=True)
class Vec:
    n: int
    comps: Mapping[int, RatFun] = field(default_factory=dict)

    @classmethod
    def basis(cls, word: Sequence[int]) -> "Vec":
        return cls(len(word), {word_to_index(word): ONE})

    def component(self, word) -> RatFun:
        return self.comps.get(_index(word, self.n), ZERO)

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self.n == other.n and dict(self.comps) == dict(other.comps)


@dataclass(frozen=True)
class CoVec:
    n: int
    comps: Mapping[int, RatFun] = field(default_factory=dict)

    @classmethod
    def basis(cls, word: Sequence[int]) -> "CoVec":
        return cls(len(word), {word_to_index(word): ONE})

    def component(self, word) -> RatFun:
        return self.comps.get(_index(word, self.n), ZERO)

    def __eq__(self, other):
        if not isinstance(other, CoVec):
            return NotImplemented
        return self.n == other.n and dict(self.comps) == dict(other.comps)


def _same_n(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"site counts differ: {a} vs {b}")


def elementary(site: int, a: int, b: int, n: int) -> LinOp:
    """E_site^{(a,b)} = |a><b| at ``site``, identity elsewhere."""
    _check_site(site, n)
    shift = n - site
    entries = {}
    for idx in range(2**n):
        if (idx >> shift) & 1 == b:
            out = idx ^ ((a ^ b) << shift)
            entries[(out, idx)] = ONE
    return LinOp(n, entries)


def r_matrix(i: int, j: int, x_i: RatFun, x_j: RatFun, eps_i: int, eps_j: int, n: int, sqrt_v: RatFun = U) -> LinOp:
    """sum over patterns of R(a,b,c,d) E_i^{(a,c)} E_j^{(b,d)}."""
    _check_site(i, n)
    _check_site(j, n)
    if i == j:
        raise EqualSites(f"R-matrix needs two distinct sites, got {i} twice")
    table = r_table(eps_i, eps_j, x_i, x_j, sqrt_v)
    si, sj = n - i, n - j
    mask = (1 << si) | (1 << sj)
    entries = {}
    for idx in range(2**n):
        c, d = (idx >> si) & 1, (idx >> sj) & 1
        for name, (pa, pb, pc, pd) in PATTERNS.items():
            if (pc, pd) != (c, d):
                continue
            if table[name].is_zero():
                continue
            out = (idx & ~mask) | (pa << si) | (pb << sj)
            entries[(out, idx)] = table[name]
    return LinOp(n, entries)


def compose(a: LinOp, b: LinOp) -> LinOp:
    """Operator product a*b (b acts first)."""
    _same_n(a.n, b.n)
    rows_b: dict[int, list[tuple[int, RatFun]]] = {}
    for (k, i), val in b.entries.items():
        rows_b.setdefault(k, []).append((i, val))
    acc: dict[tuple[int, int], RatFun] = {}
    for (o, k), va in a.entries.items():
        for i, vb in rows_b.get(k, ()):
            key = (o, i)
            term = va * vb
            acc[key] = acc[key] + term if key in acc else term
    return LinOp(a.n, {k: v for k, v in acc.items() if not v.is_zero()})


def apply(a: LinOp, x: Vec) -> Vec:
    _same_n(a.n, x.n)
    acc: dict[int, RatFun] = {}
    for (o, i), va in a.entries.items():
        xv = x.comps.get(i)
        if xv is None:
            continue
        term = va * xv
        acc[o] = acc[o] + term if o in acc else term
    return Vec(a.n, {k: v for k, v in acc.items() if not v.is_zero()})


def co_apply(y: CoVec, a: LinOp) -> CoVec:
    """Row vector times operator: (yA)^{j} = sum_i y^{i} (A)^{j}_{i}."""
    _same_n(a.n, y.n)
    acc: dict[int, RatFun] = {}
    for (o, i), va in a.entries.items():
        yv = y.comps.get(o)
        if yv is None:
            continue
        term = yv * va
        acc[i] = acc[i] + term if i in acc else term
    return CoVec(a.n, {k: v for k, v in acc.items() if not v.is_zero()})


def pair(y: CoVec, x: Vec) -> RatFun:
    _same_n(y.n, x.n)
    total = ZERO
    for k, v in y.comps.items():
        if k in x.comps:
            total = total + v * x.comps[k]
    return total


def permutation_op(sigma, n: int) -> LinOp:
    """P^sigma |i_1..i_N> = |i_{sigma^-1(1)}, ..., i_{sigma^-1(N)}>."""
    images = tuple(sigma)
    if sorted(images) != list(range(1, n + 1)):
        raise DimensionMismatch(f"{images} is not a permutation of 1..{n}")
    inv = [0] * n
    for k, s in enumerate(images, start=1):
        inv[s - 1] = k
    entries = {}
    for idx in range(2**n):
        word = index_to_word(idx, n)
        out = tuple(word[inv[t] - 1] for t in range(n))
        entries[(word_to_index(out), idx)] = ONE
    return LinOp(n, entries)
