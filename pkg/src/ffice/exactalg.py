"""Exact arithmetic in the field Q(u, w_1, ..., w_r).

``u`` stands for the square root of the deformation parameter ``v`` and
``w_i`` for the square root of the spectral parameter ``z_i``, so every
weight in the package is a Laurent expression in these variables and no
radicals are ever needed.

A :class:`RatFun` is kept in a unique canonical form::

    f = x^shift * N / D

with ``N, D`` integer polynomials that share no factor (content included),
neither divisible by a variable, and ``D`` having a positive leading
coefficient in graded-lex order with ``u < w1 < ... < wr``.  Polynomial
multiplication and gcd are delegated to FLINT through ``python-flint``.
"""
from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint
from flint.utils.flint_exceptions import DomainError

MAX_W = 16
NVARS = MAX_W + 1

# Flint's deglex compares the first generator first; listing the w's in
# reverse and u last makes its leading term the canonical one.
_CTX = flint.fmpz_mpoly_ctx.get(tuple(f"w{i}" for i in range(MAX_W, 0, -1)) + ("u",), "deglex")
_ZERO_EXP = (0,) * NVARS


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroDenominator(DivisionByZero):
    pass


class PoleAtPoint(ZeroDivisionError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position):
        super().__init__(f"{message} (at {position})")
        self.position = position


def _to_internal(exps: Sequence[int]) -> tuple[int, ...]:
    if len(exps) > NVARS:
        raise ValueError(f"at most {NVARS} variables supported, got {len(exps)}")
    padded = tuple(exps) + (0,) * (NVARS - len(exps))
    return padded[::-1]


def _to_public(exps: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(e) for e in exps[::-1])


def _mono(exps: tuple[int, ...]):
    return _CTX.term(exp_vec=exps)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _normalize(N, D, shift) -> "RatFun":
    if D.is_zero():
        raise ZeroDenominator("denominator is zero")
    if N.is_zero():
        return ZERO
    if not D.is_one():
        g = N.gcd(D)
        if not g.is_one():
            N = N / g
            D = D / g
    mono_n = tuple(int(e) for e in N.term_content().monoms()[0])
    if any(mono_n):
        N = N / _mono(mono_n)
        shift = _add(shift, mono_n)
    if not D.is_constant():
        mono_d = tuple(int(e) for e in D.term_content().monoms()[0])
        if any(mono_d):
            D = D / _mono(mono_d)
            shift = _sub(shift, mono_d)
    if D.leading_coefficient() < 0:
        N = -N
        D = -D
    return RatFun._make(N, D, tuple(shift))


def _laurent(terms: Iterable) -> tuple[object, tuple[int, ...], int]:
    """Integer polynomial, monomial shift and scale with sum(terms) = x^shift * P / scale."""
    items = []
    for coeff, exps in terms:
        c = Fraction(coeff)
        if c:
            items.append((c, _to_internal(tuple(int(e) for e in exps))))
    if not items:
        return _CTX.from_dict({}), _ZERO_EXP, 1
    scale = math.lcm(*(c.denominator for c, _ in items))
    low = tuple(min(col) for col in zip(*(e for _, e in items)))
    acc: dict[tuple[int, ...], int] = {}
    for c, e in items:
        key = _sub(e, low)
        acc[key] = acc.get(key, 0) + int(c * scale)
    return _CTX.from_dict({k: v for k, v in acc.items() if v}), low, scale


class RatFun:
    """Immutable canonical element of Q(u, w_1, ..., w_r)."""

    __slots__ = ("_num", "_den", "_shift", "_hash")

    @classmethod
    def _make(cls, N, D, shift) -> "RatFun":
        obj = object.__new__(cls)
        obj._num = N
        obj._den = D
        obj._shift = shift
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "RatFun":
        q = Fraction(value)
        if q == 0:
            return ZERO
        return _normalize(_CTX.constant(q.numerator), _CTX.constant(q.denominator), _ZERO_EXP)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "RatFun":
        return canonicalize([(coeff, exps)], [(1, ())])

    @classmethod
    def coerce(cls, value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to RatFun")

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_one(self) -> bool:
        return self._num.is_one() and self._den.is_one() and self._shift == _ZERO_EXP

    def is_laurent(self) -> bool:
        """True when the denominator is a (positive) constant."""
        return self._den.is_constant()

    def is_constant(self) -> bool:
        return self._num.is_constant() and self._den.is_constant() and self._shift == _ZERO_EXP

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.is_zero():
            return Fraction(0)
        return Fraction(int(self._num.leading_coefficient()), int(self._den.leading_coefficient()))

    def nvars(self) -> int:
        """Length of the shortest variable list (u, w1, ..., wk) covering this function."""
        used = 1
        for poly in (self._num, self._den):
            for exps in poly.monoms():
                pub = _to_public(exps)
                for k in range(len(pub) - 1, 0, -1):
                    if pub[k]:
                        used = max(used, k + 1)
                        break
        pub = _to_public(self._shift)
        for k in range(len(pub) - 1, 0, -1):
            if pub[k]:
                used = max(used, k + 1)
                break
        return used

    def _content(self) -> int:
        return int(self._den.content())

    def num_terms(self) -> list[tuple[Fraction, tuple[int, ...]]]:
        """Numerator terms (spec form: denominator content moved here), canonical order."""
        c = self._content()
        return [
            (Fraction(int(k), c), _to_public(_add(e, self._shift)))
            for e, k in zip(self._num.monoms(), self._num.coeffs())
        ]

    def den_terms(self) -> list[tuple[Fraction, tuple[int, ...]]]:
        c = self._content()
        return [(Fraction(int(k), c), _to_public(e)) for e, k in zip(self._den.monoms(), self._den.coeffs())]

    # -- arithmetic ----------------------------------------------------

    def __neg__(self):
        if self.is_zero():
            return self
        return RatFun._make(-self._num, self._den, self._shift)

    def __add__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        s1, s2 = self._shift, o._shift
        if s1 == s2:
            shift, A, B = s1, self._num, o._num
        else:
            shift = tuple(map(min, s1, s2))
            A = self._num if s1 == shift else self._num * _mono(_sub(s1, shift))
            B = o._num if s2 == shift else o._num * _mono(_sub(s2, shift))
        if self._den == o._den:
            return _normalize(A + B, self._den, shift)
        return _normalize(A * o._den + B * self._den, self._den * o._den, shift)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatFun.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ZERO
        shift = _add(self._shift, o._shift)
        N1, D1, N2, D2 = self._num, self._den, o._num, o._den
        if not D2.is_one():
            g = N1.gcd(D2)
            if not g.is_one():
                N1, D2 = N1 / g, D2 / g
        if not D1.is_one():
            g = N2.gcd(D1)
            if not g.is_one():
                N2, D1 = N2 / g, D1 / g
        N, D = N1 * N2, D1 * D2
        if D.leading_coefficient() < 0:
            N, D = -N, -D
        return RatFun._make(N, D, shift)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        N, D = self._den, self._num
        if D.leading_coefficient() < 0:
            N, D = -N, -D
        return RatFun._make(N, D, tuple(-e for e in self._shift))

    def __truediv__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero")
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        N, D = self._num ** n, self._den ** n
        if D.leading_coefficient() < 0:
            N, D = -N, -D
        return RatFun._make(N, D, tuple(e * n for e in self._shift))

    def sqrt(self) -> "RatFun":
        """Exact square root; raises ValueError unless this is a perfect square."""
        if self.is_zero():
            return ZERO
        if any(e % 2 for e in self._shift):
            raise ValueError(f"{self} is not a perfect square")
        try:
            N, D = self._num.sqrt(), self._den.sqrt()
        except (ValueError, DomainError):
            raise ValueError(f"{self} is not a perfect square") from None
        if D.leading_coefficient() < 0:
            D = -D
        if N.leading_coefficient() < 0:
            N = -N
        return RatFun._make(N, D, tuple(e // 2 for e in self._shift))

    def substitute_w(self, mapping: Mapping[int, tuple[int, int]]) -> "RatFun":
        """Replace w_i by w_j**s for every ``i -> (j, s)`` in ``mapping``; other variables stay."""

        def move(terms):
            out = []
            for c, exps in terms:
                exps = list(exps) + [0] * (NVARS - len(exps))
                new = [exps[0]] + [0] * MAX_W
                for i in range(1, NVARS):
                    j, s = mapping.get(i, (i, 1))
                    new[j] += s * exps[i]
                out.append((c, new))
            return out

        return canonicalize(move(self.num_terms()), move(self.den_terms()))

    # -- comparison ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.const(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self._shift == other._shift and self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shift, serialize(self)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- display -------------------------------------------------------

    def to_str(self) -> str:
        num, den = self.num_terms(), self.den_terms()
        u_even = all(e[0] % 2 == 0 for _, e in num + den)
        w_even = all(x % 2 == 0 for _, e in num + den for x in e[1:])
        ntxt = _poly_str(num, u_even, w_even)
        if den == [(1, ())] or (len(den) == 1 and den[0][0] == 1 and not any(den[0][1])):
            return ntxt
        dtxt = _poly_str(den, u_even, w_even)
        if len(num) > 1:
            ntxt = f"({ntxt})"
        if len(den) > 1:
            dtxt = f"({dtxt})"
        return f"{ntxt}/{dtxt}"

    def factored(self) -> str:
        """Product-of-factors display, e.g. ``(z2 - v*z1)*(z2 + z1)``."""
        if self.is_zero():
            return "0"
        # Factor in the squares v, z_i wherever only even powers occur, so that
        # z2 - v*z1 is not split into (w2 - u*w1)*(w2 + u*w1).
        monoms = self._num.monoms() + self._den.monoms()
        scale = tuple(2 if all(int(e[k]) % 2 == 0 for e in monoms) else 1 for k in range(NVARS))

        def rescale(poly, down: bool):
            return _CTX.from_dict(
                {
                    tuple(int(e) // f if down else int(e) * f for e, f in zip(exps, scale)): k
                    for exps, k in zip(poly.monoms(), poly.coeffs())
                }
            )

        parts = []
        c = Fraction(1)
        for poly, sign in ((self._num, 1), (self._den, -1)):
            k, facs = rescale(poly, True).factor()
            c *= Fraction(int(k)) ** sign
            for fac, mult in facs:
                parts.append((sign, RatFun._make(rescale(fac, False), _CTX.constant(1), _ZERO_EXP), mult))
        mono = RatFun._make(_CTX.constant(1), _CTX.constant(1), self._shift)
        out = []
        prefix = ""
        if c == -1 and (parts or not mono.is_one()):
            prefix = "-"
        elif c != 1 or (not parts and mono.is_one()):
            out.append(str(c))
        if not mono.is_one():
            out.append(mono.to_str())
        for sign, fac, mult in parts:
            txt = fac.to_str()
            if len(fac.num_terms()) > 1:
                txt = f"({txt})"
            power = mult * sign
            out.append(txt if power == 1 else f"{txt}^{power}")
        return prefix + "*".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFun({self.to_str()!r})"


def _mono_str(exps: Sequence[int], u_even: bool, w_even: bool) -> str:
    parts = []
    for k, e in enumerate(exps):
        if not e:
            continue
        if k == 0:
            name, p = ("v", e // 2) if u_even else ("u", e)
        else:
            name, p = (f"z{k}", e // 2) if w_even else (f"w{k}", e)
        parts.append(name if p == 1 else f"{name}^{p}")
    return "*".join(parts)


def _poly_str(terms, u_even: bool, w_even: bool) -> str:
    if not terms:
        return "0"
    out = []
    for idx, (c, exps) in enumerate(terms):
        mono = _mono_str(exps, u_even, w_even)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


ZERO = RatFun._make(_CTX.from_dict({}), _CTX.constant(1), _ZERO_EXP)
ONE = RatFun._make(_CTX.constant(1), _CTX.constant(1), _ZERO_EXP)


def canonicalize(num_terms: Iterable, den_terms: Iterable) -> RatFun:
    """Canonical RatFun of (sum num_terms) / (sum den_terms).

    Each term is ``(coeff, exps)`` with ``exps`` ordered ``(u, w1, w2, ...)``;
    exponents may be negative.
    """
    N, sn, ln = _laurent(num_terms)
    D, sd, ld = _laurent(den_terms)
    if D.is_zero():
        raise ZeroDenominator("denominator is zero")
    return _normalize(N * ld, D * ln, _sub(sn, sd))


def u() -> RatFun:
    return U


def w(i: int) -> RatFun:
    if not 1 <= i <= MAX_W:
        raise ValueError(f"w index must be in 1..{MAX_W}")
    exps = [0] * (i + 1)
    exps[i] = 1
    return RatFun.monomial(exps)


def z(i: int) -> RatFun:
    return w(i) ** 2


def arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _var_power(k: int, e: int, point: Mapping[str, Fraction]) -> Fraction:
    if e == 0:
        return Fraction(1)
    name, alias = ("u", "v") if k == 0 else (f"w{k}", f"z{k}")
    if name in point:
        base, p = Fraction(point[name]), e
    elif alias in point and e % 2 == 0:
        base, p = Fraction(point[alias]), e // 2
    else:
        raise ValueError(f"point does not determine {name}^{e}")
    if base == 0 and p < 0:
        raise PoleAtPoint(f"{name} = 0 at a negative power")
    return base**p


def _eval_terms(terms, point) -> Fraction:
    total = Fraction(0)
    for c, exps in terms:
        val = Fraction(c)
        for k, e in enumerate(exps):
            val *= _var_power(k, e, point)
        total += val
    return total


def evaluate_at(f: RatFun, point: Mapping[str, object]) -> Fraction:
    """Exact value of ``f`` at ``point``.

    ``point`` maps ``u``/``w<i>`` (or their squares ``v``/``z<i>``, usable
    when every exponent of that variable is even) to rationals.
    """
    pt = {k: Fraction(v) for k, v in point.items()}
    den = _eval_terms(f.den_terms(), pt)
    if den == 0:
        raise PoleAtPoint("denominator vanishes at the point")
    return _eval_terms(f.num_terms(), pt) / den


def random_point(nvars: int, rng: random.Random) -> dict[str, Fraction]:
    pt = {"u": Fraction(rng.randint(2, 2**16))}
    for k in range(1, nvars):
        pt[f"w{k}"] = Fraction(rng.randint(2, 2**16))
    return pt


def probably_equal(a: RatFun, b: RatFun, k: int = 3, seed: int = 0) -> bool:
    """Randomized equality test: compare values at ``k`` random points."""
    rng = random.Random(seed)
    nv = max(a.nvars(), b.nvars())
    done = tries = 0
    while done < k:
        tries += 1
        if tries > 20 * k:
            raise RuntimeError("could not find pole-free evaluation points")
        pt = random_point(nv, rng)
        try:
            if evaluate_at(a, pt) != evaluate_at(b, pt):
                return False
        except PoleAtPoint:
            continue
        done += 1
    return True


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_json_obj(f: RatFun) -> dict:
    nv = f.nvars()

    def pad(exps):
        return list(exps[:nv]) + [0] * (nv - len(exps[:nv]))

    return {
        "vars": ["u"] + [f"w{k}" for k in range(1, nv)],
        "num": [[_coeff_str(c), pad(e)] for c, e in f.num_terms()],
        "den": [[_coeff_str(c), pad(e)] for c, e in f.den_terms()],
    }


def serialize(f: RatFun) -> str:
    return json.dumps(to_json_obj(f), separators=(",", ":"))


def _parse_coeff(text, where) -> Fraction:
    if not isinstance(text, str):
        raise ParseError("coefficient must be a decimal string", where)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {text!r}", where) from None


def from_json_obj(obj, where: str = "$") -> RatFun:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    for key in ("vars", "num", "den"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}", where)
    names = obj["vars"]
    expected = ["u"] + [f"w{k}" for k in range(1, len(names))] if isinstance(names, list) else None
    if names != expected or len(names) > NVARS:
        raise ParseError("vars must be [\"u\", \"w1\", ..., \"wk\"]", f"{where}.vars")
    nv = len(names)
    parts = []
    for key in ("num", "den"):
        terms = obj[key]
        if not isinstance(terms, list):
            raise ParseError("expected a list of terms", f"{where}.{key}")
        out = []
        for i, term in enumerate(terms):
            loc = f"{where}.{key}[{i}]"
            if not (isinstance(term, list) and len(term) == 2):
                raise ParseError("term must be [coeff, expvec]", loc)
            c = _parse_coeff(term[0], f"{loc}[0]")
            exps = term[1]
            if not (isinstance(exps, list) and len(exps) == nv and all(isinstance(e, int) for e in exps)):
                raise ParseError(f"exponent vector must hold {nv} integers", f"{loc}[1]")
            out.append((c, exps))
        parts.append(out)
    try:
        return canonicalize(parts[0], parts[1])
    except ZeroDenominator:
        raise ParseError("denominator is zero", f"{where}.den") from None


def parse(text: str) -> RatFun:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos) from None
    return from_json_obj(obj)


U = RatFun.monomial((1,))
V = U * U
