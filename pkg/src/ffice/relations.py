"""Exhaustive symbolic checks of the Yang-Baxter, unitarity and caduceus relations.

Every check contracts the interior edges of a small diagram by brute-force
summation over spins, directly from the weight tables.  It deliberately
avoids the operator machinery of :mod:`ffice.tensorops`, so the two can be
checked against each other.

Ordinary vertices take edges as (left, top, right, bottom) and R-vertices as
(bottom-left, top-left, top-right, bottom-right).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exactalg as ea
from .exactalg import ONE, U, ZERO, RatFun
from .weights import DELTA, GAMMA, ICE_NAMES, cap_weight, free_fermion_check, ordinary_weight, r_weight

ICE_LABEL = {GAMMA: "Gamma", DELTA: "Delta"}
SPINS = (0, 1)


@dataclass(frozen=True)
class RelationReport:
    relation: str
    ice: tuple[int, ...]
    boundary: tuple[int, ...]
    lhs: RatFun
    rhs: RatFun

    @property
    def passed(self) -> bool:
        return (self.lhs - self.rhs).is_zero()

    def key(self):
        return (self.relation, self.ice, self.boundary)

    def to_json_obj(self) -> dict:
        return {
            "relation": self.relation,
            "ice": [ICE_LABEL[e] for e in self.ice],
            "boundary": list(self.boundary),
            "lhs": ea.to_json_obj(self.lhs),
            "rhs": ea.to_json_obj(self.rhs),
            "pass": self.passed,
        }


def _spin_sum(fn, count: int) -> RatFun:
    total = ZERO
    for spins in itertools.product(SPINS, repeat=count):
        total = total + fn(*spins)
    return total


def _params(count: int, sqrt_v: RatFun, values=None) -> list[RatFun]:
    if values is not None:
        return list(values)
    return [ea.z(i) for i in range(1, count + 1)]


def check_rtt(x: int, y: int, sqrt_v: RatFun = U, params=None) -> list[RelationReport]:
    """R-vertex of type XY at (z_i, z_j) moved through an X vertex at z_i and a Y vertex at z_j."""
    zi, zj = _params(2, sqrt_v, params)

    def R(a, b, c, d):
        return r_weight(x, y, zi, zj, a, b, c, d, sqrt_v)

    def S(l, t, r, b):
        return ordinary_weight(x, zi, l, t, r, b, sqrt_v)

    def T(l, t, r, b):
        return ordinary_weight(y, zj, l, t, r, b, sqrt_v)

    reports = []
    for a, b, c, d, e, f in itertools.product(SPINS, repeat=6):
        lhs = _spin_sum(lambda g, h, i: R(a, b, g, i) * S(g, c, d, h) * T(i, h, e, f), 3)
        rhs = _spin_sum(lambda j, k, l: S(a, k, l, f) * T(b, c, j, k) * R(l, j, d, e), 3)
        reports.append(RelationReport("rtt", (x, y), (a, b, c, d, e, f), lhs, rhs))
    return reports


def check_rrr(x: int, y: int, zt: int, sqrt_v: RatFun = U, params=None) -> list[RelationReport]:
    """Three R-vertices: R of type XY at (z_i, z_j), S of type XZ at (z_i, z_k), T of type YZ at (z_j, z_k)."""
    zi, zj, zk = _params(3, sqrt_v, params)

    def R(a, b, c, d):
        return r_weight(x, y, zi, zj, a, b, c, d, sqrt_v)

    def S(a, b, c, d):
        return r_weight(x, zt, zi, zk, a, b, c, d, sqrt_v)

    def T(a, b, c, d):
        return r_weight(y, zt, zj, zk, a, b, c, d, sqrt_v)

    reports = []
    for a, b, c, d, e, f in itertools.product(SPINS, repeat=6):
        lhs = _spin_sum(lambda g, h, i: R(a, b, g, h) * S(g, c, d, i) * T(h, i, e, f), 3)
        rhs = _spin_sum(lambda j, k, l: T(b, c, j, k) * S(a, k, l, f) * R(l, j, d, e), 3)
        reports.append(RelationReport("rrr", (x, y, zt), (a, b, c, d, e, f), lhs, rhs))
    return reports


def check_unitarity(x: int, y: int, sqrt_v: RatFun = U, params=None) -> list[RelationReport]:
    """An XY crossing at (z_i, z_j) followed by a YX crossing at (z_j, z_i) is the identity."""
    zi, zj = _params(2, sqrt_v, params)
    reports = []
    for a, b, c, d in itertools.product(SPINS, repeat=4):
        lhs = _spin_sum(
            lambda e, f: r_weight(x, y, zi, zj, a, b, f, e, sqrt_v) * r_weight(y, x, zj, zi, e, f, c, d, sqrt_v), 2
        )
        rhs = ONE if (a == d and b == c) else ZERO
        reports.append(RelationReport("unitarity", (x, y), (a, b, c, d), lhs, rhs))
    return reports


def check_caduceus(sqrt_v: RatFun = U, params=None) -> list[RelationReport]:
    """Four R-vertices closed by two caps equal the bare caps times (z_j - v z_i)/(z_i - v z_j).

    ``params`` may give the square roots (w_i, w_j) of the two spectral parameters.
    """
    wi, wj = params if params is not None else (ea.w(1), ea.w(2))
    zi, zj = wi * wi, wj * wj
    v = sqrt_v * sqrt_v
    zi_inv, zj_inv = zi.inverse(), zj.inverse()

    def A(a, b, c, d):
        return r_weight(DELTA, DELTA, zi, zj, a, b, c, d, sqrt_v)

    def B(a, b, c, d):
        return r_weight(GAMMA, GAMMA, zi_inv, zj_inv, a, b, c, d, sqrt_v)

    def C(a, b, c, d):
        return r_weight(GAMMA, DELTA, zi_inv, zj, a, b, c, d, sqrt_v)

    def D(a, b, c, d):
        return r_weight(DELTA, GAMMA, zi, zj_inv, a, b, c, d, sqrt_v)

    ratio = (zj - v * zi) / (zi - v * zj)
    reports = []
    for e1, e2, e3, e4 in itertools.product(SPINS, repeat=4):
        lhs = ZERO
        for p, q, s, t, m, n, o, y in itertools.product(SPINS, repeat=8):
            d_w = D(e3, e2, p, q)
            if d_w.is_zero():
                continue
            a_w = A(p, e1, s, t)
            if a_w.is_zero():
                continue
            b_w = B(e4, q, m, n)
            if b_w.is_zero():
                continue
            c_w = C(m, t, o, y)
            if c_w.is_zero():
                continue
            caps = cap_weight(o, s, zi, sqrt_v) * cap_weight(n, y, zj, sqrt_v)
            if caps.is_zero():
                continue
            lhs = lhs + d_w * a_w * b_w * c_w * caps
        bare = cap_weight(e2, e1, zj, sqrt_v) * cap_weight(e4, e3, zi, sqrt_v)
        reports.append(RelationReport("caduceus", (), (e1, e2, e3, e4), lhs, ratio * bare))
    return reports


ICE_PAIRS = [(x, y) for x in (GAMMA, DELTA) for y in (GAMMA, DELTA)]
ICE_TRIPLES = [(x, y, z) for x in (GAMMA, DELTA) for y in (GAMMA, DELTA) for z in (GAMMA, DELTA)]


def free_fermion_reports(sqrt_v: RatFun = U) -> list[RelationReport]:
    from .weights import table_for

    reports = []
    for name, ice in ICE_NAMES.items():
        t = table_for(ice, ea.z(1), ea.z(2), sqrt_v)
        lhs = t["a1"] * t["a2"] + t["b1"] * t["b2"]
        key = ice if isinstance(ice, tuple) else (ice,)
        reports.append(RelationReport("free-fermion", key, (), lhs, t["c1"] * t["c2"]))
    return reports


def run(name: str, sqrt_v: RatFun = U) -> list[RelationReport]:
    """All reports of one relation family ("rtt", "rrr", ...) or of every family ("all")."""
    if name == "free-fermion":
        reports = free_fermion_reports(sqrt_v)
    elif name == "rtt":
        reports = [r for x, y in ICE_PAIRS for r in check_rtt(x, y, sqrt_v)]
    elif name == "rrr":
        reports = [r for x, y, z in ICE_TRIPLES for r in check_rrr(x, y, z, sqrt_v)]
    elif name == "unitarity":
        reports = [r for x, y in ICE_PAIRS for r in check_unitarity(x, y, sqrt_v)]
    elif name == "caduceus":
        reports = check_caduceus(sqrt_v)
    elif name == "all":
        reports = []
        for part in RELATIONS:
            reports += run(part, sqrt_v)
        return reports
    else:
        raise ValueError(f"unknown relation {name!r}")
    return sorted(reports, key=RelationReport.key)


RELATIONS = ("free-fermion", "rtt", "rrr", "unitarity", "caduceus")

__all__ = [
    "RelationReport",
    "check_rtt",
    "check_rrr",
    "check_unitarity",
    "check_caduceus",
    "free_fermion_check",
    "free_fermion_reports",
    "run",
]
