"""Boltzmann weight tables for the free-fermionic six-vertex ice.

Spins are 0 (``+``) and 1 (``-``).  Ordinary vertices take their edges in
the order (left, top, right, bottom); R-vertices in the order
(bottom-left, top-left, top-right, bottom-right); caps as (bottom, top).

Ice types are encoded by ``eps``: ``+1`` for Gamma ice and ``-1`` for
Delta ice.  An R-vertex of type ``(eps_i, eps_j)`` joins a line of type
``eps_i`` entering at the bottom-left with one of type ``eps_j`` entering
at the top-left.

Every weight takes an optional ``sqrt_v`` (default: the symbol ``u``), so
the same tables serve both symbolic and numeric evaluation.
"""
from __future__ import annotations

from functools import lru_cache

from .exactalg import ONE, U, ZERO, RatFun

GAMMA = 1
DELTA = -1

# Six admissible patterns, ordinary order (L, T, R, B) and R-vertex order (a, b, c, d).
PATTERNS = {
    "a1": (0, 0, 0, 0),
    "a2": (1, 1, 1, 1),
    "b1": (0, 1, 0, 1),
    "b2": (1, 0, 1, 0),
    "c1": (1, 0, 0, 1),
    "c2": (0, 1, 1, 0),
}
PATTERN_OF = {spins: name for name, spins in PATTERNS.items()}

ICE_NAMES = {
    "gamma": GAMMA,
    "delta": DELTA,
    "gg": (GAMMA, GAMMA),
    "gd": (GAMMA, DELTA),
    "dg": (DELTA, GAMMA),
    "dd": (DELTA, DELTA),
}


def _check_eps(eps: int) -> None:
    if eps not in (GAMMA, DELTA):
        raise ValueError(f"ice type must be +1 or -1, got {eps!r}")


@lru_cache(maxsize=4096)
def ordinary_table(eps: int, z: RatFun, sqrt_v: RatFun = U) -> dict[str, RatFun]:
    _check_eps(eps)
    v = sqrt_v * sqrt_v
    if eps == GAMMA:
        return {"a1": ONE, "a2": z, "b1": -v, "b2": z, "c1": z * (1 - v), "c2": ONE}
    return {"a1": ONE, "a2": -v * z, "b1": ONE, "b2": z, "c1": z * (1 - v), "c2": ONE}


@lru_cache(maxsize=4096)
def r_table(eps_i: int, eps_j: int, z_i: RatFun, z_j: RatFun, sqrt_v: RatFun = U) -> dict[str, RatFun]:
    """R-vertex weights of type (eps_i, eps_j) at spectral parameters (z_i, z_j)."""
    _check_eps(eps_i)
    _check_eps(eps_j)
    v = sqrt_v * sqrt_v
    z, zp = z_i, z_j
    c1n, c2n = (1 - v) * z, (1 - v) * zp
    if (eps_i, eps_j) == (GAMMA, GAMMA):
        d = zp - v * z
        a2, b1 = (z - v * zp) / d, v * (z - zp) / d
    elif (eps_i, eps_j) == (DELTA, DELTA):
        d = z - v * zp
        a2, b1 = (zp - v * z) / d, v * (z - zp) / d
    elif (eps_i, eps_j) == (DELTA, GAMMA):
        d = zp - v * z
        a2, b1 = ONE, (zp - v * v * z) / d
    else:
        d = z - v * zp
        a2, b1 = ONE, (v * v * zp - z) / d
    return {"a1": ONE, "a2": a2, "b1": b1, "b2": (z - zp) / d, "c1": c1n / d, "c2": c2n / d}


def ordinary_weight(eps: int, z: RatFun, left: int, top: int, right: int, bottom: int, sqrt_v: RatFun = U) -> RatFun:
    name = PATTERN_OF.get((left, top, right, bottom))
    if name is None:
        return ZERO
    return ordinary_table(eps, z, sqrt_v)[name]


def r_weight(eps_i: int, eps_j: int, z_i: RatFun, z_j: RatFun, a: int, b: int, c: int, d: int, sqrt_v: RatFun = U) -> RatFun:
    name = PATTERN_OF.get((a, b, c, d))
    if name is None:
        return ZERO
    return r_table(eps_i, eps_j, z_i, z_j, sqrt_v)[name]


@lru_cache(maxsize=1024)
def _sqrt(x: RatFun) -> RatFun:
    return x.sqrt()


def cap_weight(bottom: int, top: int, z: RatFun, sqrt_v: RatFun = U) -> RatFun:
    """Cap joining a Gamma row (bottom) to the Delta row above it; ``z`` must be a square."""
    if (bottom, top) == (0, 1):
        return -sqrt_v * _sqrt(z)
    if (bottom, top) == (1, 0):
        return _sqrt(z).inverse()
    return ZERO


def b2(x_a: RatFun, x_b: RatFun, eps_a: int, eps_b: int, sqrt_v: RatFun = U) -> RatFun:
    return r_table(eps_a, eps_b, x_a, x_b, sqrt_v)["b2"]


def a2(x_a: RatFun, x_b: RatFun, eps_a: int, eps_b: int, sqrt_v: RatFun = U) -> RatFun:
    return r_table(eps_a, eps_b, x_a, x_b, sqrt_v)["a2"]


def table_for(ice, z: RatFun, zp: RatFun | None = None, sqrt_v: RatFun = U) -> dict[str, RatFun]:
    if isinstance(ice, tuple):
        return r_table(ice[0], ice[1], z, zp, sqrt_v)
    return ordinary_table(ice, z, sqrt_v)


def free_fermion_check(ice, sqrt_v: RatFun = U) -> bool:
    """a1*a2 + b1*b2 - c1*c2 == 0 for the table of ``ice`` (an eps or an eps pair)."""
    from .exactalg import z

    t = table_for(ice, z(1), z(2), sqrt_v)
    return (t["a1"] * t["a2"] + t["b1"] * t["b2"] - t["c1"] * t["c2"]).is_zero()


def _spin(s: int) -> str:
    return "-" if s else "+"


def render_table(name: str) -> str:
    """ASCII rendering of one weight table with its pattern diagrams."""
    from .exactalg import z

    lines = []
    if name == "cap":
        lines.append("cap vertex (bottom edge from the Gamma row, top edge to the Delta row)")
        for bottom, top in ((0, 1), (1, 0), (0, 0), (1, 1)):
            lines.append(f"  top {_spin(top)}")
            lines.append("     )")
            lines.append(f"  bot {_spin(bottom)}    weight {cap_weight(bottom, top, z(1))}")
        return "\n".join(lines)
    ice = ICE_NAMES[name]
    if isinstance(ice, tuple):
        t = table_for(ice, z(1), z(2))
        lines.append(f"{name.upper()} R-vertex at (z1, z2); edges a=bottom-left b=top-left c=top-right d=bottom-right")
        for pname, (a, b, c, d) in PATTERNS.items():
            lines.append(f"  {pname}:  {_spin(b)}   {_spin(c)}")
            lines.append("        \\ /")
            lines.append("         X       weight " + str(t[pname]))
            lines.append("        / \\")
            lines.append(f"       {_spin(a)}   {_spin(d)}")
    else:
        t = table_for(ice, z(1))
        lines.append(f"{name.capitalize()} ice at z1")
        for pname, (left, top, right, bottom) in PATTERNS.items():
            lines.append(f"  {pname}:    {_spin(top)}")
            lines.append(f"        {_spin(left)} + {_spin(right)}    weight {t[pname]}")
            lines.append(f"          {_spin(bottom)}")
    return "\n".join(lines)
