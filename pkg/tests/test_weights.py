import itertools

import pytest

from ffice import exactalg as ea
from ffice.exactalg import ONE, U, V, ZERO
from ffice.weights import (
    DELTA,
    GAMMA,
    ICE_NAMES,
    PATTERNS,
    cap_weight,
    free_fermion_check,
    ordinary_table,
    ordinary_weight,
    r_table,
    r_weight,
    render_table,
)

z, zp = ea.z(1), ea.z(2)
PAIRS = [(GAMMA, GAMMA), (GAMMA, DELTA), (DELTA, GAMMA), (DELTA, DELTA)]


def test_ordinary_examples():
    assert ordinary_weight(GAMMA, z, 0, 1, 0, 1) == -V
    assert ordinary_weight(DELTA, z, 1, 1, 1, 1) == -V * z
    assert ordinary_weight(GAMMA, z, 0, 0, 0, 1) == ZERO


def test_ordinary_tables_entrywise():
    assert ordinary_table(GAMMA, z) == {"a1": ONE, "a2": z, "b1": -V, "b2": z, "c1": z * (1 - V), "c2": ONE}
    assert ordinary_table(DELTA, z) == {"a1": ONE, "a2": -V * z, "b1": ONE, "b2": z, "c1": z * (1 - V), "c2": ONE}


def test_r_examples():
    assert r_weight(GAMMA, GAMMA, z, zp, 1, 0, 0, 1) == (1 - V) * z / (zp - V * z)
    assert r_weight(DELTA, GAMMA, z, zp, 0, 1, 0, 1) == (zp - V * V * z) / (zp - V * z)
    assert r_weight(GAMMA, DELTA, z, zp, 0, 0, 1, 1) == ZERO


@pytest.mark.parametrize("pair", PAIRS)
def test_r_a1_normalization(pair):
    assert r_table(*pair, z, zp)["a1"] == ONE


def test_gg_and_dd_exchange_denominators():
    gg, dd = r_table(GAMMA, GAMMA, z, zp), r_table(DELTA, DELTA, z, zp)
    for name in ("a2", "b2", "c1", "c2"):
        num_gg = gg[name] * (zp - V * z)
        num_dd = dd[name] * (z - V * zp)
        if name == "a2":
            # the a2 numerators are swapped as well
            assert num_gg == num_dd.substitute_w({1: (2, 1), 2: (1, 1)})
        else:
            assert num_gg == num_dd
    assert gg["b1"] * (zp - V * z) == dd["b1"] * (z - V * zp)


def test_cap_examples():
    w = ea.w(1)
    assert cap_weight(0, 1, z) == -U * w
    assert cap_weight(1, 0, z) == w.inverse()
    assert cap_weight(0, 0, z) == ZERO
    assert cap_weight(1, 1, z) == ZERO


def test_cap_rejects_non_square():
    with pytest.raises(ValueError):
        cap_weight(1, 0, z + 1)


def test_spin_conservation():
    for spins in itertools.product((0, 1), repeat=4):
        left, top, right, bottom = spins
        for eps in (GAMMA, DELTA):
            if not ordinary_weight(eps, z, *spins).is_zero():
                assert left + top == right + bottom
        for pair in PAIRS:
            if not r_weight(*pair, z, zp, *spins).is_zero():
                assert spins[0] + spins[1] == spins[2] + spins[3]
    for bottom, top in itertools.product((0, 1), repeat=2):
        if not cap_weight(bottom, top, z).is_zero():
            assert bottom != top


def test_exactly_six_admissible_patterns():
    admissible = [s for s in itertools.product((0, 1), repeat=4) if not ordinary_weight(GAMMA, z, *s).is_zero()]
    assert sorted(admissible) == sorted(PATTERNS.values())


@pytest.mark.parametrize("name", list(ICE_NAMES))
def test_free_fermion(name):
    assert free_fermion_check(ICE_NAMES[name])


def test_free_fermion_gamma_by_hand():
    t = ordinary_table(GAMMA, z)
    assert ONE * z + (-V) * z - z * (1 - V) * ONE == ZERO
    assert t["a1"] * t["a2"] + t["b1"] * t["b2"] == t["c1"] * t["c2"]


def test_free_fermion_numeric_sqrt_v():
    for name, ice in ICE_NAMES.items():
        assert free_fermion_check(ice, ea.RatFun.const(3))


def test_invalid_eps():
    with pytest.raises(ValueError):
        ordinary_table(0, z)


@pytest.mark.parametrize("name", list(ICE_NAMES) + ["cap"])
def test_render(name):
    text = render_table(name)
    assert "weight" in text
    if name != "cap":
        assert all(p in text for p in PATTERNS)
