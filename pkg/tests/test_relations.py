import json
import random
from fractions import Fraction

import pytest

from ffice import exactalg as ea
from ffice import relations
from ffice.exactalg import ONE, RatFun, V, ZERO
from ffice.weights import DELTA, GAMMA

zi, zj = ea.z(1), ea.z(2)


def _by_boundary(reports):
    return {r.boundary: r for r in reports}


@pytest.mark.parametrize("x,y", relations.ICE_PAIRS)
def test_rtt_all_boundaries(x, y):
    reports = relations.check_rtt(x, y)
    assert len(reports) == 64
    assert all(r.passed for r in reports)


def test_rtt_examples():
    reps = _by_boundary(relations.check_rtt(GAMMA, GAMMA))
    assert reps[(0,) * 6].lhs == reps[(0,) * 6].rhs == ONE
    for boundary, r in reps.items():
        a, b, c, d, e, f = boundary
        if a + b + c != d + e + f:
            assert r.lhs == ZERO and r.rhs == ZERO


@pytest.mark.parametrize("triple", relations.ICE_TRIPLES)
def test_rrr_all_boundaries(triple):
    reports = relations.check_rrr(*triple)
    assert len(reports) == 64
    assert all(r.passed for r in reports)


def test_rrr_examples():
    reps = _by_boundary(relations.check_rrr(GAMMA, GAMMA, GAMMA))
    assert reps[(0,) * 6].lhs == ONE
    r = reps[(0, 1, 0, 0, 1, 0)]
    assert r.passed and not r.lhs.is_zero()


@pytest.mark.parametrize("x,y", relations.ICE_PAIRS)
def test_unitarity(x, y):
    reports = relations.check_unitarity(x, y)
    assert len(reports) == 16
    assert all(r.passed for r in reports)
    reps = _by_boundary(reports)
    assert reps[(0, 0, 0, 0)].lhs == ONE
    assert reps[(1, 0, 0, 1)].lhs == ONE
    assert reps[(1, 0, 1, 0)].lhs == ZERO


def test_caduceus():
    reports = relations.check_caduceus()
    assert len(reports) == 16
    assert all(r.passed for r in reports)
    reps = _by_boundary(reports)
    for (e1, e2, e3, e4), r in reps.items():
        if e1 == e2 or e3 == e4:
            assert r.lhs == ZERO and r.rhs == ZERO
    ratio = (zj - V * zi) / (zi - V * zj)
    assert reps[(0, 1, 0, 1)].lhs == ratio / (ea.w(1) * ea.w(2))


def test_free_fermion_reports():
    reports = relations.free_fermion_reports()
    assert len(reports) == 6
    assert all(r.passed for r in reports)


def test_rtt_numeric_specialization():
    rng = random.Random(11)
    for _ in range(3):
        a, b = rng.sample(range(2, 40), 2)
        params = (RatFun.const(Fraction(a, 7)), RatFun.const(Fraction(b, 5)))
        sqrt_v = RatFun.const(Fraction(rng.randint(2, 9), 3))
        reports = relations.check_rtt(GAMMA, GAMMA, sqrt_v=sqrt_v, params=params)
        assert all(r.passed and r.lhs.is_constant() for r in reports)


def test_caduceus_numeric_specialization():
    params = (RatFun.const(2), RatFun.const(Fraction(5, 3)))
    assert all(r.passed for r in relations.check_caduceus(sqrt_v=RatFun.const(Fraction(1, 3)), params=params))


def test_run_is_sorted_and_complete():
    reports = relations.run("all")
    counts = {}
    for r in reports:
        counts[r.relation] = counts.get(r.relation, 0) + 1
    assert counts == {"free-fermion": 6, "rtt": 256, "rrr": 512, "unitarity": 64, "caduceus": 16}
    assert all(r.passed for r in reports)
    for name in relations.RELATIONS:
        part = relations.run(name)
        assert [r.key() for r in part] == sorted(r.key() for r in part)
    with pytest.raises(ValueError):
        relations.run("fish")


def test_report_json():
    r = relations.check_unitarity(DELTA, GAMMA)[0]
    obj = r.to_json_obj()
    assert obj["ice"] == ["Delta", "Gamma"]
    assert obj["pass"] is True
    assert ea.from_json_obj(obj["lhs"]) == r.lhs
    json.dumps(obj)
