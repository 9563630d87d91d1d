import sys
import sympy as sp
from hypothesis import strategies as st

from ffice import exactalg as ea
from ffice.weights import ordinary_table, r_table

U_SYM = sp.Symbol("u")
W_SYMS = sp.symbols("w1:17")


def to_sympy(f: ea.RatFun):
    """Independent sympy image of a RatFun, built from its serialized terms."""

    def poly(terms):
        out = sp.Integer(0)
        for c, exps in terms:
            mono = sp.Rational(c.numerator, c.denominator)
            for k, e in enumerate(exps):
                mono *= (U_SYM if k == 0 else W_SYMS[k - 1]) ** e
            out += mono
        return out

    return poly(f.num_terms()) / poly(f.den_terms())


def sympy_equal(f: ea.RatFun, expr) -> bool:
    return sp.cancel(sp.together(to_sympy(f) - expr)) == 0


def weight_entries():
    """Every entry of every weight table at symbolic parameters z1, z2."""
    out = []
    for eps in (1, -1):
        out += list(ordinary_table(eps, ea.z(1)).values())
    for a in (1, -1):
        for b in (1, -1):
            out += list(r_table(a, b, ea.z(1), ea.z(2)).values())
            out += list(r_table(a, b, ea.z(2), ea.z(3)).values())
    return [f for f in out if not f.is_zero()]


WEIGHTS = weight_entries()
weights_st = st.sampled_from(WEIGHTS)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
