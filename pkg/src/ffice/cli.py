"""Command-line front end.

Exit codes: 0 on success, 1 when a relation fails or engines disagree, 2 on
usage errors (including rejected numeric points and exceeded size limits).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from . import exactalg as ea
from . import relations
from .exactalg import RatFun
from .fmatrix import LimitExceeded, SingularDelta, SiteContext, build_F, build_Fstar, delta_diagonal
from .models import (
    HALF_STAIRCASES,
    METHODS,
    ModelSpecA,
    ModelSpecC,
    SingularSpecialization,
    TooLarge,
    evaluate,
    partition_enumerate,
    partition_transfer,
)
from .weights import ICE_NAMES, render_table

TOOL = "ffice"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    equality: str = "canonical"
    k: int = 3
    seed: int = 0
    output: str = "text"

    def equality_record(self) -> dict:
        if self.equality == "canonical":
            return {"mode": "canonical", "seed": self.seed}
        return {"mode": "probabilistic", "k": self.k, "seed": self.seed}

    def equal(self, a: RatFun, b: RatFun) -> bool:
        if self.equality == "canonical":
            return a == b
        return ea.probably_equal(a, b, k=self.k, seed=self.seed)


def report_emit(results: list[dict], cfg: RunConfig) -> str:
    """Deterministic JSON array; every record carries tool, version, equality mode and seed."""
    records = []
    for res in results:
        rec = {"tool": TOOL, "version": __version__, "equality": cfg.equality_record()}
        rec.update(res)
        records.append(rec)
    return json.dumps(records, sort_keys=True, separators=(",", ":"))


def first_difference(a: RatFun, b: RatFun) -> str:
    """Human-readable location of the first canonical term where ``a`` and ``b`` differ."""
    ja, jb = ea.to_json_obj(a), ea.to_json_obj(b)
    for part in ("num", "den"):
        ta, tb = ja[part], jb[part]
        for idx in range(max(len(ta), len(tb))):
            xa = ta[idx] if idx < len(ta) else None
            xb = tb[idx] if idx < len(tb) else None
            if xa != xb:
                return f"{part}[{idx}]: {xa} vs {xb}"
    return "no difference"


# -- argument helpers ------------------------------------------------------


def parse_lambda(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.split(",") if p.strip() != "")
    except ValueError:
        raise UsageError(f"--lambda must be comma-separated integers, got {text!r}") from None
    if not parts:
        raise UsageError("--lambda must list at least one part")
    return parts


def parse_point(text: str) -> dict[str, Fraction]:
    point = {}
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise UsageError(f"numeric assignment {item!r} is not of the form name=value")
        name, val = item.split("=", 1)
        try:
            point[name.strip()] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational value {val!r} for {name}") from None
    return point


def _rational_sqrt(q: Fraction, name: str) -> Fraction:
    try:
        root = RatFun.const(q).sqrt().to_fraction()
    except ValueError:
        raise UsageError(f"{name} = {q} is not the square of a rational; give its square root instead") from None
    return root


def _sqrt_v(point: dict[str, Fraction]) -> RatFun:
    if "u" in point:
        return RatFun.const(point["u"])
    if "v" in point:
        return RatFun.const(_rational_sqrt(point["v"], "v"))
    raise UsageError("numeric point must assign u or v")


def build_spec(family: str, lam: tuple[int, ...], rank: int | None, point: dict[str, Fraction] | None):
    rank = len(lam) if rank is None else rank
    try:
        if family == "type-a":
            if point is None:
                return ModelSpecA(rank, lam)
            z = []
            for i in range(1, rank + 1):
                if f"z{i}" in point:
                    z.append(RatFun.const(point[f"z{i}"]))
                elif f"w{i}" in point:
                    z.append(RatFun.const(point[f"w{i}"] ** 2))
                else:
                    raise UsageError(f"numeric point must assign z{i} or w{i}")
            return ModelSpecA(rank, lam, tuple(z), _sqrt_v(point))
        if point is None:
            return ModelSpecC(rank, lam)
        w = []
        for i in range(1, rank + 1):
            if f"w{i}" in point:
                val = point[f"w{i}"]
            elif f"z{i}" in point:
                val = _rational_sqrt(point[f"z{i}"], f"z{i}")
            else:
                raise UsageError(f"numeric point must assign w{i} or z{i}")
            if val <= 0:
                raise UsageError(f"w{i} must be positive")
            w.append(RatFun.const(val))
        return ModelSpecC(rank, lam, tuple(w), _sqrt_v(point))
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from None


def _config(args, command: str) -> RunConfig:
    equality = getattr(args, "equality", "canonical")
    if equality == "probabilistic" and getattr(args, "strict", False):
        raise UsageError("probabilistic equality is not allowed with --strict")
    return RunConfig(
        command=command,
        equality=equality,
        k=getattr(args, "k", 3),
        seed=getattr(args, "seed", 0),
        output="json" if getattr(args, "json", False) else "text",
    )


def _banner(cfg: RunConfig) -> None:
    if cfg.equality == "probabilistic":
        print(
            f"*** PROBABILISTIC EQUALITY: values compared at {cfg.k} random points (seed {cfg.seed}); "
            "this is not an exact proof ***",
            file=sys.stderr,
        )


def _value_text(f: RatFun) -> str:
    return str(f.to_fraction()) if f.is_constant() else f.to_str()


# -- commands --------------------------------------------------------------


def cmd_weights(args, out) -> int:
    print(render_table(args.ice), file=out)
    return 0


def cmd_verify(args, out) -> int:
    cfg = _config(args, "verify")
    _banner(cfg)
    reports = relations.run(args.relation)
    results = []
    failed = 0
    for rep in reports:
        ok = cfg.equal(rep.lhs, rep.rhs)
        failed += not ok
        rec = rep.to_json_obj()
        rec["pass"] = ok
        results.append(rec)
    if cfg.output == "json":
        print(report_emit(results, cfg), file=out)
    else:
        counts: dict[str, list[int]] = {}
        for rec in results:
            c = counts.setdefault(rec["relation"], [0, 0])
            c[0] += 1
            c[1] += rec["pass"]
        for name, (total, ok) in counts.items():
            status = "PASS" if ok == total else "FAIL"
            print(f"{status} {name}: {ok}/{total}", file=out)
        for rep, rec in zip(reports, results):
            if not rec["pass"]:
                print(f"  {rep.relation} ice={rec['ice']} boundary={rec['boundary']}", file=out)
                print(f"    lhs = {rep.lhs}", file=out)
                print(f"    rhs = {rep.rhs}", file=out)
                print(f"    first difference: {first_difference(rep.lhs, rep.rhs)}", file=out)
    return 1 if failed else 0


def _op_json(op) -> list:
    return [[list(o), list(i), ea.to_json_obj(val)] for o, i, val in op.components()]


def cmd_fmatrix(args, out) -> int:
    cfg = _config(args, "fmatrix")
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.type == "c":
        if args.n % 2:
            raise UsageError("type-c contexts need an even --n")
        ctx = SiteContext.type_c(args.n // 2)
    else:
        ctx = SiteContext.type_a(args.n)
    rec = {
        "type": args.type,
        "n": args.n,
        "F": _op_json(build_F(ctx)),
        "Fstar": _op_json(build_Fstar(ctx)),
        "Delta": _op_json(delta_diagonal(ctx)),
    }
    print(report_emit([rec], cfg), file=out)
    return 0


def _spec_from_args(args):
    lam = parse_lambda(args.lam)
    point = parse_point(args.numeric) if args.numeric else None
    return build_spec(args.family, lam, args.rank, point)


def cmd_partition(args, out) -> int:
    cfg = _config(args, "partition")
    spec = _spec_from_args(args)
    method = args.method
    states = None
    if method == "enumerate":
        res = partition_enumerate(spec)
        value, states = res.value, res.states
    elif method == "transfer":
        res = partition_transfer(spec)
        value, states = res.value, res.states
    else:
        value = evaluate(spec, method, args.half_staircase)
    if cfg.output == "json":
        rec = {
            "family": args.family,
            "lambda": list(spec.lam),
            "method": method,
            "value": ea.to_json_obj(value),
            "text": _value_text(value),
        }
        if states is not None:
            rec["states"] = states
        print(report_emit([rec], cfg), file=out)
    else:
        print(_value_text(value), file=out)
    return 0


def cmd_compare(args, out) -> int:
    cfg = _config(args, "compare")
    _banner(cfg)
    spec = _spec_from_args(args)
    values: dict[str, RatFun] = {}
    skipped: dict[str, str] = {}
    for method in METHODS:
        try:
            values[method] = evaluate(spec, method, args.half_staircase)
        except (TooLarge, LimitExceeded) as exc:
            skipped[method] = str(exc)
    if not values:
        raise UsageError("every method exceeded its size limit")
    ref_name = next(iter(values))
    ref = values[ref_name]
    mismatches = [m for m, val in values.items() if not cfg.equal(val, ref)]
    if cfg.output == "json":
        results = [
            {"method": m, "value": ea.to_json_obj(val), "text": _value_text(val), "agrees": m not in mismatches}
            for m, val in values.items()
        ]
        results += [{"method": m, "skipped": reason} for m, reason in skipped.items()]
        print(report_emit(results, cfg), file=out)
    else:
        for m, val in values.items():
            mark = "MISMATCH" if m in mismatches else "ok"
            print(f"{m:>10}: {mark}", file=out)
        for m, reason in skipped.items():
            print(f"{m:>10}: skipped ({reason})", file=out)
        if not mismatches:
            shown = str(ref.to_fraction()) if ref.is_constant() else ref.factored()
            print(f"value: {shown}", file=out)
        for m in mismatches:
            print(f"{ref_name} = {values[ref_name]}", file=out)
            print(f"{m} = {values[m]}", file=out)
            print(f"first difference: {first_difference(values[ref_name], values[m])}", file=out)
    return 1 if mismatches else 0


def _add_equality_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--equality", choices=["canonical", "probabilistic"], default="canonical")
    p.add_argument("--k", type=int, default=3, help="evaluation points for probabilistic equality")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="refuse probabilistic equality")


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", choices=["type-a", "type-c"])
    p.add_argument("--lambda", dest="lam", required=True, help="partition, e.g. 3,1,0")
    p.add_argument("--rank", type=int, default=None, help="N (type-a) or r (type-c); default: number of listed parts")
    p.add_argument("--numeric", default=None, help="rational point, e.g. v=1/4,z1=2,z2=3 (type-c needs square z or w values)")
    p.add_argument("--half-staircase", choices=HALF_STAIRCASES, default="decreasing")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL, description="Free-fermionic ice workbench")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weights", help="show Boltzmann weight tables")
    wsub = w.add_subparsers(dest="action", required=True)
    show = wsub.add_parser("show")
    show.add_argument("--ice", choices=list(ICE_NAMES) + ["cap"], required=True)
    show.set_defaults(func=cmd_weights)

    v = sub.add_parser("verify", help="check the lattice relations symbolically")
    v.add_argument("relation", choices=list(relations.RELATIONS) + ["all"])
    v.add_argument("--json", action="store_true")
    _add_equality_flags(v)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fmatrix", help="dump F, F* and Delta")
    fsub = f.add_subparsers(dest="action", required=True)
    dump = fsub.add_parser("dump")
    dump.add_argument("--n", type=int, required=True)
    dump.add_argument("--type", choices=["a", "c"], default="a")
    dump.set_defaults(func=cmd_fmatrix)

    p = sub.add_parser("partition", help="evaluate a partition function")
    _add_model_flags(p)
    p.add_argument("--method", choices=METHODS, default="transfer")
    p.set_defaults(func=cmd_partition)

    c = sub.add_parser("compare", help="run every method and compare")
    _add_model_flags(c)
    _add_equality_flags(c)
    c.set_defaults(func=cmd_compare)
    return parser


def dispatch(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, TooLarge, LimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SingularDelta, SingularSpecialization, ea.PoleAtPoint, ZeroDivisionError) as exc:
        print(f"error: singular specialization: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())
