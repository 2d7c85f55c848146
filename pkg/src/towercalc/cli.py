"""Command-line entry point: ``towercalc build|check|eta|eval|spectral|examples``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .conditions import Verdict, check_tower_theorem1, check_tower_theorem2
from .corpus import run_corpus, show
from .errors import TowerError
from .eta import eta_square, x1_config_from_tower, x1_solve, x1_system
from .expr import eval_expr
from .ring import CurveClass, DivisorClass, intersect_dd, pair_dc
from .script import load_tower
from .spectral import DEFAULT_TOL, AutAction, degrees_report
from .tower import Variety

EXIT_OK, EXIT_ERROR, EXIT_NEEDS_ASSERTION, EXIT_FAIL = 0, 1, 2, 3


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _class_json(cls) -> dict:
    return {label: str(c) for label, c in cls.as_dict().items()}


def _value_json(value):
    if isinstance(value, (DivisorClass, CurveClass)):
        return {"grade": "divisor" if isinstance(value, DivisorClass) else "curve",
                "coeffs": _class_json(value), "text": str(value)}
    return {"grade": "number", "value": str(value)}


def _level_json(v: Variety) -> dict:
    divs = [v.div(lab) for lab in v.div_basis]
    curves = [v.curve(lab) for lab in v.curve_basis]
    dd = {f"{a}*{b}": str(intersect_dd(divs[i], divs[j]))
          for i, a in enumerate(v.div_basis) for j, b in enumerate(v.div_basis) if i <= j}
    dc = {f"{a}*{b}": str(pair_dc(divs[i], curves[j]))
          for i, a in enumerate(v.div_basis) for j, b in enumerate(v.curve_basis)}
    return {
        "level": v.level, "id": v.id, "parent": v.parent_id,
        "step": None if v.step is None else str(v.step),
        "div_basis": list(v.div_basis), "curve_basis": list(v.curve_basis),
        "dd": dd, "dc": dc,
        "c1": _class_json(v.c1), "c2": _class_json(v.c2),
        "c1_dot_c2": str(pair_dc(v.c1, v.c2)),
    }


def cmd_build(args) -> int:
    top, _ = load_tower(_read(args.file))
    levels = [_level_json(v) for v in top.chain()]
    if args.json:
        _dump({"levels": levels})
        return EXIT_OK
    for lv in levels:
        print(f"X_{lv['level']}  id={lv['id']}" + (f"  step: {lv['step']}" if lv["step"] else ""))
        print(f"  divisors: {' '.join(lv['div_basis'])}")
        print(f"  curves:   {' '.join(lv['curve_basis'])}")
        for key, val in lv["dd"].items():
            if val != "0":
                print(f"  {key} = {val}")
        for key, val in lv["dc"].items():
            if val != "0":
                print(f"  {key} = {val}")
        v = top.at_level(lv["level"])
        print(f"  c1 = {v.c1}")
        print(f"  c2 = {v.c2}")
        print(f"  c1.c2 = {lv['c1_dot_c2']}")
    return EXIT_OK


def _overall(reports) -> tuple[str, int]:
    if any(r.verdict is Verdict.FAIL for r in reports):
        return Verdict.FAIL.value, EXIT_FAIL
    if any(r.verdict is Verdict.NEEDS_ASSERTION for r in reports):
        return Verdict.NEEDS_ASSERTION.value, EXIT_NEEDS_ASSERTION
    return Verdict.PASS.value, EXIT_OK


def cmd_check(args) -> int:
    top, evidence = load_tower(_read(args.file))
    if args.theorem == 1:
        reports = check_tower_theorem1(top)
    else:
        reports = check_tower_theorem2(top, evidence)
    overall, code = _overall(reports)
    if args.json:
        _dump({"theorem": args.theorem, "tower": top.id, "verdict": overall,
               "reports": [r.to_json() for r in reports]})
        return code
    for r in reports:
        step = top.at_level(r.step_index).step
        matched = f" ({r.matched_condition.value})" if r.matched_condition else ""
        print(f"step {r.step_index} [{step}]: {r.verdict.value}{matched}")
        if r.numbers:
            print("  " + ", ".join(f"{k}={v}" for k, v in sorted(r.numbers.items())))
        if r.notes:
            print(f"  {r.notes}")
    print(f"overall: {overall}")
    return code


def cmd_eta(args) -> int:
    top, _ = load_tower(_read(args.file))
    config = x1_config_from_tower(top)
    system = x1_system(config)
    rays = x1_solve(config)
    for ray in rays:
        if not eta_square(top, ray.as_class(top)).is_zero():
            raise TowerError(f"ray {ray} does not square to zero on the script tower")
    if args.json:
        _dump({"system": system.to_json(), "rays": [r.to_json() for r in rays]})
        return EXIT_OK
    print("system:")
    for line in system.equations():
        print(f"  {line}")
    if not rays:
        print("rays: none (only eta = 0)")
    for ray in rays:
        sign = "" if ray.all_f_nonnegative else "  (some f_j < 0)"
        print(f"ray: {ray}{sign}")
    return EXIT_OK


def cmd_eval(args) -> int:
    top, _ = load_tower(_read(args.file))
    v = top if args.level is None else top.at_level(args.level)
    value = eval_expr(v, args.expr)
    if args.json:
        _dump({"level": v.level, "expr": args.expr, "result": _value_json(value)})
    else:
        print(value)
    return EXIT_OK


def _read_matrix(path: str) -> list[list[int]]:
    rows = []
    for lineno, line in enumerate(_read(path).splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise TowerError(f"{path}: line {lineno}: expected whitespace-separated integers") \
                from None
    return rows


def cmd_spectral(args) -> int:
    top, _ = load_tower(_read(args.file))
    v = top if args.level is None else top.at_level(args.level)
    act = AutAction(_read_matrix(args.m11), _read_matrix(args.m22))
    inverse = None
    if args.inv_m11 or args.inv_m22:
        if not (args.inv_m11 and args.inv_m22):
            raise TowerError("--inv-m11 and --inv-m22 must be given together")
        inverse = AutAction(_read_matrix(args.inv_m11), _read_matrix(args.inv_m22))
    rep = degrees_report(v, act, args.tol, inverse)
    ok = rep.is_automorphism_action
    if args.json:
        _dump(rep.to_json())
    else:
        print(f"lambda1 = {rep.lambda1:.12g}")
        print(f"lambda2 = {rep.lambda2:.12g}")
        print(f"lambda3 = {rep.lambda3:g}")
        print(f"h_top = {rep.h_top:.12g}")
        print(f"P11(x) = {rep.char_poly11}   det = {rep.det11}")
        print(f"P22(x) = {rep.char_poly22}   det = {rep.det22}")
        print(f"unimodularity: {rep.unimodularity}")
        print(f"compatibility: {rep.compatibility}")
        print(f"rational roots of P11: {rep.rational_roots11}")
        print(f"lambda1 irrational: {rep.lambda1_irrational}")
        print(f"lambda1 = lambda2: {rep.degrees_equal}")
        if rep.inverse_duality is not None:
            print(f"inverse duality: {rep.inverse_duality}")
        for note in rep.notes:
            print(f"note: {note}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_examples(args) -> int:
    claims = run_corpus()
    bad = [c for c in claims if not c.ok]
    if args.json:
        _dump({"claims": [c.to_json() for c in claims], "passed": len(claims) - len(bad),
               "failed": len(bad)})
    else:
        width = max(len(c.entry) for c in claims)
        for c in claims:
            mark = "PASS" if c.ok else "FAIL"
            line = f"{mark}  {c.entry:<{width}}  {c.what}: {show(c.got)}"
            if not c.ok:
                line += f" (expected {show(c.expected)})"
            print(line)
        print(f"{len(claims) - len(bad)}/{len(claims)} checks passed")
    return EXIT_FAIL if bad else EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with parse errors; 2 means NeedsAssertion
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="towercalc",
                                description="Intersection rings of blowup towers and "
                                            "entropy obstruction checks.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="print basis, tables, c1 and c2 for every level")
    b.add_argument("file")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="per-step theorem checks")
    c.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("eta", help="zero-square rays on a points-and-curves blowup of P3")
    e.add_argument("file")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eta)

    v = sub.add_parser("eval", help="evaluate an intersection expression")
    v.add_argument("file")
    v.add_argument("--expr", required=True)
    v.add_argument("--level", type=int, default=None, help="X_k, 0 is the base; default top")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_eval)

    s = sub.add_parser("spectral", help="dynamical degrees of an action given by matrices")
    s.add_argument("file")
    s.add_argument("--m11", required=True)
    s.add_argument("--m22", required=True)
    s.add_argument("--inv-m11", dest="inv_m11")
    s.add_argument("--inv-m22", dest="inv_m22")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--level", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_spectral)

    x = sub.add_parser("examples", help="verify the bundled example corpus")
    x.add_argument("--json", action="store_true")
    x.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TowerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
