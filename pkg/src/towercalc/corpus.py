"""Bundled example towers and the numbers each one is expected to reproduce."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from importlib.resources import files
from typing import Callable

from .conditions import (
    Condition, Verdict, c0_invariants, check_condition3, check_tower_theorem1,
    check_tower_theorem2, hartshorne_case_check, plane_curve_genus, ruled_numbers,
)
from .eta import eta_square
from .expr import eval_expr
from .ring import intersect_dd, pair_dc, triple
from .script import load_tower
from .spectral import AutAction, char_poly, degrees_report
from .tower import (
    Variety, base_space, gamma, pushforward_curve, strict_transform_hypersurface,
)

SCRIPTS = (
    "plane_cubic.tower", "plane_conic.tower", "conic_and_cubic.tower", "coordinate_lines.tower",
    "two_coordinate_lines.tower", "p2p1_vertical.tower", "p2p1_horizontal.tower", "p2p1_three_lines.tower",
)


def script_text(name: str) -> str:
    return files("towercalc").joinpath("towers", name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class Claim:
    entry: str
    what: str
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def to_json(self) -> dict:
        return {"entry": self.entry, "claim": self.what, "expected": show(self.expected),
                "got": show(self.got), "ok": self.ok}


def show(value) -> str:
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(show(x) for x in value) + "]"
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


class _Collector:
    def __init__(self, entry: str):
        self.entry = entry
        self.claims: list[Claim] = []

    def eq(self, what: str, expected, got) -> None:
        self.claims.append(Claim(self.entry, what, expected, got))


def _verdicts(reports) -> list[str]:
    return [r.verdict.value for r in reports]


def _plane_curves(c: _Collector) -> None:
    # cubic (g=1) with two of its points blown up first: d=3, t=2
    top, ev = load_tower(script_text("plane_cubic.tower"))
    parent = top.parent
    s, mu = ev[3][0].s_class, ev[3][0].mu
    rep = check_condition3(parent, top.step.center, top.step.genus, s, mu)
    c.eq("genus of a plane cubic", 1, plane_curve_genus(3))
    c.eq("kappa = d - t", Fraction(1), rep.numbers["kappa"])
    c.eq("gamma = 4d - 2t + (d-1)(d-2) - 2", Fraction(8), rep.numbers["gamma"])
    c.eq("mu*gamma - 2*kappa = 2d + (d-1)(d-2) - 2", Fraction(6),
         rep.numbers["mu_gamma"] - rep.numbers["two_kappa"])
    c.eq("condition 3 verdict", Verdict.PASS, rep.verdict)
    c.eq("genus of a plane quartic", 3, plane_curve_genus(4))

    top, ev = load_tower(script_text("plane_conic.tower"))
    rep = check_condition3(top.parent, top.step.center, 0, ev[1][0].s_class, 1)
    c.eq("conic, t=0: kappa", Fraction(2), rep.numbers["kappa"])
    c.eq("conic, t=0: gamma", Fraction(6), rep.numbers["gamma"])
    c.eq("conic, t=0: condition 3 verdict", Verdict.PASS, rep.verdict)


def _conic_and_cubic(c: _Collector) -> None:
    top, ev = load_tower(script_text("conic_and_cubic.tower"))
    x1 = top.parent
    c.eq("X1 table: H.F1 = d1*M1", x1.curve_class({"M1": 2}), intersect_dd(x1.div("H"), x1.div("F1")))
    c.eq("X1 table: F1.F1 = -d1*HH + (4d1 + 2g1 - 2)*M1", x1.curve_class({"HH": -2, "M1": 6}),
         intersect_dd(x1.div("F1"), x1.div("F1")))
    rep = check_condition3(x1, top.step.center, 1, ev[2][0].s_class, 1)
    c.eq("gamma = 4d2 - d1*d2 + 2g - 2", Fraction(6), rep.numbers["gamma"])
    c.eq("kappa = d2 - d1*d2", Fraction(-3), rep.numbers["kappa"])
    c.eq("mu*gamma - 2*kappa = 2d2 + d1*d2 + 2g - 2", Fraction(12),
         rep.numbers["mu_gamma"] - rep.numbers["two_kappa"])
    reps = check_tower_theorem2(top, ev)
    c.eq("theorem 2 verdicts", ["Pass", "Pass"], _verdicts(reps))
    c.eq("step 2 passes through condition 3", Condition.COND3, reps[1].matched_condition)


def _six_lines(c: _Collector) -> None:
    top, ev = load_tower(script_text("coordinate_lines.tower"))
    y = top.at_level(4)
    c.eq("c1 of P3 blown up at four points", y.div_class({"H": 4, "E1": -2, "E2": -2, "E3": -2,
                                                          "E4": -2}), y.c1)
    c.eq("E1.E1 = -L1", -y.curve("L1"), intersect_dd(y.div("E1"), y.div("E1")))
    c.eq("E1.L1 = -1", Fraction(-1), pair_dc(y.div("E1"), y.curve("L1")))
    c.eq("H.E1 = 0", y.zero_curve(), intersect_dd(y.div("H"), y.div("E1")))
    c.eq("H.L1 = 0", Fraction(0), pair_dc(y.div("H"), y.curve("L1")))
    c.eq("c2 after a point blowup", base_space("P3").blowup_point().curve_class({"HH": 6}),
         base_space("P3").blowup_point().c2)
    gammas = [gamma(v.parent, v.step.center, v.step.genus) for v in top.chain()[5:]]
    t1 = check_tower_theorem1(top)[4:]
    c1c = [r.numbers["c1_dot_C"] for r in t1]
    c.eq("gamma of the six lines", [Fraction(-2)] * 6, gammas)
    c.eq("c1.C of the six lines", [Fraction(0)] * 6, c1c)
    c.eq("theorem 1 verdicts for the lines", ["Pass"] * 6, _verdicts(t1))
    c.eq("theorem 2 verdicts (lines unique in their classes)", ["Fail"] * 6,
         _verdicts(check_tower_theorem2(top, ev)[4:]))


def _two_lines(c: _Collector) -> None:
    top, ev = load_tower(script_text("two_coordinate_lines.tower"))
    y, x3, z = top.at_level(2), top.at_level(3), top
    c.eq("c1(Y) = 4H - 2E1 - 2E2", y.div_class({"H": 4, "E1": -2, "E2": -2}), y.c1)
    c.eq("gamma of the first line on Y", Fraction(0), gamma(y, x3.step.center, 0))
    reps = check_tower_theorem2(top, ev)
    c.eq("theorem 2 verdict at the first line", Verdict.FAIL, reps[2].verdict)
    c.eq("c1 at the Z level", x3.div_class({"H": 4, "E1": -2, "E2": -2, "F1": -1}), x3.c1)
    c.eq("c1(Z).C via expression", Fraction(1), eval_expr(x3, "c1 * (1*HH - 1*L1 - 1*M1)"))
    c.eq("gamma of the second line on Z", Fraction(-1), gamma(x3, z.step.center, 0))
    s_tilde = strict_transform_hypersurface(x3, y.div_class({"H": 1, "E1": -1, "E2": -1}), 1)
    c.eq("strict transform of the plane", x3.div_class({"H": 1, "E1": -1, "E2": -1, "F1": -1}),
         s_tilde)
    rep = check_condition3(x3, z.step.center, 0, s_tilde, 1)
    c.eq("kappa", Fraction(-1), rep.numbers["kappa"])
    c.eq("2 kappa", Fraction(-2), rep.numbers["two_kappa"])
    c.eq("mu gamma", Fraction(-1), rep.numbers["mu_gamma"])
    c.eq("theorem 2 verdict at the second line", Verdict.PASS, reps[3].verdict)
    c.eq("matched condition at the second line", Condition.COND2, reps[3].matched_condition)
    inv = c0_invariants(-1, -1, 1)
    c.eq("tau", Fraction(-1), inv.tau)
    c.eq("F.C0", Fraction(0), inv.f_dot_c0)
    f = z.div("F2")
    c.eq("F.M = -1", Fraction(-1), pair_dc(f, z.curve("M2")))
    c.eq("pushforward of F.F is -C", -z.step.center, pushforward_curve(z, intersect_dd(f, f)))
    c.eq("F.F.F = -gamma", Fraction(1), triple(f, f, f))


def _vertical(c: _Collector) -> None:
    top, ev = load_tower(script_text("p2p1_vertical.tower"))
    x0 = top.at_level(0)
    a, b = Fraction(2), Fraction(3)
    eta = x0.div_class({"A": a, "B": b})
    c.eq("eta.eta for eta = aA + bB (a=2, b=3)", x0.curve_class({"l": 2 * a * b, "m": b * b}),
         eta_square(x0, eta))
    c.eq("A.A = 0", x0.zero_curve(), intersect_dd(x0.div("A"), x0.div("A")))
    c.eq("A.B = l", x0.curve("l"), intersect_dd(x0.div("A"), x0.div("B")))
    c.eq("B.B = m", x0.curve("m"), intersect_dd(x0.div("B"), x0.div("B")))
    c.eq("c1 of P2xP1", x0.div_class({"A": 2, "B": 3}), x0.c1)
    reps = check_tower_theorem2(top, ev)
    c.eq("gamma of the vertical lines", [Fraction(0)] * 3, [r.numbers["gamma"] for r in reps])
    c.eq("kappa of the vertical lines", [Fraction(0)] * 3, [r.numbers["kappa"] for r in reps])
    c.eq("theorem 2 verdicts", ["Fail"] * 3, _verdicts(reps))


def _horizontal(c: _Collector) -> None:
    top, ev = load_tower(script_text("p2p1_horizontal.tower"))
    reps = check_tower_theorem2(top, ev)
    # conic (d=2, g=0), cubic (d=3, g=1), line (d=1, g=0)
    c.eq("gamma = 3d + 2g - 2", [Fraction(4), Fraction(9), Fraction(1)],
         [r.numbers["gamma"] for r in reps])
    c.eq("2 kappa", [Fraction(0)] * 3, [r.numbers["two_kappa"] for r in reps])
    c.eq("theorem 2 verdicts", ["Pass"] * 3, _verdicts(reps))
    c.eq("tau = -gamma", [-r.numbers["gamma"] for r in reps], [r.numbers["tau"] for r in reps])
    parent = top.parent
    s_tilde = strict_transform_hypersurface(top, parent.div("A"), 1)
    c.eq("strict transform of P2 x p", top.div_class({"A": 1, "F3": -1}), s_tilde)


def _three_vertical(c: _Collector) -> None:
    top, _ = load_tower(script_text("p2p1_three_lines.tower"))
    reps = check_tower_theorem1(top)
    c.eq("c1(X_j).C_j", [Fraction(2)] * 3, [r.numbers["c1_dot_C"] for r in reps])
    c.eq("theorem 1 verdicts", ["Pass"] * 3, _verdicts(reps))


def _ruled(c: _Collector) -> None:
    c.eq("V = M: (V.V, F.V)", (Fraction(0), Fraction(-1)), ruled_numbers(2, 1, -1, 0, 1))
    vv, fv = ruled_numbers(3, 1, -2, 1, 0)
    c.eq("V = C0, tau0 = 3, gamma = -2: F.C0 = (gamma - tau0)/2", Fraction(-5, 2), fv)
    c.eq("tau0 = 0, (a, b) = (3, 1) allowed", True, hartshorne_case_check(0, 3, 1))
    c.eq("tau0 = 4, (a, b) = (2, -4) allowed", True, hartshorne_case_check(4, 2, -4))


def _spectral(c: _Collector) -> None:
    v = base_space("P3").blowup_point()
    rep = degrees_report(v, AutAction([[2, 0], [0, 1]], [[1, 0], [0, 1]]))
    c.eq("non-unimodular action rejected", "Fail", rep.unimodularity)
    c.eq("x^2 - 3x + 1", "x^2 - 3*x + 1", str(char_poly([[2, 1], [1, 1]])))


ENTRIES: dict[str, Callable[[_Collector], None]] = {
    "plane curves": _plane_curves,
    "conic and cubic": _conic_and_cubic,
    "six coordinate lines": _six_lines,
    "two coordinate lines": _two_lines,
    "P2xP1 vertical lines": _vertical,
    "P2xP1 horizontal curves": _horizontal,
    "P2xP1 three vertical lines": _three_vertical,
    "ruled-surface arithmetic": _ruled,
    "integer-matrix screen": _spectral,
}


def run_corpus() -> list[Claim]:
    claims: list[Claim] = []
    for name, fn in ENTRIES.items():
        col = _Collector(name)
        fn(col)
        claims.extend(col.claims)
    return claims


def corpus_towers() -> dict[str, Variety]:
    return {name: load_tower(script_text(name))[0] for name in SCRIPTS}
