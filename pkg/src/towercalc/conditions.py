"""Per-step obstruction checks and ruled-surface arithmetic on exceptional divisors.

A curve step ``C`` (genus ``g``) on ``Y`` is summarised by

* ``gamma = c1(Y).C + 2g - 2``, the degree of the normal bundle,
* for a hypersurface ``S`` containing ``C`` with multiplicity ``mu``:
  ``kappa = S.C`` and the curve ``C0 = S~ . F`` on the exceptional divisor,
  with ``C0.C0 = tau = 2 mu kappa - mu^2 gamma`` and ``F.C0 = gamma mu - kappa``.

The first test is ``c1.C != 2g - 2``; the second family is "point steps",
"``gamma < 0`` and C is not alone in its class", or "``2 kappa < mu gamma``".
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import BasisMismatch, EvidenceMismatch, PreconditionError
from .ring import CurveClass, DivisorClass, as_rational, pair_dc
from .tower import BlowupStep, Variety, gamma as _gamma


class Verdict(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    NEEDS_ASSERTION = "NeedsAssertion"


class Condition(str, Enum):
    THM1 = "Thm1"
    COND1 = "Cond1"
    COND2 = "Cond2"
    COND3 = "Cond3"


@dataclass(frozen=True)
class C0Invariants:
    tau: Fraction
    mu: Fraction
    f_dot_c0: Fraction
    e_class: tuple[Fraction, Fraction]


@dataclass
class CheckReport:
    step_index: int
    verdict: Verdict
    matched_condition: Optional[Condition]
    numbers: dict[str, Fraction] = field(default_factory=dict)
    notes: str = ""
    passing: tuple[Condition, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict:
        return {
            "level": self.step_index,
            "verdict": self.verdict.value,
            "matched_condition": None if self.matched_condition is None
            else self.matched_condition.value,
            "numbers": {k: str(v) for k, v in sorted(self.numbers.items())},
            "notes": self.notes,
            "passing_conditions": [c.value for c in self.passing],
        }


# -- evidence ---------------------------------------------------------------

@dataclass(frozen=True)
class PointTower:
    """The step belongs to a composition of blowups over points."""


@dataclass(frozen=True)
class Cond2Evidence:
    # None means nobody has asserted it either way
    not_unique_in_class: Optional[bool] = None


@dataclass(frozen=True)
class Cond3Evidence:
    s_class: DivisorClass
    mu: int = 1

    def __post_init__(self):
        if not isinstance(self.mu, int) or isinstance(self.mu, bool) or self.mu < 1:
            raise PreconditionError(f"multiplicity mu must be an integer >= 1, got {self.mu!r}")


StepEvidence = Union[PointTower, Cond2Evidence, Cond3Evidence]

_NUM_RE = re.compile(r"=(-?\d+(?:/\d+)?)")


def _fmt(numbers: dict[str, Fraction], *names: str) -> str:
    return ", ".join(f"{n}={numbers[n]}" for n in names)


def cited_numbers(notes: str) -> list[Fraction]:
    """Every ``name=value`` number mentioned in a notes string."""
    return [Fraction(m) for m in _NUM_RE.findall(notes)]


# -- theorem-level checks ----------------------------------------------------

def check_theorem1_step(parent: Variety, step: BlowupStep, step_index: int = 0) -> CheckReport:
    if step.kind == "point":
        return CheckReport(step_index, Verdict.PASS, Condition.THM1, {}, "point blowup",
                           (Condition.THM1,))
    if step.center.space.id != parent.id:
        raise BasisMismatch("center is not a class on the parent level")
    nums = {
        "c1_dot_C": pair_dc(parent.c1, step.center),
        "two_g_minus_2": Fraction(2 * step.genus - 2),
    }
    nums["gamma"] = nums["c1_dot_C"] + nums["two_g_minus_2"]
    ok = nums["c1_dot_C"] != nums["two_g_minus_2"]
    rel = "!=" if ok else "=="
    notes = f"c1_dot_C={nums['c1_dot_C']} {rel} two_g_minus_2={nums['two_g_minus_2']}"
    if ok:
        return CheckReport(step_index, Verdict.PASS, Condition.THM1, nums, notes, (Condition.THM1,))
    return CheckReport(step_index, Verdict.FAIL, None, nums, notes)


def _cond2(parent: Variety, step: BlowupStep, ev: Cond2Evidence, step_index: int) -> CheckReport:
    c1c = pair_dc(parent.c1, step.center)
    nums = {
        "c1_dot_C": c1c,
        "two_g_minus_2": Fraction(2 * step.genus - 2),
        "gamma": _gamma(parent, step.center, step.genus),
    }
    base = _fmt(nums, "gamma", "c1_dot_C", "two_g_minus_2")
    if nums["gamma"] >= 0:
        return CheckReport(step_index, Verdict.FAIL, None, nums, f"cond2: gamma >= 0 ({base})")
    if ev.not_unique_in_class is None:
        return CheckReport(step_index, Verdict.NEEDS_ASSERTION, None, nums,
                           f"cond2: gamma < 0 ({base}); needs assertion that C is not "
                           "the unique effective curve in its class")
    if not ev.not_unique_in_class:
        return CheckReport(step_index, Verdict.FAIL, None, nums,
                           f"cond2: gamma < 0 ({base}) but C asserted unique in its class")
    return CheckReport(step_index, Verdict.PASS, Condition.COND2, nums,
                       f"cond2: gamma < 0 ({base}), C not unique in its class",
                       (Condition.COND2,))


def check_condition3(parent: Variety, center: CurveClass, genus: int, s_class: DivisorClass,
                     mu: int, step_index: int = 0) -> CheckReport:
    """Test ``2 kappa < mu gamma`` for a hypersurface ``s_class`` through the center."""
    if s_class.space.id != parent.id or center.space.id != parent.id:
        raise BasisMismatch("S and C must be classes on the parent level")
    if mu < 1:
        raise PreconditionError(f"multiplicity mu must be >= 1, got {mu}")
    g = _gamma(parent, center, genus)
    kappa = pair_dc(s_class, center)
    inv = c0_invariants(g, kappa, mu)
    nums = {
        "gamma": g,
        "kappa": kappa,
        "mu": Fraction(mu),
        "tau": inv.tau,
        "f_dot_c0": inv.f_dot_c0,
        "two_kappa": 2 * kappa,
        "mu_gamma": mu * g,
        "c1_dot_C": pair_dc(parent.c1, center),
        "two_g_minus_2": Fraction(2 * genus - 2),
    }
    ok = nums["two_kappa"] < nums["mu_gamma"]
    rel = "<" if ok else ">="
    notes = (f"cond3: two_kappa={nums['two_kappa']} {rel} mu_gamma={nums['mu_gamma']}; "
             f"equivalently tau={nums['tau']} {'<' if ok else '>='} 0 "
             f"({_fmt(nums, 'kappa', 'gamma', 'mu', 'f_dot_c0')})")
    if ok:
        return CheckReport(step_index, Verdict.PASS, Condition.COND3, nums, notes, (Condition.COND3,))
    return CheckReport(step_index, Verdict.FAIL, None, nums, notes)


def check_theorem2_step(parent: Variety, step: BlowupStep, evidence: StepEvidence,
                        step_index: int = 0) -> CheckReport:
    if isinstance(evidence, PointTower):
        if step.kind != "point":
            raise EvidenceMismatch("point-tower evidence on a curve step")
        return CheckReport(step_index, Verdict.PASS, Condition.COND1, {}, "cond1: point blowup",
                           (Condition.COND1,))
    if step.kind != "curve":
        raise EvidenceMismatch("curve evidence on a point step")
    if isinstance(evidence, Cond2Evidence):
        return _cond2(parent, step, evidence, step_index)
    if isinstance(evidence, Cond3Evidence):
        return check_condition3(parent, step.center, step.genus, evidence.s_class, evidence.mu,
                                step_index)
    raise EvidenceMismatch(f"unknown evidence {evidence!r}")


_ORDER = [Condition.COND1, Condition.COND2, Condition.COND3]


def combine_reports(step_index: int, reports: Sequence[CheckReport]) -> CheckReport:
    """Merge several condition checks for one step.

    Every passing condition is listed; ``matched_condition`` is the
    lowest-numbered one.  Without a pass, a pending assertion outranks a fail.
    """
    if len(reports) == 1:
        return reports[0]
    passing = sorted({c for r in reports for c in r.passing}, key=_ORDER.index)
    numbers: dict[str, Fraction] = {}
    for i, r in enumerate(sorted(reports, key=lambda r: not r.passed)):
        for k, v in r.numbers.items():
            if numbers.get(k, v) != v:
                k = f"{k}_{i + 1}"
            numbers.setdefault(k, v)
    notes = "; ".join(r.notes for r in reports)
    if passing:
        return CheckReport(step_index, Verdict.PASS, passing[0], numbers, notes, tuple(passing))
    if any(r.verdict is Verdict.NEEDS_ASSERTION for r in reports):
        return CheckReport(step_index, Verdict.NEEDS_ASSERTION, None, numbers, notes)
    return CheckReport(step_index, Verdict.FAIL, None, numbers, notes)


def is_initial_layer_step(parent: Variety, step: BlowupStep) -> bool:
    """True for a P3 point, or a P3 curve whose class is a pure multiple of the line class."""
    if parent.base != "P3":
        return False
    if step.kind == "point":
        return True
    return not any(step.center.coeffs[1:])


def initial_layer_length(top: Variety) -> int:
    """Number of leading steps that form the general-position layer over P3."""
    n = 0
    for v in top.chain()[1:]:
        if not is_initial_layer_step(v.parent, v.step):
            break
        n += 1
    return n


def check_tower_theorem1(top: Variety) -> list[CheckReport]:
    return [check_theorem1_step(v.parent, v.step, v.level) for v in top.chain()[1:]]


def check_tower_theorem2(top: Variety,
                         evidence: Optional[dict[int, Sequence[StepEvidence]]] = None
                         ) -> list[CheckReport]:
    """Check every step of a tower; ``evidence`` maps a 1-based step index to its evidence.

    Over P3 the leading run of points and base-class curves is the initial
    layer and passes outright.  Curve steps are always tried against the
    second condition (without an assertion unless one is supplied).
    """
    evidence = evidence or {}
    layer = initial_layer_length(top)
    reports = []
    for v in top.chain()[1:]:
        k = v.level
        if k <= layer:
            reports.append(CheckReport(k, Verdict.PASS, None, {},
                                       "initial layer: general-position center of P3"))
            continue
        evs = list(evidence.get(k, ()))
        if v.step.kind == "point":
            evs = [e for e in evs if not isinstance(e, PointTower)] + [PointTower()]
        elif not any(isinstance(e, Cond2Evidence) for e in evs):
            evs.insert(0, Cond2Evidence(None))
        reports.append(combine_reports(
            k, [check_theorem2_step(v.parent, v.step, e, k) for e in evs]))
    return reports


# -- ruled-surface arithmetic -------------------------------------------------

def c0_invariants(gamma, kappa, mu) -> C0Invariants:
    """Invariants of ``C0 = S~ . F`` from gamma, kappa = S.C and the multiplicity mu."""
    gamma, kappa, mu = as_rational(gamma), as_rational(kappa), as_rational(mu)
    if mu < 1:
        raise PreconditionError(f"multiplicity mu must be >= 1, got {mu}")
    tau = 2 * mu * kappa - mu * mu * gamma
    f_dot_c0 = gamma * mu - kappa
    assert f_dot_c0 == (gamma * mu - tau / mu) / 2
    e_class = (-1 / mu, (tau / (mu * mu) + gamma) / 2)
    return C0Invariants(tau, mu, f_dot_c0, e_class)


def ruled_numbers(tau, mu, gamma, a, b) -> tuple[Fraction, Fraction]:
    """``(V.V, F.V)`` for ``V = a C0 + b M`` on the exceptional ruled surface."""
    tau, mu, gamma, a, b = (as_rational(x) for x in (tau, mu, gamma, a, b))
    if mu <= 0:
        raise PreconditionError(f"mu must be positive, got {mu}")
    vv = a * a * tau + 2 * a * b * mu
    fv = a * (gamma * mu - tau / mu) / 2 - b
    return vv, fv


def hartshorne_case_check(tau0, a, b) -> bool:
    """Whether ``a C0 + b M`` is an allowed numerical class of an irreducible curve.

    Encodes the classification on a normalised ruled surface with invariant
    ``tau0 >= 0``: C0 and M themselves, then ``a > 0, b >= 0`` when
    ``tau0 = 0`` and ``a = 1, b >= 0`` or ``a >= 2, b >= -a tau0 / 2`` otherwise.
    """
    tau0, a, b = as_rational(tau0), as_rational(a), as_rational(b)
    if tau0 < 0:
        raise PreconditionError(f"tau0 must be non-negative, got {tau0}")
    if (a, b) in ((1, 0), (0, 1)):
        return True
    if tau0 == 0:
        return a > 0 and b >= 0
    return (a == 1 and b >= 0) or (a >= 2 and b >= -a * tau0 / 2)


def plane_curve_genus(d: int) -> int:
    if not isinstance(d, int) or d < 1:
        raise PreconditionError(f"degree must be a positive integer, got {d!r}")
    return (d - 1) * (d - 2) // 2
