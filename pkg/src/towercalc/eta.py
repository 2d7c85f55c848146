"""Zero-square divisor classes on P3 blown up at general points and disjoint curves.

On that space, write ``eta = a H - sum e_i E_i - sum f_j F_j``.  Then
``eta.eta = 0`` forces every ``e_i = 0`` and, for each curve with ``f_j != 0``,
the fixed ratio ``f_j / a = 2 d_j / (4 d_j + 2 g_j - 2)``; the ``HH``
coefficient then leaves ``sum_{j in S} d_j r_j^2 = 1`` over the support ``S``.
All ratios are rational, so every solution is a real multiple of a rational
class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .conditions import initial_layer_length
from .errors import EnumerationBoundExceeded, PreconditionError
from .ring import CurveClass, DivisorClass, intersect_dd
from .tower import Variety, base_space

MAX_CURVES = 20


@dataclass(frozen=True)
class X1Config:
    points: int
    curves: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(tuple(c) for c in self.curves))
        if self.points < 0:
            raise PreconditionError("number of points must be non-negative")
        for d, g in self.curves:
            if d < 1 or g < 0:
                raise PreconditionError(f"need d >= 1 and g >= 0, got (d={d}, g={g})")


@dataclass(frozen=True)
class SystemDescription:
    config: X1Config
    ratios: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]

    def equations(self) -> list[str]:
        lines = ["a^2 = " + (" + ".join(f"{d}*f{j + 1}^2" for j, (d, _) in
                                        enumerate(self.config.curves)) or "0")]
        lines += [f"e{i + 1}^2 = 0" for i in range(self.config.points)]
        for j, (d, g) in enumerate(self.config.curves):
            lines.append(f"2*a*{d}*f{j + 1} = f{j + 1}^2*{4 * d + 2 * g - 2}"
                         f"  (f{j + 1} != 0 => f{j + 1}/a = {self.ratios[j]})")
        lines.append("nonzero solution with support S needs sum_{j in S} d_j r_j^2 = 1")
        return lines

    def to_json(self) -> dict:
        return {
            "points": self.config.points,
            "curves": [{"d": d, "g": g} for d, g in self.config.curves],
            "ratios": [str(r) for r in self.ratios],
            "weights": [str(w) for w in self.weights],
            "equations": self.equations(),
        }


@dataclass(frozen=True)
class EtaRay:
    """The ray of ``H - sum_{j in support} r_j F_j`` (``a = 1``, all ``e_i = 0``)."""

    support: tuple[int, ...]
    e: tuple[Fraction, ...]
    f: tuple[Fraction, ...]
    a: Fraction = Fraction(1)

    @property
    def all_f_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.f)

    def as_class(self, v: Variety) -> DivisorClass:
        """The ray representative on an X1-type tower ``v`` (labels H, E_i, F_j)."""
        coeffs = {"H": self.a}
        coeffs.update({f"E{i + 1}": -x for i, x in enumerate(self.e)})
        coeffs.update({f"F{j + 1}": -x for j, x in enumerate(self.f)})
        return v.div_class(coeffs)

    def __str__(self):
        terms = ["H"] + [f"{x}*F{j + 1}" for j, x in enumerate(self.f) if x]
        return " - ".join(terms)

    def to_json(self) -> dict:
        return {
            "support": [j + 1 for j in self.support],
            "a": str(self.a),
            "e": [str(x) for x in self.e],
            "f": [str(x) for x in self.f],
            "class": str(self),
            "all_f_nonnegative": self.all_f_nonnegative,
        }


def eta_square(v: Variety, eta: DivisorClass) -> CurveClass:
    return intersect_dd(eta, eta)


def build_x1(config: X1Config) -> Variety:
    """Blow up ``points`` points, then the curves as pure ``d*HH`` classes."""
    v = base_space("P3")
    for _ in range(config.points):
        v = v.blowup_point()
    for d, g in config.curves:
        v = v.blowup_curve(v.curve_class({"HH": d}), g)
    return v


def x1_system(config: X1Config) -> SystemDescription:
    # 4d + 2g - 2 >= 2 for d >= 1, so every ratio is defined
    ratios = tuple(Fraction(2 * d, 4 * d + 2 * g - 2) for d, g in config.curves)
    weights = tuple(d * r * r for (d, _), r in zip(config.curves, ratios))
    return SystemDescription(config, ratios, weights)


def _supports_summing_to_one(weights: Sequence[Fraction]) -> list[tuple[int, ...]]:
    den = lcm(*(w.denominator for w in weights)) if weights else 1
    ints = [int(w * den) for w in weights]
    sums = [(0, 0)]
    for j, w in enumerate(ints):
        bit = 1 << j
        sums += [(s + w, m | bit) for s, m in sums if s + w <= den]
    hits = [m for s, m in sums if s == den and m]
    supports = [tuple(j for j in range(len(ints)) if m >> j & 1) for m in hits]
    return sorted(supports)


def x1_solve(config: X1Config, max_curves: int = MAX_CURVES) -> list[EtaRay]:
    """All zero-square rays, one per admissible support, in support-lexicographic order.

    Each returned ray is re-checked by squaring it on the explicitly built tower.
    """
    n = len(config.curves)
    if n > max_curves:
        raise EnumerationBoundExceeded(n, max_curves)
    system = x1_system(config)
    tower = build_x1(config)
    rays = []
    for support in _supports_summing_to_one(system.weights):
        f = tuple(system.ratios[j] if j in support else Fraction(0) for j in range(n))
        ray = EtaRay(support, (Fraction(0),) * config.points, f)
        if not eta_square(tower, ray.as_class(tower)).is_zero():
            raise AssertionError(f"ray {ray} does not square to zero")
        rays.append(ray)
    return rays


def x1_config_from_tower(top: Variety) -> X1Config:
    """Read off points and (degree, genus) pairs from a tower that is one initial layer over P3."""
    if top.base != "P3" or initial_layer_length(top) != top.level:
        raise PreconditionError("tower is not X1-shaped: need base P3 and only general-position "
                                "points and base-class curves")
    points, curves = 0, []
    for v in top.chain()[1:]:
        if v.step.kind == "point":
            points += 1
            continue
        d = v.step.center.coefficient("HH")
        if d.denominator != 1 or d < 1:
            raise PreconditionError(f"curve degree must be a positive integer, got {d}")
        curves.append((int(d), v.step.genus))
    return X1Config(points, tuple(curves))
