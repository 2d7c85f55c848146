"""Blowup towers over P^3, P^2 x P^1 and P^1 x P^1 x P^1.

Each :class:`Variety` is one level of a tower.  Bases are appended to, never
reordered: the pullback of a parent class is the parent's coefficient vector
followed by a zero in the new slot, and the new slot always holds the
exceptional divisor (``E``/``F``) or its line/fibre class (``L``/``M``).

Blowing up a curve ``C`` of genus ``g`` with normal-bundle degree
``gamma = c1.C + 2g - 2`` uses the table

    pi*a . F  = (a.C) M          F . F = -pi*C + gamma M
    pi*b . F  = 0                F . M = -1

and ``c1 -> pi*c1 - F``, ``c2 -> pi*(c2 + C) - (c1.C) M``.  Blowing up a point
uses ``E.E = -L``, ``E.L = -1``, ``c1 -> pi*c1 - 2E``, ``c2 -> pi*c2``.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BasisMismatch, NotACurveBlowup, PreconditionError
from .ring import Coeffs, CurveClass, DivisorClass, IntersectionTables, as_rational, pair_dc

BASE_KINDS = ("P3", "P2xP1", "P1x3")
_BASE_ALIASES = {"P1xP1xP1": "P1x3", "P^3": "P3"}


@dataclass(frozen=True, eq=False)
class BlowupStep:
    kind: str
    center: Optional[CurveClass] = None
    genus: Optional[int] = None

    def __post_init__(self):
        if self.kind == "point":
            if self.center is not None or self.genus is not None:
                raise PreconditionError("a point blowup takes no center class or genus")
        elif self.kind == "curve":
            if not isinstance(self.center, CurveClass):
                raise PreconditionError("a curve blowup needs a CurveClass center")
            if self.center.is_zero():
                raise PreconditionError("curve center class must be nonzero")
            if not isinstance(self.genus, int) or isinstance(self.genus, bool) or self.genus < 0:
                raise PreconditionError(f"genus must be a non-negative integer, got {self.genus!r}")
        else:
            raise PreconditionError(f"unknown blowup kind {self.kind!r}")

    @classmethod
    def point(cls) -> "BlowupStep":
        return cls("point")

    @classmethod
    def curve(cls, center: CurveClass, genus: int) -> "BlowupStep":
        return cls("curve", center, genus)

    def token(self) -> str:
        if self.kind == "point":
            return "point"
        coeffs = ",".join(str(c) for c in self.center.coeffs)
        return f"curve[g={self.genus};{coeffs}]"

    def __str__(self):
        if self.kind == "point":
            return "point"
        return f"curve genus={self.genus} class={self.center}"


@dataclass(frozen=True, eq=False)
class Variety:
    id: str
    base: str
    level: int
    div_basis: tuple[str, ...]
    curve_basis: tuple[str, ...]
    tables: IntersectionTables
    c1_coeffs: Coeffs
    c2_coeffs: Coeffs
    parent: Optional["Variety"] = None
    step: Optional[BlowupStep] = None

    @property
    def parent_id(self) -> Optional[str]:
        return None if self.parent is None else self.parent.id

    @property
    def rank(self) -> int:
        return len(self.div_basis)

    @property
    def c1(self) -> DivisorClass:
        return DivisorClass(self, self.c1_coeffs)

    @property
    def c2(self) -> CurveClass:
        return CurveClass(self, self.c2_coeffs)

    def div(self, label: str) -> DivisorClass:
        try:
            i = self.div_basis.index(label)
        except ValueError:
            raise KeyError(f"no divisor basis element {label!r} on {self.id}") from None
        return DivisorClass(self, [int(k == i) for k in range(self.rank)])

    def curve(self, label: str) -> CurveClass:
        try:
            i = self.curve_basis.index(label)
        except ValueError:
            raise KeyError(f"no curve basis element {label!r} on {self.id}") from None
        return CurveClass(self, [int(k == i) for k in range(self.rank)])

    def basis_class(self, label: str):
        if label in self.div_basis:
            return self.div(label)
        if label in self.curve_basis:
            return self.curve(label)
        raise KeyError(label)

    def div_class(self, coeffs) -> DivisorClass:
        """Build a divisor class from a sequence or a ``{label: coeff}`` mapping."""
        if isinstance(coeffs, dict):
            unknown = set(coeffs) - set(self.div_basis)
            if unknown:
                raise KeyError(f"unknown divisor labels {sorted(unknown)}")
            coeffs = [coeffs.get(lab, 0) for lab in self.div_basis]
        return DivisorClass(self, coeffs)

    def curve_class(self, coeffs) -> CurveClass:
        if isinstance(coeffs, dict):
            unknown = set(coeffs) - set(self.curve_basis)
            if unknown:
                raise KeyError(f"unknown curve labels {sorted(unknown)}")
            coeffs = [coeffs.get(lab, 0) for lab in self.curve_basis]
        return CurveClass(self, coeffs)

    def zero_div(self) -> DivisorClass:
        return DivisorClass(self, [0] * self.rank)

    def zero_curve(self) -> CurveClass:
        return CurveClass(self, [0] * self.rank)

    def chain(self) -> list["Variety"]:
        """Levels from the base up to and including this one."""
        out = []
        v: Optional[Variety] = self
        while v is not None:
            out.append(v)
            v = v.parent
        return out[::-1]

    def at_level(self, k: int) -> "Variety":
        chain = self.chain()
        if not 0 <= k < len(chain):
            raise PreconditionError(f"level {k} out of range 0..{len(chain) - 1}")
        return chain[k]

    def count(self, kind: str) -> int:
        return sum(1 for v in self.chain()[1:] if v.step.kind == kind)

    def blowup_point(self) -> "Variety":
        return blowup_point(self)

    def blowup_curve(self, center: CurveClass, genus: int) -> "Variety":
        return blowup_curve(self, center, genus)

    def __repr__(self):
        return f"Variety({self.id}, div={list(self.div_basis)})"


def _base(kind, div_basis, curve_basis, dd, dc, c1, c2) -> Variety:
    return Variety(
        id=kind, base=kind, level=0,
        div_basis=tuple(div_basis), curve_basis=tuple(curve_basis),
        tables=IntersectionTables.from_lists(dd, dc),
        c1_coeffs=tuple(Fraction(c) for c in c1),
        c2_coeffs=tuple(Fraction(c) for c in c2),
    )


def normalize_base_kind(kind: str) -> str:
    kind = _BASE_ALIASES.get(kind, kind)
    if kind not in BASE_KINDS:
        raise PreconditionError(f"unknown base space {kind!r}; expected one of {BASE_KINDS}")
    return kind


def base_space(kind: str) -> Variety:
    """The untouched base level with its hard-coded ring and Chern classes."""
    kind = normalize_base_kind(kind)
    if kind == "P3":
        return _base("P3", ["H"], ["HH"], [[[1]]], [[1]], [4], [6])
    if kind == "P2xP1":
        # A = P2 x pt, B = P1 x P1, l = P1 x pt, m = pt x P1
        dd = [[[0, 0], [1, 0]],
              [[1, 0], [0, 1]]]
        dc = [[0, 1],
              [1, 0]]
        # c(P2 x P1) = (1 + 3h + 3h^2)(1 + 2k) with h = B, k = A: c2 = 3 h^2 + 6 hk
        return _base("P2xP1", ["A", "B"], ["l", "m"], dd, dc, [2, 3], [6, 3])
    dd = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            if i != j:
                dd[i][j][3 - i - j] = 1
    dc = [[int(i == j) for j in range(3)] for i in range(3)]
    return _base("P1x3", ["D1", "D2", "D3"], ["C1", "C2", "C3"], dd, dc, [2, 2, 2], [4, 4, 4])


def _child_id(parent: Variety, step: BlowupStep) -> str:
    digest = hashlib.sha1(f"{parent.id}|{step.token()}".encode()).hexdigest()[:10]
    return f"{parent.base}.{parent.level + 1}-{digest}"


def _extend_dd(parent: Variety) -> list[list[list[Fraction]]]:
    n = parent.rank
    dd = [[list(parent.tables.dd[i][j]) + [Fraction(0)] for j in range(n)] + [None]
          for i in range(n)]
    dd.append([None] * (n + 1))
    return dd


def _extend_dc(parent: Variety) -> list[list[Fraction]]:
    n = parent.rank
    dc = [list(row) + [Fraction(0)] for row in parent.tables.dc]
    dc.append([Fraction(0)] * n + [Fraction(-1)])
    return dc


def blowup_point(parent: Variety) -> Variety:
    n = parent.rank
    k = parent.count("point") + 1
    step = BlowupStep.point()
    dd = _extend_dd(parent)
    zero = [Fraction(0)] * (n + 1)
    for i in range(n):
        dd[i][n] = zero
        dd[n][i] = zero
    dd[n][n] = [Fraction(0)] * n + [Fraction(-1)]
    return Variety(
        id=_child_id(parent, step), base=parent.base, level=parent.level + 1,
        div_basis=parent.div_basis + (f"E{k}",),
        curve_basis=parent.curve_basis + (f"L{k}",),
        tables=IntersectionTables.from_lists(dd, _extend_dc(parent)),
        c1_coeffs=parent.c1_coeffs + (Fraction(-2),),
        c2_coeffs=parent.c2_coeffs + (Fraction(0),),
        parent=parent, step=step,
    )


def _check_on(v: Variety, cls, what: str = "class") -> None:
    if cls.space.id != v.id:
        raise BasisMismatch(f"{what} lives on {cls.space.id}, expected {v.id}")


def gamma(parent: Variety, center: CurveClass, genus: int) -> Fraction:
    """Normal-bundle degree c1(parent).C + 2g - 2 of a curve center."""
    _check_on(parent, center, "center")
    return pair_dc(parent.c1, center) + 2 * genus - 2


def blowup_curve(parent: Variety, center: CurveClass, genus: int) -> Variety:
    _check_on(parent, center, "center")
    step = BlowupStep.curve(center, genus)
    n = parent.rank
    k = parent.count("curve") + 1
    g = gamma(parent, center, genus)
    dd = _extend_dd(parent)
    for i in range(n):
        a_dot_c = pair_dc(parent.div(parent.div_basis[i]), center)
        col = [Fraction(0)] * n + [a_dot_c]
        dd[i][n] = col
        dd[n][i] = col
    dd[n][n] = [-c for c in center.coeffs] + [g]
    c1_dot_c = pair_dc(parent.c1, center)
    c2 = tuple(a + b for a, b in zip(parent.c2_coeffs, center.coeffs)) + (-c1_dot_c,)
    return Variety(
        id=_child_id(parent, step), base=parent.base, level=parent.level + 1,
        div_basis=parent.div_basis + (f"F{k}",),
        curve_basis=parent.curve_basis + (f"M{k}",),
        tables=IntersectionTables.from_lists(dd, _extend_dc(parent)),
        c1_coeffs=parent.c1_coeffs + (Fraction(-1),),
        c2_coeffs=c2,
        parent=parent, step=step,
    )


def _check_child(child: Variety) -> Variety:
    if child.parent is None:
        raise BasisMismatch(f"{child.id} is a base space and has no parent")
    return child.parent


def pullback_div(child: Variety, x: DivisorClass) -> DivisorClass:
    parent = _check_child(child)
    _check_on(parent, x)
    return DivisorClass(child, x.coeffs + (Fraction(0),))


def pullback_curve(child: Variety, c: CurveClass) -> CurveClass:
    parent = _check_child(child)
    _check_on(parent, c)
    return CurveClass(child, c.coeffs + (Fraction(0),))


def pushforward_div(child: Variety, x: DivisorClass) -> DivisorClass:
    parent = _check_child(child)
    _check_on(child, x)
    return DivisorClass(parent, x.coeffs[:-1])


def pushforward_curve(child: Variety, c: CurveClass) -> CurveClass:
    parent = _check_child(child)
    _check_on(child, c)
    return CurveClass(parent, c.coeffs[:-1])


def pullback_to(target: Variety, cls):
    """Pull a class back from any ancestor of ``target`` (or ``target`` itself)."""
    chain = target.chain()
    ids = [v.id for v in chain]
    if cls.space.id not in ids:
        raise BasisMismatch(f"{cls.space.id} is not below {target.id}")
    pad = len(chain) - 1 - ids.index(cls.space.id)
    tail = (Fraction(0),) * pad
    return type(cls)(target, cls.coeffs + tail)


def exceptional_divisor(child: Variety) -> DivisorClass:
    _check_child(child)
    return child.div(child.div_basis[-1])


def exceptional_curve(child: Variety) -> CurveClass:
    _check_child(child)
    return child.curve(child.curve_basis[-1])


def strict_transform_hypersurface(child: Variety, s: DivisorClass, mu: int) -> DivisorClass:
    """Class pi*(S) - mu F of the strict transform of a hypersurface through the center."""
    if child.step is None or child.step.kind != "curve":
        raise NotACurveBlowup()
    mu = as_rational(mu)
    if mu < 1:
        raise PreconditionError(f"multiplicity mu must be >= 1, got {mu}")
    return pullback_div(child, s) - mu * exceptional_divisor(child)


def chern(v: Variety) -> tuple[DivisorClass, CurveClass]:
    return v.c1, v.c2
