"""Exact graded intersection pairing on a threefold.

Everything here works over an abstract basis: a space is any object with
``id``, ``div_basis``, ``curve_basis`` and ``tables`` attributes.  Scalars
are :class:`fractions.Fraction`, which is always reduced with a positive
denominator, so class equality is plain coefficient equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import BasisMismatch

Scalar = Union[int, Fraction]
Coeffs = tuple[Fraction, ...]


def as_rational(value) -> Fraction:
    """Coerce ints/Fractions (and exact numeric strings) to Fraction; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (Fraction, int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"inexact scalar {value!r}; use int or Fraction")


def _coeffs(values: Iterable) -> Coeffs:
    return tuple(as_rational(v) for v in values)


def format_coeffs(coeffs: Sequence[Fraction], labels: Sequence[str]) -> str:
    """Render ``c*label`` terms joined by signs, e.g. ``1*HH - 1*L2``; zero renders as ``0``."""
    parts: list[str] = []
    for c, label in zip(coeffs, labels):
        if c == 0:
            continue
        mag = f"{abs(c)}*{label}"
        if not parts:
            parts.append(mag if c > 0 else f"-{mag}")
        else:
            parts.append(("+ " if c > 0 else "- ") + mag)
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class IntersectionTables:
    """Products of basis elements.

    ``dd[i][j]`` is the curve-coefficient vector of ``D_i . D_j`` and
    ``dc[i][k]`` the number ``D_i . C_k``.
    """

    dd: tuple[tuple[Coeffs, ...], ...]
    dc: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.dd)
        for i in range(n):
            if len(self.dd[i]) != n:
                raise ValueError("dd table is not square")
            for j in range(i):
                if self.dd[i][j] != self.dd[j][i]:
                    raise ValueError(f"dd table not symmetric at ({i}, {j})")

    @classmethod
    def from_lists(cls, dd, dc) -> "IntersectionTables":
        return cls(
            tuple(tuple(_coeffs(v) for v in row) for row in dd),
            tuple(_coeffs(row) for row in dc),
        )


class _GradedClass:
    __slots__ = ()
    grade: int

    def _basis(self) -> tuple[str, ...]:
        raise NotImplementedError

    @property
    def variety_id(self) -> str:
        return self.space.id

    def _check_same(self, other) -> None:
        if type(other) is not type(self):
            raise BasisMismatch(f"grade {self.grade} vs {getattr(other, 'grade', '?')}")
        if other.space.id != self.space.id:
            raise BasisMismatch(f"{self.space.id} vs {other.space.id}")

    def _new(self, coeffs):
        return type(self)(self.space, coeffs)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check_same(other)
        return self._new(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        self._check_same(other)
        return self._new(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return self._new(tuple(-a for a in self.coeffs))

    def scale(self, s: Scalar):
        s = as_rational(s)
        return self._new(tuple(s * a for a in self.coeffs))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coefficient(self, label: str) -> Fraction:
        return self.coeffs[self._basis().index(label)]

    def as_dict(self) -> dict[str, Fraction]:
        return {lab: c for lab, c in zip(self._basis(), self.coeffs) if c != 0}

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.space.id == other.space.id and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.grade, self.space.id, self.coeffs))

    def __str__(self):
        return format_coeffs(self.coeffs, self._basis())

    def __repr__(self):
        return f"{type(self).__name__}({self.space.id}, {self})"


class DivisorClass(_GradedClass):
    """A class in H^{1,1}, as coefficients over ``space.div_basis``."""

    __slots__ = ("space", "coeffs")
    grade = 1

    def __init__(self, space, coeffs: Iterable):
        coeffs = _coeffs(coeffs)
        if len(coeffs) != len(space.div_basis):
            raise BasisMismatch(
                f"{len(coeffs)} coefficients for H^1,1 rank {len(space.div_basis)}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("classes are immutable")

    def _basis(self):
        return self.space.div_basis

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            return intersect_dd(self, other)
        if isinstance(other, CurveClass):
            return pair_dc(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented


class CurveClass(_GradedClass):
    """A class in H^{2,2}, as coefficients over ``space.curve_basis``."""

    __slots__ = ("space", "coeffs")
    grade = 2

    def __init__(self, space, coeffs: Iterable):
        coeffs = _coeffs(coeffs)
        if len(coeffs) != len(space.curve_basis):
            raise BasisMismatch(
                f"{len(coeffs)} coefficients for H^2,2 rank {len(space.curve_basis)}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("classes are immutable")

    def _basis(self):
        return self.space.curve_basis

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            return pair_dc(other, self)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented


def lincomb(terms: Sequence[tuple[Scalar, _GradedClass]]):
    """Exact linear combination of same-grade classes on one space."""
    if not terms:
        raise ValueError("lincomb needs at least one term")
    first = terms[0][1]
    acc = [Fraction(0)] * len(first.coeffs)
    for s, cls in terms:
        first._check_same(cls)
        s = as_rational(s)
        if s == 0:
            continue
        for k, c in enumerate(cls.coeffs):
            if c:
                acc[k] += s * c
    return first._new(acc)


def _same_space(*classes) -> None:
    ids = {c.space.id for c in classes}
    if len(ids) != 1:
        raise BasisMismatch(" vs ".join(sorted(ids)))


def intersect_dd(x: DivisorClass, y: DivisorClass) -> CurveClass:
    """Product of two divisor classes, by bilinear extension of the dd table."""
    if not (isinstance(x, DivisorClass) and isinstance(y, DivisorClass)):
        raise BasisMismatch("intersect_dd takes two divisor classes")
    _same_space(x, y)
    dd = x.space.tables.dd
    acc = [Fraction(0)] * len(x.space.curve_basis)
    for i, xi in enumerate(x.coeffs):
        if not xi:
            continue
        row = dd[i]
        for j, yj in enumerate(y.coeffs):
            if not yj:
                continue
            w = xi * yj
            for k, c in enumerate(row[j]):
                if c:
                    acc[k] += w * c
    return CurveClass(x.space, acc)


def pair_dc(x: DivisorClass, c: CurveClass) -> Fraction:
    if not (isinstance(x, DivisorClass) and isinstance(c, CurveClass)):
        raise BasisMismatch("pair_dc takes a divisor class and a curve class")
    _same_space(x, c)
    dc = x.space.tables.dc
    total = Fraction(0)
    for i, xi in enumerate(x.coeffs):
        if not xi:
            continue
        row = dc[i]
        for k, ck in enumerate(c.coeffs):
            if ck and row[k]:
                total += xi * ck * row[k]
    return total


def triple(x: DivisorClass, y: DivisorClass, z: DivisorClass) -> Fraction:
    """Top intersection number x.y.z."""
    return pair_dc(z, intersect_dd(x, y))
