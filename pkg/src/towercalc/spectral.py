"""Integer-matrix analysis of a candidate automorphism action on cohomology.

Matrices act on coefficient column vectors: column ``j`` of ``m11`` holds the
coefficients of ``f*(D_j)`` in the divisor basis, and likewise ``m22`` on the
curve basis.  Characteristic polynomials are computed exactly over the
integers; only the final root isolation is approximate, with an explicit error
bound.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath
from sympy import Poly, divisors, symbols

from .errors import PreconditionError, ShapeMismatch
from .ring import DivisorClass, intersect_dd, pair_dc, triple
from .tower import Variety

DEFAULT_TOL = 1e-9

IntMatrix = tuple[tuple[int, ...], ...]
_x = symbols("x")


def as_int_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    rows = tuple(tuple(int(v) for v in row) for row in m)
    for row, orig in zip(rows, m):
        if any(int(v) != v for v in orig):
            raise PreconditionError("matrix entries must be integers")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise PreconditionError(f"matrix is not square ({n} rows, row lengths "
                                f"{sorted({len(r) for r in rows})})")
    return rows


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(a: Sequence[Sequence], v: Sequence):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, coefficients from the leading term down."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if not coeffs or coeffs[0] != 1:
            raise PreconditionError(f"polynomial must be monic, got {coeffs}")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def constant(self) -> int:
        return self.coefficients[-1]

    def __call__(self, x):
        acc = 0
        for c in self.coefficients:
            acc = acc * x + c
        return acc

    def at_matrix(self, m: Sequence[Sequence[int]]) -> IntMatrix:
        """Horner evaluation at a square integer matrix."""
        m = as_int_matrix(m)
        n = len(m)
        acc = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        for c in self.coefficients:
            acc = mat_mul(acc, m)
            acc = tuple(tuple(v + (c if i == j else 0) for j, v in enumerate(row))
                        for i, row in enumerate(acc))
        return acc

    def __str__(self):
        terms = []
        n = self.degree
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            p = n - k
            mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
            mag = abs(c)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            terms.append(body if not terms and c > 0 else
                         (f"-{body}" if not terms else f"{sign} {body}"))
        return " ".join(terms) or "0"


def char_poly(m: Sequence[Sequence[int]]) -> IntPolynomial:
    """det(xI - m) by Berkowitz's division-free recurrence."""
    a = as_int_matrix(m)
    n = len(a)
    poly = [1]
    for k in range(n):
        row = a[k][:k]
        col = [a[i][k] for i in range(k)]
        toeplitz = [1, -a[k][k]]
        v = col
        for _ in range(k):
            toeplitz.append(-sum(r * x for r, x in zip(row, v)))
            v = [sum(a[r][c] * v[c] for c in range(k)) for r in range(k)]
        poly = [sum(toeplitz[i - j] * poly[j]
                    for j in range(len(poly)) if 0 <= i - j < len(toeplitz))
                for i in range(k + 2)]
    return IntPolynomial(tuple(poly))


def determinant(m: Sequence[Sequence[int]]) -> int:
    p = char_poly(m)
    return (-1) ** p.degree * p.constant


def rational_eigen_screen(p) -> list[int]:
    """All rational roots of a monic integer polynomial (they are integers), ascending.

    Candidates are the divisors of the lowest nonzero coefficient, each
    confirmed by exact evaluation.
    """
    coeffs = list(p.coefficients if isinstance(p, IntPolynomial) else p)
    if not any(coeffs):
        raise PreconditionError("zero polynomial")
    if not isinstance(p, IntPolynomial):
        p = IntPolynomial(tuple(coeffs))
    roots = set()
    while coeffs and coeffs[-1] == 0:
        roots.add(0)
        coeffs.pop()
    c0 = coeffs[-1]
    for d in divisors(abs(c0)):
        for cand in (d, -d):
            if p(cand) == 0:
                roots.add(cand)
    return sorted(roots)


def _squarefree(p: IntPolynomial) -> list[int]:
    q = Poly(list(p.coefficients), _x).sqf_part()
    coeffs = [int(c) for c in q.all_coeffs()]
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def root_modulus_bounds(p: IntPolynomial, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Certified ``(lo, hi)`` enclosing the largest root modulus, with ``hi - lo <= 2 tol``.

    Roots of the square-free part are approximated with mpmath and each is
    enclosed in the disk of radius ``n |q(z_i)| / prod_{j != i} |z_i - z_j|``.
    The union of these disks holds every root and a disk disjoint from the
    others holds exactly one, so pairwise-disjoint disks bound the maximum
    modulus from both sides.  Precision doubles until the enclosure is tight.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    q = _squarefree(p)
    n = len(q) - 1
    if n == 0:
        return 0.0, 0.0
    if n == 1:
        r = float(abs(q[1]))  # monic linear factor: the root is exact
        return r, r
    dps = 30
    for _ in range(8):
        with mpmath.workdps(dps):
            try:
                zs = mpmath.polyroots(q, maxsteps=50 + 10 * n, extraprec=2 * dps)
            except mpmath.libmp.NoConvergence:
                dps *= 2
                continue
            zs = [mpmath.mpc(z) for z in zs]
            scale = 1 + max(abs(z) for z in zs)
            pad = mpmath.mpf(10) ** (5 - dps) * scale ** n
            radii = []
            for i, z in enumerate(zs):
                den = mpmath.fprod(abs(z - w) for j, w in enumerate(zs) if j != i)
                if den == 0:
                    radii = None
                    break
                radii.append(n * abs(mpmath.polyval(q, z)) / den + pad)
            if radii is not None:
                disjoint = all(abs(zs[i] - zs[j]) > radii[i] + radii[j]
                               for i, j in itertools.combinations(range(n), 2))
                lo = max(abs(z) - r for z, r in zip(zs, radii))
                hi = max(abs(z) + r for z, r in zip(zs, radii))
                if disjoint and hi - lo <= 2 * tol:
                    return float(max(lo, 0)), float(hi)
        dps *= 2
    raise ArithmeticError("root isolation did not reach the requested tolerance")


def spectral_radius(m: Sequence[Sequence[int]], tol: float = DEFAULT_TOL) -> float:
    """Largest eigenvalue modulus of an integer matrix, to within ``tol``."""
    a = as_int_matrix(m)
    if not a:
        return 0.0
    lo, hi = root_modulus_bounds(char_poly(a), tol)
    return (lo + hi) / 2


@dataclass(frozen=True)
class AutAction:
    m11: IntMatrix
    m22: IntMatrix

    def __post_init__(self):
        for name in ("m11", "m22"):
            try:
                object.__setattr__(self, name, as_int_matrix(getattr(self, name)))
            except PreconditionError as exc:
                raise ShapeMismatch(f"{name}: {exc}") from None
        if len(self.m11) != len(self.m22):
            raise ShapeMismatch(f"m11 is {len(self.m11)}x{len(self.m11)}, "
                                f"m22 is {len(self.m22)}x{len(self.m22)}")

    @property
    def rank(self) -> int:
        return len(self.m11)

    def pull_div(self, x: DivisorClass) -> DivisorClass:
        return DivisorClass(x.space, mat_vec(self.m11, x.coeffs))

    def pull_curve(self, c):
        return type(c)(c.space, mat_vec(self.m22, c.coeffs))


@dataclass
class DegreesReport:
    lambda1: float
    lambda2: float
    lambda3: float
    h_top: float
    degrees_equal: bool
    char_poly11: IntPolynomial
    char_poly22: IntPolynomial
    det11: int
    det22: int
    unimodularity: str
    rational_roots11: list[int]
    lambda1_irrational: bool
    triple_form_preserved: bool
    c1_fixed: bool
    compatibility: str
    m22_multiplicative: bool
    log_concave: bool
    inverse_duality: Optional[bool] = None
    notes: list[str] = field(default_factory=list)

    @property
    def is_automorphism_action(self) -> bool:
        return self.unimodularity == "Pass" and self.compatibility == "Pass"

    def to_json(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = str(v) if isinstance(v, IntPolynomial) else v
        return out


def degrees_report(v: Variety, act: AutAction, tol: float = DEFAULT_TOL,
                   inverse: Optional[AutAction] = None) -> DegreesReport:
    """Dynamical degrees, entropy and consistency verdicts for an action on ``v``.

    ``lambda3`` is 1 for an automorphism (degree on top cohomology) and is
    not read from input.
    """
    if act.rank != v.rank:
        raise ShapeMismatch(f"action has rank {act.rank}, variety has rank {v.rank}")
    notes: list[str] = []
    p11, p22 = char_poly(act.m11), char_poly(act.m22)
    lam1 = spectral_radius(act.m11, tol)
    lam2 = spectral_radius(act.m22, tol)
    lam3 = 1.0
    h_top = max(math.log(lam1) if lam1 > 0 else 0.0,
                math.log(lam2) if lam2 > 0 else 0.0, 0.0)
    det11, det22 = (-1) ** p11.degree * p11.constant, (-1) ** p22.degree * p22.constant
    unimodular = abs(det11) == 1 and abs(det22) == 1
    if not unimodular:
        notes.append(f"det(m11)={det11}, det(m22)={det22}: not invertible over the integers")
    roots = rational_eigen_screen(p11)
    irrational = lam1 > 1 + tol and not any(r > 1 for r in roots)
    if irrational:
        notes.append("lambda1 irrational: no integer root > 1 of the characteristic polynomial")

    basis = [v.div(lab) for lab in v.div_basis]
    images = [act.pull_div(b) for b in basis]
    triples_ok = all(
        triple(images[i], images[j], images[k]) == triple(basis[i], basis[j], basis[k])
        for i, j, k in itertools.combinations_with_replacement(range(v.rank), 3))
    c1_ok = act.pull_div(v.c1) == v.c1
    curves = [v.curve(lab) for lab in v.curve_basis]
    mult_ok = all(
        act.pull_curve(intersect_dd(basis[i], basis[j])) == intersect_dd(images[i], images[j])
        for i, j in itertools.combinations_with_replacement(range(v.rank), 2)
    ) and all(pair_dc(images[i], act.pull_curve(curves[k])) == pair_dc(basis[i], curves[k])
              for i in range(v.rank) for k in range(v.rank))
    compatible = triples_ok and c1_ok
    if not compatible:
        notes.append("not an automorphism action: "
                     + ", ".join(s for s, ok in (("top intersection form not preserved", triples_ok),
                                                 ("c1 not fixed", c1_ok)) if not ok))
    log_concave = lam1 * lam3 <= lam2 ** 2 + 2 * tol and lam2 <= lam1 ** 2 + 2 * tol

    duality = None
    if inverse is not None:
        if inverse.rank != act.rank:
            raise ShapeMismatch("inverse action has a different rank")
        n = act.rank
        if mat_mul(act.m11, inverse.m11) != identity(n) or mat_mul(act.m22, inverse.m22) != identity(n):
            notes.append("supplied inverse is not the inverse of the action")
            duality = False
        else:
            duality = (abs(spectral_radius(inverse.m11, tol) - lam2) <= 2 * tol
                       and abs(spectral_radius(inverse.m22, tol) - lam1) <= 2 * tol)

    return DegreesReport(
        lambda1=lam1, lambda2=lam2, lambda3=lam3, h_top=h_top,
        degrees_equal=abs(lam1 - lam2) <= 2 * tol,
        char_poly11=p11, char_poly22=p22, det11=det11, det22=det22,
        unimodularity="Pass" if unimodular else "Fail",
        rational_roots11=roots, lambda1_irrational=irrational,
        triple_form_preserved=triples_ok, c1_fixed=c1_ok,
        compatibility="Pass" if compatible else "Fail",
        m22_multiplicative=mult_ok, log_concave=log_concave,
        inverse_duality=duality, notes=notes,
    )
