"""Exact intersection rings of blowup towers over P3, P2xP1 and P1xP1xP1."""
from .conditions import (
    C0Invariants, CheckReport, Cond2Evidence, Cond3Evidence, Condition, PointTower, Verdict,
    c0_invariants, check_condition3, check_theorem1_step, check_theorem2_step,
    check_tower_theorem1, check_tower_theorem2, hartshorne_case_check, plane_curve_genus,
    ruled_numbers,
)
from .errors import (
    BasisMismatch, EnumerationBoundExceeded, EvidenceMismatch, ExpressionError,
    NotACurveBlowup, PreconditionError, ScriptParseError, ShapeMismatch, TowerError,
)
from .eta import EtaRay, SystemDescription, X1Config, build_x1, eta_square, x1_solve, x1_system
from .expr import eval_expr
from .ring import CurveClass, DivisorClass, IntersectionTables, intersect_dd, lincomb, pair_dc, triple
from .script import TowerScript, load_tower, parse_tower_file, serialize
from .spectral import (
    AutAction, DegreesReport, IntPolynomial, char_poly, degrees_report, rational_eigen_screen,
    spectral_radius,
)
from .tower import (
    BlowupStep, Variety, base_space, blowup_curve, blowup_point, chern, gamma, pullback_div,
    pushforward_curve, pushforward_div, strict_transform_hypersurface,
)

__version__ = "0.1.0"
