"""Line-oriented tower description files.

    # comment
    base P3
    blowup point
    blowup curve genus=0 class= 1*HH - 1*L1
    evidence cond2 not_unique=true
    evidence cond3 mu=1 s= 1*H - 1*E1

Class expressions are signed ``coeff*label`` terms over the basis of the level
the step starts from (a bare label means coefficient 1).  Evidence lines
attach to the step just above them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .conditions import Cond2Evidence, Cond3Evidence, StepEvidence
from .errors import PreconditionError, ScriptParseError
from .tower import Variety, base_space, normalize_base_kind

Terms = tuple[tuple[str, Fraction], ...]

_BASE_LABELS = {
    "P3": (("H",), ("HH",)),
    "P2xP1": (("A", "B"), ("l", "m")),
    "P1x3": (("D1", "D2", "D3"), ("C1", "C2", "C3")),
}
_TERM = re.compile(r"([+-])?\s*(?:([^\s*+-]+)\s*\*\s*)?([A-Za-z][A-Za-z0-9_]*)\s*")
_INT = re.compile(r"-?\d+")


@dataclass(frozen=True)
class EvidenceSpec:
    kind: str  # "cond2" | "cond3"
    not_unique: Optional[bool] = None
    mu: Optional[int] = None
    s: Optional[Terms] = None


@dataclass(frozen=True)
class StepSpec:
    kind: str  # "point" | "curve"
    genus: Optional[int] = None
    center: Optional[Terms] = None
    evidence: tuple[EvidenceSpec, ...] = ()


@dataclass(frozen=True)
class TowerScript:
    base: str
    steps: tuple[StepSpec, ...] = ()

    @property
    def assertions(self) -> dict[str, bool]:
        out = {}
        for k, step in enumerate(self.steps, 1):
            for ev in step.evidence:
                if ev.kind == "cond2" and ev.not_unique is not None:
                    out[f"step{k}.not_unique_in_class"] = ev.not_unique
        return out


def format_terms(terms: Terms) -> str:
    parts = []
    for label, c in terms:
        mag = f"{abs(c)}*{label}"
        if not parts:
            parts.append(mag if c >= 0 else f"-{mag}")
        else:
            parts.append(("+ " if c >= 0 else "- ") + mag)
    return " ".join(parts)


def parse_terms(text: str, line: Optional[int] = None) -> Terms:
    """Parse ``1*HH - 1/2*L2 + M1`` into ``(label, coefficient)`` pairs."""
    text = text.strip()
    if not text:
        raise ScriptParseError("empty class expression", line)
    pos, terms = 0, []
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ScriptParseError(f"malformed term near {text[pos:]!r}", line)
        sign, coeff, label = m.groups()
        if terms and sign is None:
            raise ScriptParseError(f"missing '+' or '-' before {text[pos:]!r}", line)
        c = Fraction(1)
        if coeff is not None:
            if not re.fullmatch(r"\d+(?:/\d+)?", coeff):
                raise ScriptParseError(f"malformed rational {coeff!r}", line)
            try:
                c = Fraction(coeff)
            except ZeroDivisionError:
                raise ScriptParseError(f"malformed rational {coeff!r}", line) from None
        terms.append((label, -c if sign == "-" else c))
        pos = m.end()
    return tuple(terms)


def _strip(raw: str) -> str:
    return " ".join(raw.split("#", 1)[0].split())


def normalize(text: str) -> str:
    """Drop comments and blank lines and collapse whitespace."""
    lines = [_strip(raw) for raw in text.splitlines()]
    return "".join(line + "\n" for line in lines if line)


def _kv(token: str, key: str, line: int) -> str:
    if not token.startswith(key + "="):
        raise ScriptParseError(f"expected '{key}=...', got {token!r}", line)
    return token[len(key) + 1:]


def _check_labels(terms: Terms, allowed, step: int, line: int) -> None:
    for label, _ in terms:
        if label not in allowed:
            raise ScriptParseError(f"unknown basis element {label} at step {step}", line)


def parse_tower_file(text: str) -> TowerScript:
    base = None
    div_labels: list[str] = []
    curve_labels: list[str] = []
    steps: list[StepSpec] = []
    n_points = n_curves = 0
    # labels of the level each step starts from
    step_div: list[list[str]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        words = line.split(" ")
        head = words[0]
        if base is None:
            if head != "base" or len(words) != 2:
                raise ScriptParseError("first line must be 'base P3 | P2xP1 | P1x3'", lineno)
            try:
                base = normalize_base_kind(words[1])
            except PreconditionError as exc:
                raise ScriptParseError(str(exc), lineno) from None
            d0, c0 = _BASE_LABELS[base]
            div_labels, curve_labels = list(d0), list(c0)
            continue
        if head == "base":
            raise ScriptParseError("duplicate 'base' line", lineno)
        if head == "blowup":
            k = len(steps) + 1
            step_div.append(list(div_labels))
            if words[1:] == ["point"]:
                steps.append(StepSpec("point"))
                n_points += 1
                div_labels.append(f"E{n_points}")
                curve_labels.append(f"L{n_points}")
                continue
            m = re.fullmatch(r"blowup curve genus=(\S+) class=(.*)", line)
            if not m:
                raise ScriptParseError("expected 'blowup point' or "
                                       "'blowup curve genus=<int> class= <terms>'", lineno)
            if not re.fullmatch(r"\d+", m.group(1)):
                raise ScriptParseError(f"genus must be a non-negative integer, got {m.group(1)!r}",
                                       lineno)
            terms = parse_terms(m.group(2), lineno)
            _check_labels(terms, curve_labels, k, lineno)
            steps.append(StepSpec("curve", int(m.group(1)), terms))
            n_curves += 1
            div_labels.append(f"F{n_curves}")
            curve_labels.append(f"M{n_curves}")
            continue
        if head == "evidence":
            if not steps:
                raise ScriptParseError("evidence line before any blowup step", lineno)
            k = len(steps)
            step = steps[-1]
            if step.kind != "curve":
                raise ScriptParseError(f"cond2/cond3 evidence needs a curve step (step {k} "
                                       "is a point blowup)", lineno)
            if len(words) < 3:
                raise ScriptParseError("incomplete evidence line", lineno)
            if words[1] == "cond2":
                val = _kv(words[2], "not_unique", lineno)
                if val not in ("true", "false") or len(words) != 3:
                    raise ScriptParseError("expected 'evidence cond2 not_unique=true|false'", lineno)
                ev = EvidenceSpec("cond2", not_unique=val == "true")
            elif words[1] == "cond3":
                m = re.fullmatch(r"evidence cond3 mu=(\S+) s=(.*)", line)
                if not m:
                    raise ScriptParseError("expected 'evidence cond3 mu=<int> s= <terms>'", lineno)
                if not _INT.fullmatch(m.group(1)) or int(m.group(1)) < 1:
                    raise ScriptParseError(f"mu must be an integer >= 1, got {m.group(1)!r}", lineno)
                terms = parse_terms(m.group(2), lineno)
                _check_labels(terms, step_div[k - 1], k, lineno)
                ev = EvidenceSpec("cond3", mu=int(m.group(1)), s=terms)
            else:
                raise ScriptParseError(f"unknown evidence kind {words[1]!r}", lineno)
            steps[-1] = StepSpec(step.kind, step.genus, step.center, step.evidence + (ev,))
            continue
        raise ScriptParseError(f"unrecognised line {line!r}", lineno)

    if base is None:
        raise ScriptParseError("missing 'base' line")
    return TowerScript(base, tuple(steps))


def serialize(script: TowerScript) -> str:
    lines = [f"base {script.base}"]
    for step in script.steps:
        if step.kind == "point":
            lines.append("blowup point")
        else:
            lines.append(f"blowup curve genus={step.genus} class= {format_terms(step.center)}")
        for ev in step.evidence:
            if ev.kind == "cond2":
                lines.append(f"evidence cond2 not_unique={'true' if ev.not_unique else 'false'}")
            else:
                lines.append(f"evidence cond3 mu={ev.mu} s= {format_terms(ev.s)}")
    return "".join(line + "\n" for line in lines)


def _terms_dict(terms: Terms) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for label, c in terms:
        out[label] = out.get(label, Fraction(0)) + c
    return out


def build_tower(script: TowerScript) -> tuple[Variety, dict[int, list[StepEvidence]]]:
    """Construct the tower; returns the top level and evidence keyed by 1-based step."""
    v = base_space(script.base)
    evidence: dict[int, list[StepEvidence]] = {}
    for k, step in enumerate(script.steps, 1):
        parent = v
        if step.kind == "point":
            v = v.blowup_point()
        else:
            v = v.blowup_curve(parent.curve_class(_terms_dict(step.center)), step.genus)
        evs: list[StepEvidence] = []
        for ev in step.evidence:
            if ev.kind == "cond2":
                evs.append(Cond2Evidence(ev.not_unique))
            else:
                evs.append(Cond3Evidence(parent.div_class(_terms_dict(ev.s)), ev.mu))
        if evs:
            evidence[k] = evs
    return v, evidence


def load_tower(text: str) -> tuple[Variety, dict[int, list[StepEvidence]]]:
    return build_tower(parse_tower_file(text))
