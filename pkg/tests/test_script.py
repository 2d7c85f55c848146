from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from towercalc.conditions import Cond2Evidence, Cond3Evidence
from towercalc.corpus import SCRIPTS, script_text
from towercalc.errors import ScriptParseError
from towercalc.script import (
    EvidenceSpec, StepSpec, TowerScript, build_tower, load_tower, normalize, parse_terms,
    parse_tower_file, serialize,
)

SIX_LINES = """\
base P3
blowup point
blowup point
blowup point
blowup point
blowup curve genus=0 class= 1*HH - 1*L2 - 1*L3
blowup curve genus=0 class= 1*HH - 1*L1 - 1*L2
blowup curve genus=0 class= 1*HH - 1*L1 - 1*L3
blowup curve genus=0 class= 1*HH - 1*L1 - 1*L4
blowup curve genus=0 class= 1*HH - 1*L2 - 1*L4
blowup curve genus=0 class= 1*HH - 1*L3 - 1*L4
"""


def test_six_lines_script():
    script = parse_tower_file(SIX_LINES)
    assert script.base == "P3" and len(script.steps) == 10
    top, evidence = build_tower(script)
    assert top.level == 10 and evidence == {}
    assert top.at_level(5).step.center == top.at_level(4).curve_class(
        {"HH": 1, "L2": -1, "L3": -1})


def test_base_only():
    top, _ = load_tower("base P3\n")
    assert top.level == 0 and top.id == "P3"


def test_unknown_label_named():
    with pytest.raises(ScriptParseError, match="unknown basis element L9 at step 5"):
        parse_tower_file(SIX_LINES.replace("L3 - 1*L4\n", "L9 - 1*L4\n", 1)
                         .replace("1*HH - 1*L2 - 1*L3\n", "1*HH - 1*L2 - 1*L9\n", 1))


def test_label_from_a_later_level_is_unknown():
    with pytest.raises(ScriptParseError, match="unknown basis element M1 at step 1"):
        parse_tower_file("base P3\nblowup curve genus=0 class= 1*HH - 1*M1\n")


def test_malformed_rational_has_line_number():
    with pytest.raises(ScriptParseError, match="line 3") as info:
        parse_tower_file("base P3\nblowup point\nblowup curve genus=0 class= 1/0*HH\n")
    assert info.value.line == 3
    with pytest.raises(ScriptParseError, match="line 2"):
        parse_tower_file("base P3\nblowup curve genus=0 class= 1.5*HH\n")


def test_evidence_before_step():
    with pytest.raises(ScriptParseError, match="before any blowup"):
        parse_tower_file("base P3\nevidence cond2 not_unique=true\n")


def test_evidence_on_point_step():
    with pytest.raises(ScriptParseError, match="point blowup"):
        parse_tower_file("base P3\nblowup point\nevidence cond2 not_unique=true\n")


@pytest.mark.parametrize("text", [
    "",
    "blowup point\n",
    "base P5\n",
    "base P3\nbase P3\n",
    "base P3\nblowup line\n",
    "base P3\nblowup curve genus=-1 class= 1*HH\n",
    "base P3\nblowup curve genus=0 class=\n",
    "base P3\nblowup curve genus=0 class= 1*HH 1*HH\n",
    "base P3\nblowup curve genus=0 class= 1*HH\nevidence cond3 mu=0 s= 1*H\n",
    "base P3\nblowup curve genus=0 class= 1*HH\nevidence cond2 not_unique=maybe\n",
    "base P3\nblowup curve genus=0 class= 1*HH\nevidence cond4 x=1\n",
    "base P3\nfrobnicate\n",
])
def test_malformed_scripts(text):
    with pytest.raises(ScriptParseError):
        parse_tower_file(text)


def test_comments_and_whitespace():
    text = "# heading\n  base   P3  # the base\n\nblowup   point\nblowup curve genus=0 class=HH-L1\n"
    script = parse_tower_file(text)
    assert script.steps[1].center == (("HH", Fraction(1)), ("L1", Fraction(-1)))
    assert normalize(text) == "base P3\nblowup point\nblowup curve genus=0 class=HH-L1\n"


def test_parse_terms():
    assert parse_terms("1*HH - 1/2*L2 + M1") == (
        ("HH", Fraction(1)), ("L2", Fraction(-1, 2)), ("M1", Fraction(1)))
    assert parse_terms("-3*H") == (("H", Fraction(-3)),)


def test_evidence_and_assertions():
    text = script_text("two_coordinate_lines.tower")
    script = parse_tower_file(text)
    assert script.assertions == {"step4.not_unique_in_class": True}
    assert script.steps[3].evidence[0] == EvidenceSpec("cond2", not_unique=True)
    top, evidence = build_tower(script)
    assert isinstance(evidence[4][0], Cond2Evidence)
    ev3 = evidence[4][1]
    assert isinstance(ev3, Cond3Evidence) and ev3.s_class.space.id == top.parent.id


@pytest.mark.parametrize("name", SCRIPTS)
def test_corpus_round_trip(name):
    text = script_text(name)
    script = parse_tower_file(text)
    assert serialize(script) == normalize(text)
    assert parse_tower_file(serialize(script)) == script


_coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)


@st.composite
def scripts(draw):
    base = draw(st.sampled_from(["P3", "P2xP1", "P1x3"]))
    curves = {"P3": ["HH"], "P2xP1": ["l", "m"], "P1x3": ["C1", "C2", "C3"]}[base]
    divs = {"P3": ["H"], "P2xP1": ["A", "B"], "P1x3": ["D1", "D2", "D3"]}[base]
    curves, divs = list(curves), list(divs)
    steps = []
    np_, nc = 0, 0
    for _ in range(draw(st.integers(0, 5))):
        if draw(st.booleans()):
            steps.append(StepSpec("point"))
            np_ += 1
            divs.append(f"E{np_}")
            curves.append(f"L{np_}")
            continue
        labels = draw(st.lists(st.sampled_from(curves), min_size=1, max_size=3, unique=True))
        center = tuple((lab, draw(_coeff)) for lab in labels)
        evidence = []
        if draw(st.booleans()):
            evidence.append(EvidenceSpec("cond2", not_unique=draw(st.booleans())))
        if draw(st.booleans()):
            s_labels = draw(st.lists(st.sampled_from(divs), min_size=1, max_size=2, unique=True))
            evidence.append(EvidenceSpec("cond3", mu=draw(st.integers(1, 3)),
                                         s=tuple((lab, draw(_coeff)) for lab in s_labels)))
        steps.append(StepSpec("curve", draw(st.integers(0, 4)), center, tuple(evidence)))
        nc += 1
        divs.append(f"F{nc}")
        curves.append(f"M{nc}")
    return TowerScript(base, tuple(steps))


@given(scripts())
def test_random_round_trip(script):
    text = serialize(script)
    assert parse_tower_file(text) == script
    assert normalize(text) == text
