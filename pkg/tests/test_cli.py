import json
import subprocess
import sys

import pytest

from towercalc.cli import main
from towercalc.corpus import SCRIPTS, run_corpus, script_text


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


@pytest.fixture
def corpus_file(write):
    return lambda name: write(name, script_text(name))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_text_and_json(capsys, corpus_file):
    path = corpus_file("plane_conic.tower")
    code, out, _ = run(capsys, "build", path)
    assert code == 0
    assert "F1*F1 = -2*HH + 6*M1" in out
    assert "c1 = 4*H - 1*F1" in out
    code, out, _ = run(capsys, "build", path, "--json")
    data = json.loads(out)
    top = data["levels"][-1]
    assert top["c1"] == {"H": "4", "F1": "-1"}
    assert top["dd"]["H*F1"] == "2*M1"
    assert top["c1_dot_c2"] == "24"


def test_json_is_sorted_and_stable(capsys, corpus_file):
    path = corpus_file("two_coordinate_lines.tower")
    _, first, _ = run(capsys, "check", "--theorem", "2", path, "--json")
    _, second, _ = run(capsys, "check", "--theorem", "2", path, "--json")
    assert first == second
    assert first == json.dumps(json.loads(first), indent=2, sort_keys=True) + "\n"


def test_check_theorem1_passes(capsys, corpus_file):
    code, out, _ = run(capsys, "check", "--theorem", "1", corpus_file("p2p1_three_lines.tower"))
    assert code == 0
    assert "c1_dot_C=2" in out and "two_g_minus_2=-2" in out and "gamma=0" in out


def test_check_theorem2_reports(capsys, corpus_file):
    code, out, _ = run(capsys, "check", "--theorem", "2",
                       corpus_file("two_coordinate_lines.tower"), "--json")
    assert code == 3
    data = json.loads(out)
    rep = data["reports"][3]
    assert rep["level"] == 4 and rep["verdict"] == "Pass"
    assert rep["matched_condition"] == "Cond2"
    assert rep["passing_conditions"] == ["Cond2", "Cond3"]
    assert rep["numbers"]["gamma"] == "-1" and rep["numbers"]["kappa"] == "-1"
    assert data["reports"][2]["verdict"] == "Fail"


def test_check_exit_codes(capsys, write, corpus_file):
    ok = corpus_file("p2p1_horizontal.tower")
    assert run(capsys, "check", "--theorem", "2", ok)[0] == 0
    # a line through both blown-up points has gamma = -2
    pending = write("pending.tower", "base P3\nblowup point\nblowup point\n"
                    "blowup curve genus=0 class= 1*HH - 1*L1 - 1*L2\n")
    code, out, _ = run(capsys, "check", "--theorem", "2", pending)
    assert code == 2 and "NeedsAssertion" in out


def test_gamma_printed_for_second_line(capsys, corpus_file):
    _, out, _ = run(capsys, "check", "--theorem", "2", corpus_file("two_coordinate_lines.tower"))
    line4 = out.split("step 4")[1]
    assert "gamma=-1" in line4 and "c1_dot_C=1" in line4 and "two_g_minus_2=-2" in line4


def test_eta_command(capsys, write):
    path = write("x1.tower", "base P3\nblowup point\nblowup curve genus=0 class= 1*HH\n"
                 "blowup curve genus=0 class= 1*HH\n")
    code, out, _ = run(capsys, "eta", path)
    assert code == 0
    assert "ray: H - 1*F1" in out and "ray: H - 1*F2" in out
    code, out, _ = run(capsys, "eta", path, "--json")
    data = json.loads(out)
    assert [r["class"] for r in data["rays"]] == ["H - 1*F1", "H - 1*F2"]
    assert data["system"]["ratios"] == ["1", "1"]


def test_eta_rejects_non_x1(capsys, corpus_file):
    code, _, err = run(capsys, "eta", corpus_file("two_coordinate_lines.tower"))
    assert code == 1 and "error:" in err


def test_eval_command(capsys, corpus_file):
    path = corpus_file("two_coordinate_lines.tower")
    code, out, _ = run(capsys, "eval", path, "--expr", "c1 * (1*HH - 1*L1 - 1*M1)", "--level", "3")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "eval", path, "--expr", "c1", "--level", "0")
    assert out.strip() == "4*H"
    code, out, _ = run(capsys, "eval", path, "--expr", "F2*F2", "--json")
    assert json.loads(out)["result"]["grade"] == "curve"
    code, _, err = run(capsys, "eval", path, "--expr", "H*H*H*H")
    assert code == 1 and "product exceeds top degree" in err
    code, _, err = run(capsys, "eval", path, "--expr", "H", "--level", "9")
    assert code == 1


def test_spectral_command(capsys, write):
    tower = write("t.tower", "base P3\nblowup point\nblowup point\n")
    swap = write("swap.txt", "1 0 0\n0 0 1\n0 1 0\n")
    code, out, _ = run(capsys, "spectral", tower, "--m11", swap, "--m22", swap)
    assert code == 0
    assert "lambda1 = 1" in out and "compatibility: Pass" in out
    code, out, _ = run(capsys, "spectral", tower, "--m11", swap, "--m22", swap, "--json",
                       "--inv-m11", swap, "--inv-m22", swap)
    data = json.loads(out)
    assert data["h_top"] == 0 and data["inverse_duality"] is True


def test_spectral_rejects_bad_actions(capsys, write):
    tower = write("t.tower", "base P3\nblowup point\n")
    golden = write("g.txt", "2 1\n1 1\n")
    code, out, _ = run(capsys, "spectral", tower, "--m11", golden, "--m22", golden)
    assert code == 3 and "lambda1 irrational: True" in out
    bad = write("bad.txt", "1 x\n0 1\n")
    assert run(capsys, "spectral", tower, "--m11", bad, "--m22", golden)[0] == 1
    small = write("small.txt", "1\n")
    code, _, err = run(capsys, "spectral", tower, "--m11", small, "--m22", small)
    assert code == 1 and "shape mismatch" in err


def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    n = len(run_corpus())
    assert f"{n}/{n} checks passed" in out
    code, out, _ = run(capsys, "examples", "--json")
    assert json.loads(out)["failed"] == 0


def test_parse_errors_exit_1(capsys, write):
    path = write("bad.tower", "base P3\nblowup curve genus=0 class= 1*HH - 1*L9\n")
    code, _, err = run(capsys, "check", "--theorem", "1", path)
    assert code == 1 and "unknown basis element L9 at step 1" in err
    assert run(capsys, "build", "/nonexistent/file.tower")[0] == 1


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", "--theorem", "3", "x"])
    assert info.value.code == 1


@pytest.mark.parametrize("name", SCRIPTS)
def test_every_corpus_script_builds(capsys, corpus_file, name):
    assert run(capsys, "build", corpus_file(name), "--json")[0] == 0


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "towercalc.cli", "examples"],
                         capture_output=True, text=True)
    assert out.returncode == 0
