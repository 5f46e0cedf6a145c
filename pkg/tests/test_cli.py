import io
import json
import subprocess
import sys

import pytest

from _support import FIXTURES

from diffgsb.cli import InputError, load_presentation, main, presentation_from_dict


def run(*argv):
    out = io.StringIO()
    argv = list(argv)
    if "-f" in argv:
        i = argv.index("-f") + 1
        if not argv[i].startswith("/"):
            argv[i] = str(FIXTURES / argv[i])
    code = main(argv, out=out)
    return code, out.getvalue()


def test_derive_examples():
    assert run("derive", "-f", "free_w1.yaml", "-e", "x*y", "-n", "1") == (
        0, "x^(1)*y^(1) + x^(1)*y^(0) + x^(0)*y^(1)\n")
    assert run("derive", "-f", "free_c_w0.yaml", "-e", "x*x", "-n", "2") == (
        0, "2*x^(2)*x^(0) + 2*x^(1)*x^(1)\n")
    assert run("derive", "-f", "free_w1.yaml", "-e", "y*x + 1/2", "-n", "0") == (
        0, "y^(0)*x^(0) + 1/2\n")


def test_check_gs_exit_codes():
    code, text = run("check-gs", "-f", "dual_deglex.yaml", "--max-order", "2")
    assert code == 1 and "x^(1)*x^(1)*x^(1)" in text
    assert run("check-gs", "-f", "dual_lex.yaml", "--max-order", "4")[0] == 0
    assert run("check-gs", "-f", "polyp.yaml")[0] == 0


def test_check_gs_json_lists_failures():
    code, text = run("check-gs", "-f", "dual_deglex.yaml", "--max-order", "2", "--json")
    doc = json.loads(text)
    assert code == 1 and doc["schema"] == 1 and doc["exit_code"] == 1
    assert doc["bounds"] == {"max_order": 2, "max_degree": 6}
    (f,) = doc["result"]["failures"]
    assert f["composition"] == "x^(1)*x^(1)*x^(1)" and f["w"] == "x^(2)*x^(1)*x^(0)"


def test_compose():
    code, text = run("compose", "-f", "dual_deglex.yaml", "--i", "2", "--j", "1")
    assert code == 1
    assert "w=x^(2)*x^(1)*x^(0): x^(1)*x^(1)*x^(1)" in text
    code, text = run("compose", "-f", "dual_deglex.yaml", "--i", "0", "--j", "0")
    assert code == 0 and "no composition" in text
    assert run("compose", "-f", "dual_deglex.yaml", "--i", "1", "--j", "0", "--lhs", "3")[0] == 2


def test_complete():
    code, text = run("complete", "-f", "c3_w0.yaml")
    assert code == 0
    assert text.splitlines()[0] == "round 1: adjoined x^(1)"
    code, _ = run("complete", "-f", "dual_deglex.yaml", "--max-order", "2", "--rounds", "0")
    assert code == 1


def test_basis():
    code, text = run("basis", "-f", "c3_w1.yaml", "--max-degree", "4", "--max-order", "2",
                     "--verify")
    lines = text.splitlines()
    assert code == 0
    assert "count: 23" in lines and lines[-1].startswith("oracle: [")
    assert lines[0] == "1"
    code, text = run("basis", "-f", "polyp.yaml", "--max-degree", "1", "--max-order", "1")
    assert text.splitlines() == ["1", "y^(0)", "y^(1)", "count: 3"]


def test_reduce_and_member():
    assert run("reduce", "-f", "weyl_w0.yaml", "-e", "y*y*x") == (0, "x^(0)*y^(0)*y^(0) + 2*y^(0)\n")
    assert run("member", "-f", "polyp.yaml", "-e", "d^3(x + y + 1)") == (0, "yes\n")
    code, text = run("member", "-f", "polyp.yaml", "-e", "y^(5)")
    assert code == 1 and text == "irreducible: y^(5)\n"


def test_budget_exit_code():
    assert run("member", "-f", "dual_lex.yaml", "-e", "x^5", "--step-budget", "0")[0] == 3
    assert run("reduce", "-f", "dual_lex.yaml", "-e", "x^5", "--step-budget", "0")[0] == 3


def test_precheck_failure_exit_2(tmp_path):
    f = tmp_path / "bad.yaml"
    f.write_text("generators: [x, y]\nrelations: [x*y - x, y*x - y]\n", encoding="utf-8")
    code, text = run("check-gs", "-f", str(f))
    assert code == 2 and "precheck" in text
    code, text = run("check-gs", "-f", str(f), "--json")
    assert code == 2 and json.loads(text)["precheck"]["i"] == 0


@pytest.mark.parametrize("body", [
    "generators: [x]\norder: lex\nrelations: [x^2]\n",
    "generators: [x]\nrelations: [x^(1)]\n",
    "generators: [x]\nrelations: [x +]\n",
    "generators: [x]\nweight: 1/0\n",
    "generators: [d]\n",
    "relations: [x]\n",
    "generators: [x]\ncolour: red\n",
    "generators: [x\n",
    "- just a list\n",
])
def test_invalid_input_exit_2(tmp_path, body):
    f = tmp_path / "p.yaml"
    f.write_text(body, encoding="utf-8")
    assert run("check-gs", "-f", str(f))[0] == 2


def test_missing_file_and_bad_flags(tmp_path):
    assert run("check-gs", "-f", str(tmp_path / "nope.yaml"))[0] == 2
    assert run("check-gs", "-f", "polyp.yaml", "--max-order", "-1")[0] == 2
    assert run("derive", "-f", "polyp.yaml", "-e", "x * * y")[0] == 2


def test_presentation_from_dict():
    p = presentation_from_dict({"generators": "y, x", "commutative": True,
                                "weight": "3/2", "relations": "x + y"})
    assert p.table.names == ("y", "x") and p.weight == 1.5 and len(p.relations) == 1
    with pytest.raises(InputError):
        presentation_from_dict({"generators": ["x"], "commutative": "yes"})
    assert load_presentation(FIXTURES / "polyp.yaml").commutative


def test_json_deterministic():
    argv = ("complete", "-f", "c4_w0.yaml", "--json")
    assert run(*argv) == run(*argv)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "diffgsb.cli", "check-gs", "-f",
                        str(FIXTURES / "polyp.yaml")], capture_output=True, text=True)
    assert r.returncode == 0 and "all compositions trivial" in r.stdout
