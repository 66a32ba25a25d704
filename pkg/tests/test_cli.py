import json
import subprocess
import sys

import pytest

from vkh.cli import main
from vkh.laurent import LaurentPoly2, parse_poly

import published


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_compute_knot21(capsys):
    assert run(capsys, "compute", "--cd", published.CODES["Knot21"])[:2] == (0, published.POINCARE["Knot21"])


def test_compute_gauss_knot41(capsys):
    assert run(capsys, "compute", "--gauss", published.GAUSS["Knot41"])[:2] == (0, published.POINCARE["Knot41"])


def test_compute_unknot(capsys):
    assert run(capsys, "compute", "--cd", published.CODES["Unknot"])[1] == "1/q + q"


@pytest.mark.parametrize("key", list(published.TORSION))
def test_torsion(capsys, key):
    name, p = key
    assert run(capsys, "torsion", "--corpus", name, "-p", str(p))[:2] == (0, published.TORSION[key])


def test_torsion_rejects_nonprime(capsys):
    assert run(capsys, "torsion", "--corpus", "Knot21", "-p", "4")[0] == 1


def test_torsion_rejects_field_theory(capsys):
    assert run(capsys, "torsion", "--corpus", "Knot21", "--theory", "bn1")[0] == 1


def test_jones(capsys):
    assert run(capsys, "jones", "--corpus", "Knot21")[1] == published.JONES["Knot21"]
    assert run(capsys, "jones", "--corpus", "Knot36v")[1] == published.JONES["Knot36"]
    assert run(capsys, "jones", "--cd", published.CODES["Unknot"])[1] == "1"


def test_jones_needs_graded_theory(capsys):
    assert run(capsys, "jones", "--corpus", "Knot21", "--theory", "lee")[0] == 1


def test_check_knot53(capsys):
    code, out, _ = run(capsys, "check", "--corpus", "Knot53")
    assert code == 0 and "FAIL" not in out and out.startswith("PASS d∘d = 0")


def test_check_lee_graded_na(capsys):
    code, out, _ = run(capsys, "check", "--corpus", "Knot21", "--theory", "lee")
    assert code == 0 and "PASS d∘d = 0" in out and "n/a graded" in out


def test_check_forced_invalid_params_fails(capsys):
    code, out, _ = run(capsys, "check", "--corpus", "Unknot", "--params", "ring=z/3,h=1", "--force")
    assert code == 2 and "FAIL" in out


def test_invalid_params_without_force(capsys):
    assert run(capsys, "compute", "--corpus", "Unknot", "--params", "ring=z/3,h=1")[0] == 1


def test_invalid_cd(capsys):
    code, _, err = run(capsys, "check", "--cd", "CD[X[1,2,3]]")
    assert code == 1 and "error" in err


def test_no_input(capsys):
    assert run(capsys, "compute")[0] == 1


def test_compare_examples(capsys):
    code, out, _ = run(capsys, "compare", "--corpus", "Example1", "--corpus", "Example2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["jones_equal"] and not data["homology_equal"]
    expected = sum((parse_poly(t) for t in published.EXAMPLE2_EXTRA), LaurentPoly2())
    assert parse_poly(data["only_in_b"]) == expected and data["only_in_a"] == "0"


def test_compare_virtualization(capsys):
    out = run(capsys, "compare", "--corpus", "Knot36v", "--cd", "CD[X[1,4,2,5],X[2,5,3,6],X[3,6,4,1]]")[1]
    assert "jones: equal" in out and "homology: equal" in out


def test_compare_trefoil_and_mirror(capsys):
    out = run(capsys, "compare", "--gauss", "O1-O2-U1-U2-", "--cd", "CD[X[1,3,2,4],X[2,4,3,1]]")[1]
    assert "jones: differ" in out and "homology: differ" in out
    assert f"only in A: {published.POINCARE['Knot21gauss']}" in out
    assert f"only in B: {published.POINCARE['Knot21gauss_mirror']}" in out


def test_compare_needs_two(capsys):
    assert run(capsys, "compare", "--corpus", "Knot21")[0] == 1


def test_convert(capsys):
    assert run(capsys, "convert", "--gauss", "O1-O2-U1-U2-")[1] == "CD[X[1,4,2,3],X[2,1,3,4]]"
    assert run(capsys, "convert", "--cd", "CD[X[1,4,2,3],X[2,1,3,4]]", "--mirror")[1] == "CD[X[1,3,2,4],X[2,4,3,1]]"
    once = run(capsys, "convert", "--cd", "CD[X[1,4,2,3],X[2,1,3,4]]", "--mirror")[1]
    assert run(capsys, "convert", "--cd", once, "--mirror")[1] == "CD[X[1,4,2,3],X[2,1,3,4]]"


def test_crossing_guard(capsys):
    kinks = "".join(f"O{c}+U{c}+" for c in range(1, 18))
    code, _, err = run(capsys, "compute", "--gauss", kinks)
    assert code == 1 and "--force" in err


def test_ungraded_output(capsys):
    assert run(capsys, "compute", "--corpus", "Knot21", "--theory", "bn1")[1] == "hdeg 0: rank 2"


def test_file_input(capsys, tmp_path):
    single = tmp_path / "one.txt"
    single.write_text(published.CODES["Knot21"] + "\n")
    assert run(capsys, "compute", "--file", str(single))[1] == published.POINCARE["Knot21"]
    many = tmp_path / "many.txt"
    many.write_text("# corpus\nA: " + published.CODES["Unknot"] + "\nB: gauss O1-O2-U1-U2-\n")
    out = run(capsys, "compute", "--file", str(many))[1].splitlines()
    assert out == ["A: 1/q + q", "B: " + published.POINCARE["Knot21gauss"]]
    assert run(capsys, "compute", "--file", str(tmp_path / "missing.txt"))[0] == 1


@pytest.mark.parametrize("name", list(published.CODES) + list(published.GAUSS))
def test_json_text_agree(capsys, name):
    text = run(capsys, "compute", "--corpus", name)[1]
    data = json.loads(run(capsys, "compute", "--corpus", name, "--format", "json")[1])
    from_betti = LaurentPoly2([((e["qdeg"], e["hdeg"]), e["rank"]) for e in data["betti"]])
    assert parse_poly(text) == from_betti and data["poincare"] == text


def test_deterministic(capsys):
    a = run(capsys, "compute", "--corpus", "Example3", "--format", "json")
    b = run(capsys, "compute", "--corpus", "Example3", "--format", "json")
    assert a == b


def test_console_entry_points():
    for cmd in (["vkh"], [sys.executable, "-m", "vkh"]):
        res = subprocess.run(cmd + ["jones", "--corpus", "Knot21"], capture_output=True, text=True)
        assert res.returncode == 0 and res.stdout.strip() == published.JONES["Knot21"]
