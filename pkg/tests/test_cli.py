import json
import subprocess
import sys

import pytest

from logical_geometry import load_document
from logical_geometry.cli import main
from logical_geometry.corpus import fixture_names, get_fixture


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_echo(capsys):
    assert run(capsys, "parse", "(p&q)|r") == (0, "p & q | r\n", "")


def test_classify_duty_value(capsys):
    code, out, _ = run(capsys, "classify", "D->V", "!(V->D)")
    assert code == 0
    assert "not contrary: both true at D=false V=true" in out


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "p", "q", "--constraint", "!(p & q)", "--json")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "contrary" and data["witnesses"]["both_true"] is None


def test_hexagon_to_file_then_verify(capsys, tmp_path):
    path = tmp_path / "h.json"
    assert run(capsys, "hexagon", "p", "q", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and out.rstrip().endswith("clean")
    assert "3 contradictory / 3 contrary / 3 subcontrary / 6 subalternation" in out


def test_cube_stdout(capsys):
    code, out, _ = run(capsys, "cube", "p", "q", "r")
    assert code == 0 and len(json.loads(out)["vertices"]) == 8


def test_nelson_untwist_twist(capsys, tmp_path):
    n7 = tmp_path / "n7.json"
    u = tmp_path / "u.json"
    back = tmp_path / "back.json"
    assert run(capsys, "nelson", "p", "q", "r", "--no-neg-r", "-o", str(n7))[0] == 0
    assert run(capsys, "untwist", str(n7), "-o", str(u))[0] == 0
    assert len(load_document(u).vertices) == 8
    assert run(capsys, "twist", str(u), "-o", str(back))[0] == 0
    assert load_document(back) == load_document(n7)
    code, out, _ = run(capsys, "verify", str(n7))
    assert code == 0 and "tacit !r" in out


def test_nelson_arity(capsys):
    code, _, err = run(capsys, "nelson", "p")
    assert code == 2 and "UnsupportedArityError" in err and err.count("\n") == 1


def test_verify_duty_value_exit_one(capsys, tmp_path):
    path = tmp_path / "dv.json"
    path.write_text(get_fixture("duty-value").text(), encoding="utf-8")
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    assert "P -- Q contrary: REFUTED, actually subalternation-right-to-left (witness D=false V=true)" in out
    code, out, _ = run(capsys, "degeneracies", str(path))
    assert code == 1 and "collapsed order: 4" in out
    square = tmp_path / "sq.json"
    assert run(capsys, "collapse", str(path), "-o", str(square))[0] == 0
    assert len(load_document(square).vertices) == 4


def test_render(capsys, tmp_path):
    path = tmp_path / "k.json"
    path.write_text(get_fixture("kantian").text(), encoding="utf-8")
    out_file = tmp_path / "k.svg"
    assert run(capsys, "render", str(path), "--format", "svg", "-o", str(out_file))[0] == 0
    assert out_file.read_text(encoding="utf-8").startswith("<?xml")
    code, _, err = run(capsys, "render", str(path), "--format", "dot", "--layout", "cube2d")
    assert code == 2 and "LayoutMismatchError" in err


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and [l.split()[0] for l in out.splitlines()] == fixture_names()
    code, out, _ = run(capsys, "corpus", "show", "kantian")
    assert code == 0 and out == get_fixture("kantian").text()
    code, out, _ = run(capsys, "corpus", "verify-all")
    assert code == 1
    for name in ("kantian", "political", "metaphysics", "poincare"):
        assert f"{name}: pass" in out
    assert "duty-value: 12 findings" in out and "collapses to 4 vertex classes" in out
    assert "refuted contrary P-Q" in out and "UNEXPECTED" not in out


@pytest.mark.parametrize("argv", [
    ["verify", "nonexistent.json"],
    ["bogus"],
    [],
    ["parse", "p &"],
    ["classify", "p"],
    ["corpus", "show", "missing"],
    ["corpus", "show"],
    ["render", "x.json", "--format", "png"],
])
def test_exit_two_with_one_line(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and err.count("\n") == 1 and err.startswith("loggeo:")


def test_schema_error_exit_two(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"v": 1}', encoding="utf-8")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "SchemaError" in err


def test_nelson_only_commands_reject_opposition(capsys, tmp_path):
    path = tmp_path / "k.json"
    path.write_text(get_fixture("kantian").text(), encoding="utf-8")
    assert run(capsys, "untwist", str(path))[0] == 2


def test_json_outputs_deterministic(capsys, tmp_path):
    for name in fixture_names():
        path = tmp_path / f"{name}.json"
        path.write_text(get_fixture(name).text(), encoding="utf-8")
        first = run(capsys, "verify", str(path), "--json")
        assert first == run(capsys, "verify", str(path), "--json")
        json.loads(first[1])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "logical_geometry", "parse", "p->q->r"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "p -> (q -> r)\n"
