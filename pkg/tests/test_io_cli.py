import json
import subprocess
import sys

import pytest

from reltutte.cli import main
from reltutte.graph import ColoredMultigraph, Edge
from reltutte.io import InputError, dump_graph, load_face_graph, parse_graph

from fixtures import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graph_round_trip():
    g = ColoredMultigraph(["a", "b", 3], [Edge("e1", "a", "b", "+"), Edge(2, "b", 3, "0", 0),
                                         Edge("x", 3, 3, "blue", 4)])
    assert parse_graph(dump_graph(g)) == g
    assert parse_graph('{"vertices": [0, 1], "edges": [{"id": 1, "ends": [0, 1], "color": "-"}]}').edge(1).color == "-"


@pytest.mark.parametrize("text, where", [
    ("vertices: [0]\nedges:\n  - {id: 1, ends: [0, 5]}\n", "undeclared vertex"),
    ("vertices: [0, 1]\nedges:\n  - {id: 1, ends: [0]}\n", ":3"),
    ("vertices: [0, 1]\nedges:\n  - {id: 1, ends: [0, 1], colour: '+'}\n", ":3"),
    ("vertices: [0, 1]\nedges:\n  - {id: 1, ends: [0, 1], color: '+', label: 0}\n", "label 0"),
    ("vertices: [0, 1\n", ":2"),
    ("- 1\n- 2\n", "mapping"),
])
def test_graph_errors_carry_context(text, where):
    with pytest.raises(InputError, match=where):
        parse_graph(text, "g.yaml")


def test_face_graph_writhe_override():
    assert load_face_graph(DATA / "trefoil.fg").writhe == 3
    assert load_face_graph(DATA / "trefoil.fg", writhe=-1).writhe == -1


def test_cli_examples(capsys):
    assert run(capsys, "jones", "--face-graph", str(DATA / "trefoil_virtual_pair.fg"), "--writhe", "3")[1] == "t + t^3 - t^4\n"
    assert run(capsys, "bracket", "--face-graph", str(DATA / "unknot.fg"))[1] == "1\n"
    assert run(capsys, "oracle", "--pd", str(DATA / "kink_plus.pd"))[1] == "-A^3\n"
    assert run(capsys, "zero-order", "--graph", str(DATA / "virtual_unlink2.fg"))[1] == "2\n"


def test_cli_tutte_variants(capsys):
    f = str(DATA / "trefoil_virtual_pair.fg")
    code, out, _ = run(capsys, "tutte", "--graph", f, "--psi", "knot")
    assert code == 0
    assert out.strip() == "X[+]*x[+]*y[+] + X[+]*y[+]^2*d + Y[+]*x[+]^2 + x[+]*y[+]^2*d + x[+]^2*y[+]"
    loc = run(capsys, "tutte", "--graph", f, "--psi", "knot", "--localized")[1]
    assert run(capsys, "tutte", "--graph", f, "--psi", "knot", "--localized", "--method", "expansion",
               "--threads", "2")[1] == loc
    listed = run(capsys, "tutte", "--graph", f, "--psi", "knot", "--zero-edges", "h1,h2")[1]
    assert listed == out


def test_cli_json_mirrors_text(capsys):
    f = str(DATA / "virtual_trefoil.fg")
    text = run(capsys, "jones", "--face-graph", f)[1].strip()
    code, out, err = run(capsys, "jones", "--face-graph", f, "--json")
    payload = json.loads(out)
    assert code == 0 and payload["result"] == text and payload["variable"] == "q"
    assert "q = t^(1/4)" in err


def test_cli_pointed_and_cluster(capsys):
    f = str(DATA / "trefoil.fg")
    assert run(capsys, "pointed", "--graph", f, "--pointed-set", "", "--check")[1] == "x + x^2 + y\n"
    assert run(capsys, "pointed", "--graph", f, "--pointed-set", "c0,c1,c2")[1] == "z^2\n"
    assert run(capsys, "cluster", "--graph", str(DATA / "hopf.fg"), "--p", "1")[1] == "kappa\n"
    assert run(capsys, "cluster", "--graph", str(DATA / "hopf.fg"), "--p", "p0=1/2,p1=0")[1] == \
        "1/2*kappa + 1/2*kappa^2\n"


def test_cli_exit_codes(capsys, tmp_path):
    code, out, err = run(capsys, "bracket", "--face-graph", str(tmp_path / "missing.fg"))
    assert code == 1 and out == "" and "cannot read" in err
    bad = tmp_path / "bad.pd"
    bad.write_text("X 1 2 3 4 +\nX 1 2 oops 4 +\n")
    code, _, err = run(capsys, "oracle", "--pd", str(bad))
    assert code == 1 and f"{bad}:2" in err
    code, _, err = run(capsys, "cluster", "--graph", str(DATA / "hopf.fg"), "--p", "p0=2")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["bracket", "--face-graph", str(DATA / "trefoil.fg"), "--threads", "0"])
    assert exc.value.code == 1


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out and out.count("PASS") >= 10


def test_output_is_byte_stable_across_processes():
    cmd = [sys.executable, "-m", "reltutte.cli", "tutte", "--graph", str(DATA / "mixed_k4_virtual.fg"),
           "--psi", "knot", "--localized"]
    outs = {subprocess.run(cmd + extra, capture_output=True, text=True, check=True,
                           env={"PYTHONHASHSEED": seed, "PATH": ""}).stdout
            for seed, extra in (("1", []), ("2", []), ("3", ["--threads", "2"]))}
    assert len(outs) == 1
