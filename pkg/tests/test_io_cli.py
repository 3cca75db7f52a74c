import subprocess
import sys

import pytest

from signedflow import io
from signedflow.cli import main
from signedflow.core import build_graph, verify_flow
from signedflow.families import FAMILIES, family, k4
from signedflow.theorems import cubic_flow

D2 = "sg 2 2\ne 0 1 +\ne 0 1 -\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_graph_round_trip():
    g = build_graph([(0, 0, "-"), (0, 1, "+"), (1, 1, "-"), (0, 1, "-")])
    text = io.emit_graph(g)
    assert io.parse_graph(text) == g and io.emit_graph(io.parse_graph(text)) == text


def test_comments_and_blank_lines():
    g = io.parse_graph("# digon\nsg 2 2\n\ne 0 1 +   # first\ne 0 1 -\n")
    assert len(g.edges) == 2 and g.negative_edges == {1}


@pytest.mark.parametrize("text, line", [
    ("sg 2 1\ne 0 2 +\n", 2),
    ("sg 2 1\ne 0 1 *\n", 2),
    ("sg 2 2\ne 0 1 +\n", 2),
    ("graph 2 1\n", 1),
    ("sg 2 1\ne 0 one +\n", 2),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(io.ParseError) as info:
        io.parse_graph(text)
    assert info.value.line == line


def test_flow_round_trip():
    g = k4().with_negative(range(6))
    r = cubic_flow(g)
    text = io.emit_flow(g, r.flow)
    f = io.parse_flow(text, g)
    assert verify_flow(g, f) and io.emit_flow(g, f) == text and text.startswith("flow 6\n")


def test_flow_parse_errors(k4):
    with pytest.raises(io.ParseError):
        io.parse_flow("flow 3\nf 0 5\n", k4)
    with pytest.raises(io.ParseError):
        io.parse_flow("flow 3\nf 0 1\n", k4)


def test_dot_dashes_negative_edges(d2):
    dot = io.to_dot(d2)
    lines = [ln for ln in dot.splitlines() if "--" in ln]
    assert len(lines) == 2 and sum("style=dashed" in ln for ln in lines) == 1


def test_cli_check_d2(tmp_path, capsys):
    path = write(tmp_path, "d2.sg", D2)
    assert main(["check", path]) == 1
    assert "reason: one-negative-edge equivalent" in capsys.readouterr().out
    assert main(["--machine", "check", path]) == 1
    out = capsys.readouterr().out.splitlines()
    assert "admissible=no" in out and "reason=one-negative-edge equivalent" in out


def test_cli_flow_then_verify(tmp_path, capsys):
    g = k4().with_negative(range(6))
    gpath = write(tmp_path, "k4.sg", io.emit_graph(g))
    fpath = str(tmp_path / "k4.flow")
    assert main(["--machine", "flow", gpath, "--cubic", "-o", fpath]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "trace=Case 2 / Subcase 2.1" in out and "k=6" in out
    assert open(fpath).readline() == "flow 6\n"
    assert main(["verify", gpath, fpath]) == 0


def test_cli_verify_rejects_bad_flow(tmp_path):
    gpath = write(tmp_path, "d2.sg", D2)
    fpath = write(tmp_path, "bad.flow", "flow 3\nf 0 1\nf 1 1\n")
    assert main(["verify", gpath, fpath]) == 1


def test_cli_exit_codes(tmp_path, capsys):
    bad = write(tmp_path, "bad.sg", "sg 2 1\ne 0 x +\n")
    assert main(["check", bad]) == 3
    assert "line 2" in capsys.readouterr().out
    d2 = write(tmp_path, "d2.sg", D2)
    assert main(["flow", d2, "--cubic"]) == 2
    assert main(["oracle", d2, "--kmax", "4"]) == 1
    pet = "sg 10 15\n" + "".join(f"e {i} {(i + 1) % 5} +\n" for i in range(5)) \
        + "".join(f"e {5 + i} {5 + (i + 2) % 5} +\n" for i in range(5)) + "".join(f"e {i} {5 + i} +\n" for i in range(5))
    assert main(["color", write(tmp_path, "pet.sg", pet)]) == 1
    assert main(["check", str(tmp_path / "missing.sg")]) == 3


def test_cli_hamiltonian_and_planar(tmp_path, capsys):
    g = family("wheel", 5).with_negative([5, 6])
    gpath = write(tmp_path, "w.sg", io.emit_graph(g))
    assert main(["--machine", "flow", gpath, "--hamiltonian", "0 1 2 3 4 5"]) == 0
    assert any(ln.startswith("k=") for ln in capsys.readouterr().out.splitlines())
    assert main(["flow", gpath, "--planar"]) == 0


def test_cli_oracle_and_figures(tmp_path, capsys):
    gpath = write(tmp_path, "k4.sg", io.emit_graph(k4().with_negative(range(6))))
    fig = tmp_path / "o.png"
    assert main(["--machine", "oracle", gpath, "--kmax", "5", "--figure", str(fig)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "minimum=3" in out and "k2=no" in out and "k3=yes" in out
    assert fig.stat().st_size > 1000
    fig2 = tmp_path / "f.png"
    assert main(["flow", gpath, "--figure", str(fig2)]) == 0 and fig2.stat().st_size > 1000


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_cli_gen_families(name, capsys):
    assert main(["gen", "--family", name, "--n", "4"]) == 0
    g = io.parse_graph(capsys.readouterr().out)
    assert g.edges


def test_cli_export_dot(tmp_path, capsys):
    assert main(["export-dot", write(tmp_path, "d2.sg", D2)]) == 0
    assert "style=dashed" in capsys.readouterr().out


def test_console_script_entry(tmp_path):
    path = write(tmp_path, "d2.sg", D2)
    res = subprocess.run([sys.executable, "-m", "signedflow.cli", "check", path], capture_output=True, text=True)
    assert res.returncode == 1
