import json

import pytest

from partlat import io
from partlat.cli import run
from partlat.constructions import atom_odd, quad_n6_atom
from partlat.partition import parse_prt, top
from partlat.terms import TermVector, Var, random_terms


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_construct_round_trip(capsys, tmp_path):
    assert run(["construct", "--shape", "atom", "--n", "7"]) == 0
    text = capsys.readouterr().out
    quad = io.read_quad(text)
    assert quad.n == 7 and parse_prt("prt(12)", 7) in quad
    out = tmp_path / "q.txt"
    assert run(["construct", "--alpha", "prt(24;56)", "--n", "6", "--out", str(out)]) == 0
    assert io.read_quad(out.read_text()).target_element == parse_prt("prt(24;56)", 6)
    assert run(["verify", str(out)]) == 0


def test_construct_seed_rule(capsys):
    assert run(["construct", "--shape", "2+2", "--n", "7"]) == 1
    assert "--seed" in capsys.readouterr().err
    assert run(["construct", "--shape", "2+2", "--n", "7", "--seed", "1"]) == 0


def test_verify_phi6(capsys, files):
    path = files("phi6.txt", io.write_quad(quad_n6_atom()))
    assert run(["verify", "--mode", "closure", path]) == 0
    assert "verdict: Generates" in capsys.readouterr().out
    assert run(["verify", "--mode", "script", path, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_verify_top_is_not_generating(capsys, files):
    path = files("top.txt", io.write_set(5, [top(5)]))
    assert run(["verify", path]) == 2
    assert "NotGenerates" in capsys.readouterr().out
    assert run(["verify", "--mode", "script", path]) == 1


def test_verify_unknown_on_budget(capsys, files):
    path = files("phi6.txt", io.write_quad(quad_n6_atom()))
    assert run(["verify", path, "--budget", "3"]) == 2
    assert "Unknown" in capsys.readouterr().out


def test_closure_writes_elements_and_plot(capsys, files, tmp_path):
    path = files("s.txt", io.write_set(4, [parse_prt("prt(12)", 4), parse_prt("prt(34)", 4)]))
    el, png = tmp_path / "c.txt", tmp_path / "c.png"
    assert run(["closure", path, "--elements", str(el), "--plot", str(png), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["closure_size"] == 4
    n, parts = io.read_set(el.read_text())
    assert n == 4 and len(parts) == 4 and png.stat().st_size > 0


def test_member(capsys, files):
    path = files("phi6.txt", io.write_quad(quad_n6_atom()))
    assert run(["member", path, "--p", "prt(56)"]) == 0
    assert capsys.readouterr().out == "member: true\n"
    set_path = files("top.txt", io.write_set(6, [top(6)]))
    assert run(["member", set_path, "--p", "prt(12)"]) == 0
    assert capsys.readouterr().out == "member: false\n"
    assert run(["member", path, "--p", "prt(56)", "--budget", "0"]) == 2


def test_extensions_find(capsys, files, tmp_path):
    path = files("q.txt", io.write_quad(atom_odd(2)))
    out = tmp_path / "w.txt"
    assert run(["extensions", path, "--m", "2", "--out", str(out)]) == 0
    assert "generating: 1" in capsys.readouterr().out
    assert run(["verify", str(out)]) == 0
    assert run(["extensions", path, "--m", "1", "--mode", "count", "--budget", "50"]) == 2


def test_eligible(capsys, files):
    path = files("q.txt", io.write_quad(atom_odd(3)))
    assert run(["eligible", path, "--u", "3", "--v", "4"]) == 0
    assert capsys.readouterr().out.endswith("eligible: true\n")
    assert run(["eligible", path, "--u", "1", "--v", "2", "--json"]) == 2
    assert json.loads(capsys.readouterr().out)["eligible"] is False
    assert run(["eligible", path, "--u", "1", "--v", "1"]) == 1


def test_term_commands(capsys, files, tmp_path):
    out = tmp_path / "t.txt"
    assert run(["term", "random", "--k", "4", "--count", "5", "--depth", "4", "--seed", "3",
                "--out", str(out)]) == 0
    assert io.read_terms(out.read_text()) == random_terms(4, 5, 4, 3)
    assert run(["term", "random", "--k", "4", "--count", "5", "--depth", "4"]) == 1
    tup = files("tup.txt", io.write_tuple(5, atom_odd(2).members))
    single = files("one.txt", io.write_terms(TermVector(4, (Var(2), parse_term_beta()))))
    assert run(["term", "eval", single, tup]) == 0
    assert capsys.readouterr().out == "prt(15;23)\nprt(15)\n"
    assert run(["term", "key", str(out), tup, "--hex"]) == 0
    h1 = capsys.readouterr().out
    assert run(["term", "key", str(out), tup, "--hex"]) == 0
    assert capsys.readouterr().out == h1
    assert run(["term", "eval", str(out)]) == 1


def parse_term_beta():
    from partlat.terms import parse_term

    return parse_term("x2 & (x1 | x4)")


def test_graph(capsys, tmp_path):
    fig = tmp_path / "g.png"
    assert run(["graph", "--lemma", "oddat", "--k", "8", "--figure", str(fig)]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph oddat_k8 {") and fig.exists()
    assert run(["graph", "--lemma", "evenat", "--k", "2"]) == 1


def test_script_dump_and_run(capsys, tmp_path):
    out = tmp_path / "n7.txt"
    assert run(["script", "dump", "--id", "n7", "--out", str(out)]) == 0
    assert sum(":=" in ln for ln in out.read_text().splitlines()) == 25
    assert run(["script", "run", "--id", "oddat", "--k", "5", "--witnesses"]) == 0
    assert "ok: true" in capsys.readouterr().out
    assert run(["script", "run", "--id", "window", "--k", "3"]) == 0
    assert run(["script", "run", "--id", "oddat"]) == 1


def test_bell(capsys, tmp_path):
    assert run(["bell", "--n", "9"]) == 0
    assert capsys.readouterr().out == "21147\n"
    out = tmp_path / "p4.txt"
    assert run(["bell", "--n", "4", "--enumerate", "--out", str(out)]) == 0
    n, parts = io.read_set(out.read_text())
    assert n == 4 and len(set(parts)) == 15


def test_usage_errors(capsys):
    assert run([]) == 1
    assert run(["frobnicate"]) == 1
    assert run(["verify", "/nonexistent/file"]) == 1
    assert "cannot read" in capsys.readouterr().err
    assert run(["construct", "--alpha", "prt(12)", "--n", "3"]) == 1


def test_report(capsys, tmp_path):
    assert run(["report", "--out", str(tmp_path), "--nmax", "5", "--k", "3", "--seed", "1"]) == 0
    table = (tmp_path / "sweep.tsv").read_text().splitlines()
    assert table[0].split("\t")[:4] == ["n", "shape", "provenance", "verdict"]
    assert len(table) == 1 + 2 * 3
    assert capsys.readouterr().out.splitlines() == table
    for name in ("sweep.png", "closure_n6.png", "ladder_oddat.png", "ladder_oddhtwo.dot"):
        assert (tmp_path / name).exists()
