import pytest

from bireconf.cli import RunConfig, main
from bireconf.explorer import Instance
from bireconf.formats import read_instance, read_sequence, write_instance
from bireconf.graph_core import build_graph, complement
from bireconf.properties import Biclique, Clique, MoveRule, MSet

TRIANGLE = "graph: {n: 3, edges: [[0, 1], [1, 2], [0, 2]]}\nproperty: clique 2\nrule: tj\n"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k4_instance(tmp_path, k4_plus3):
    path = tmp_path / "k4.yaml"
    write_instance(Instance(k4_plus3, Clique(3), MoveRule.TJ, {0, 1, 2}, {1, 2, 3}), path)
    return path


def test_run_config_rejects_zero_cap():
    with pytest.raises(ValueError):
        RunConfig(cap=0)


def test_solve_triangle(tmp_path, capsys):
    inst = tmp_path / "tri.yaml"
    inst.write_text(TRIANGLE + "start: [0, 1]\ntarget: [1, 2]\n")
    code, out, _ = run(capsys, "solve", inst, "--out-dir", tmp_path)
    assert (code, out) == (0, "YES\n")
    assert (tmp_path / "tri.witness").read_text() == "0 1\n1 2\n"


def test_solve_start_equals_target(tmp_path, capsys):
    inst = tmp_path / "tri.yaml"
    inst.write_text(TRIANGLE + "start: [0, 2]\ntarget: [0, 2]\n")
    code, out, _ = run(capsys, "solve", inst, "-o", tmp_path / "w.seq")
    assert (code, out) == (0, "YES\n")
    assert (tmp_path / "w.seq").read_text() == "0 2\n"


def test_solve_no(tmp_path, capsys):
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    write_instance(Instance(g, Clique(3), MoveRule.TJ, {0, 1, 2}, {3, 4, 5}), tmp_path / "t.yaml")
    code, out, _ = run(capsys, "solve", tmp_path / "t.yaml", "--out-dir", tmp_path)
    assert (code, out) == (0, "NO\n")
    assert not (tmp_path / "t.witness").exists()


def test_solve_malformed_graph_header(tmp_path, capsys):
    (tmp_path / "g.txt").write_text("# comment\n3 three\n0 1\n")
    inst = tmp_path / "bad.yaml"
    inst.write_text("graph: g.txt\nproperty: clique 2\nrule: tj\nstart: [0, 1]\ntarget: [0, 1]\n")
    code, _, err = run(capsys, "solve", inst)
    assert code == 2
    assert "g.txt:2" in err and "header" in err


def test_solve_cap_exceeded(tmp_path, capsys):
    inst = tmp_path / "tri.yaml"
    inst.write_text(TRIANGLE + "start: [0, 1]\ntarget: [1, 2]\n")
    code, _, err = run(capsys, "solve", inst, "--cap", 2)
    assert code == 3 and "cap" in err


def test_reduce_clr2bbr(tmp_path, capsys, k4_instance):
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "reduce", "clr2bbr", k4_instance, "--out-dir", out_dir)
    assert code == 0
    assert out.split() == [str(out_dir / "k4.bbr.yaml"), str(out_dir / "k4.cert")]
    produced = read_instance(out_dir / "k4.bbr.yaml")
    assert produced.graph.n == 13 and produced.spec == Biclique(3, 3)
    assert produced.start == {4, 5, 6, 7, 8, 10}


def test_reduce_clr2bbr_needs_padding(tmp_path, capsys):
    g = build_graph(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)])
    write_instance(Instance(g, Clique(3), MoveRule.TJ, {0, 1, 2}, {1, 2, 3}), tmp_path / "n5.yaml")
    code, _, err = run(capsys, "reduce", "clr2bbr", tmp_path / "n5.yaml", "--out-dir", tmp_path)
    assert code == 4 and "n-k-1 != C(k,2)" in err

    code, _, _ = run(capsys, "reduce", "clr2bbr", tmp_path / "n5.yaml", "--autopad", "--out-dir", tmp_path)
    assert code == 0
    assert read_instance(tmp_path / "n5.padded.yaml").graph.n == 7
    assert read_instance(tmp_path / "n5.bbr.yaml").graph.n == 7 + 6
    # the certificate points at the padded source and loads cleanly
    assert "source: n5.padded.yaml" in (tmp_path / "n5.cert").read_text()
    seq = tmp_path / "k.seq"
    seq.write_text("0 1 2\n1 2 3\n")
    code, _, _ = run(capsys, "translate", "lift", tmp_path / "n5.cert", seq, "--out-dir", tmp_path)
    assert code == 0


@pytest.mark.parametrize("rule", ["cj", "cs", "cs1"])
def test_reduce_bbr2ccr(tmp_path, capsys, k22, rule):
    k23 = build_graph(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    write_instance(Instance(k23, Biclique(2, 2), MoveRule.TJ, {0, 1, 2, 3}, {0, 1, 2, 4}), tmp_path / "b.yaml")
    code, out, _ = run(capsys, "reduce", "bbr2ccr", tmp_path / "b.yaml", "--rule", rule, "--out-dir", tmp_path)
    assert code == 0
    produced = read_instance(out.strip())
    assert produced.graph == complement(k23)
    assert produced.spec == MSet((2, 2)) and produced.rule == MoveRule(rule)
    code, out, _ = run(capsys, "solve", out.strip(), "--out-dir", tmp_path)
    assert out == "YES\n"


def test_reduce_bbr2ccr_rejects_tj_and_unbalanced(tmp_path, capsys, k22):
    write_instance(Instance(k22.graph, Biclique(2, 2), MoveRule.TJ, {0, 1, 2, 3}, {0, 1, 2, 3}), tmp_path / "b.yaml")
    code, _, err = run(capsys, "reduce", "bbr2ccr", tmp_path / "b.yaml", "--rule", "tj")
    assert code == 4 and "cj, cs or cs1" in err
    write_instance(Instance(k22.graph, Biclique(2, 1), MoveRule.TJ, {0, 2, 3}, {0, 2, 3}), tmp_path / "u.yaml")
    code, _, err = run(capsys, "reduce", "bbr2ccr", tmp_path / "u.yaml")
    assert code == 4 and "balanced" in err


def test_translate_round_trip(tmp_path, capsys, k4_instance):
    run(capsys, "reduce", "clr2bbr", k4_instance, "--out-dir", tmp_path)
    seq = tmp_path / "k.seq"
    seq.write_text("0 1 2\n1 2 3\n")
    code, out, _ = run(
        capsys, "translate", "lift", tmp_path / "k4.cert", seq,
        "-o", tmp_path / "lifted.seq", "--trace", tmp_path / "lift.trace",
    )
    assert code == 0 and out.strip() == str(tmp_path / "lifted.seq")
    lines = (tmp_path / "lifted.seq").read_text().splitlines()
    assert 2 <= len(lines) <= 5
    assert (tmp_path / "lift.trace").read_text() == "0 0 3 3 0 micro_moves=2\n"

    code, _, _ = run(capsys, "verify", tmp_path / "k4.bbr.yaml", tmp_path / "lifted.seq")
    assert code == 0
    code, out, _ = run(capsys, "translate", "project", tmp_path / "k4.cert", tmp_path / "lifted.seq", "--out-dir", tmp_path)
    assert code == 0
    assert read_sequence(out.strip()) == [{0, 1, 2}, {1, 2, 3}]
    code, _, _ = run(capsys, "verify", k4_instance, out.strip())
    assert code == 0


def test_translate_lift_invalid_sequence(tmp_path, capsys, k4_instance):
    run(capsys, "reduce", "clr2bbr", k4_instance, "--out-dir", tmp_path)
    seq = tmp_path / "bad.seq"
    seq.write_text("0 1 2\n0 1 2\n1 2 3\n")
    code, _, err = run(capsys, "translate", "lift", tmp_path / "k4.cert", seq, "--out-dir", tmp_path)
    assert code == 5 and "index 1" in err
    assert not (tmp_path / "bad.lift.seq").exists()


def test_verify(tmp_path, capsys):
    inst = tmp_path / "tri.yaml"
    inst.write_text(TRIANGLE + "start: [0, 1]\ntarget: [0, 2]\n")
    (tmp_path / "ok.seq").write_text("0 1\n0 2\n")
    (tmp_path / "bad.seq").write_text("0 1\n0 2\n0 2\n")
    assert run(capsys, "verify", inst, tmp_path / "ok.seq")[:2] == (0, "OK (2 configs, 1 moves)\n")
    code, out, _ = run(capsys, "verify", inst, tmp_path / "bad.seq")
    assert code == 5 and out.startswith("INVALID at") and "2" in out


def test_enumerate(tmp_path, capsys):
    (tmp_path / "g.txt").write_text("6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
    code, out, _ = run(capsys, "enumerate", "--graph", tmp_path / "g.txt", "--property", "clique 2")
    assert code == 0 and out.splitlines() == ["0 1", "0 2", "1 2", "3 4", "3 5", "4 5"]
    code, out, _ = run(
        capsys, "enumerate", "--graph", tmp_path / "g.txt", "--property", "clique 3", "--classes",
    )
    assert out == "0 1 2\n\n3 4 5\n"
    assert run(capsys, "enumerate")[0] != 0


def test_selftest_with_tiny_cap(capsys):
    code, out, _ = run(capsys, "selftest", "--cap", 1)
    assert code == 0
    assert "WARNING" in out and "cap exceeded" in out


@pytest.mark.slow
def test_selftest_default(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "WARNING" not in out
    assert "counterexample" not in out


def _pipeline(capsys, base, k4_plus3):
    base.mkdir()
    write_instance(Instance(k4_plus3, Clique(3), MoveRule.TJ, {0, 1, 2}, {1, 2, 3}), base / "k4.yaml")
    run(capsys, "solve", base / "k4.yaml", "--out-dir", base, "--strict")
    run(capsys, "reduce", "clr2bbr", base / "k4.yaml", "--out-dir", base)
    run(capsys, "solve", base / "k4.bbr.yaml", "--out-dir", base)
    run(capsys, "translate", "lift", base / "k4.cert", base / "k4.witness", "--out-dir", base, "--trace", base / "t")
    run(capsys, "translate", "project", base / "k4.cert", base / "k4.bbr.witness", "--out-dir", base)
    return {p.name: p.read_bytes() for p in sorted(base.iterdir())}


def test_outputs_are_byte_identical_across_runs(tmp_path, capsys, k4_plus3):
    first = _pipeline(capsys, tmp_path / "a", k4_plus3)
    second = _pipeline(capsys, tmp_path / "b", k4_plus3)
    assert {"k4.lift.seq", "k4.bbr.project.seq", "t"} <= set(first)
    assert first == second
