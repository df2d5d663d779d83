"""End-to-end checks of the ictree command-line interface.

Everything runs in-process through main(argv) so failures carry tracebacks;
one subprocess test confirms the installed entry point works at all.
"""

import csv
import io
import json
import subprocess
import sys

import pytest

from ictree import count_complete, enum_brute, gen_synthetic, is_interconnection_tree
from ictree.cli import main
from ictree.io import parse_graph, serialize_graph

from conftest import tree_keys


def write_instance(tmp_path, g, name="g.json"):
    p = tmp_path / name
    p.write_text(serialize_graph(g) + "\n", encoding="utf-8")
    return str(p)


def named_edges(g, line):
    """Decode one wire-format line back to the tree_keys normal form."""
    back = {g.name_of(v): v for v in range(g.n)}
    out = []
    for tok in line.split():
        a, _, b = tok.partition("-")
        u, v = back[a], back[b]
        out.append((u, v) if u < v else (v, u))
    return tuple(sorted(out))


# -- decide ----------------------------------------------------------------------


def test_decide_yes_exit_zero(tmp_path, capsys):
    path = write_instance(tmp_path, gen_synthetic((2, 2, 2), seed=0))
    assert main(["decide", path]) == 0
    assert capsys.readouterr().out.strip() == "yes"


def test_decide_no_exit_one(tmp_path, capsys):
    # three singleton parts: any two edges would reuse a vertex
    path = write_instance(tmp_path, gen_synthetic((1, 1, 1), seed=0))
    assert main(["decide", path]) == 1
    assert capsys.readouterr().out.strip() == "no"


@pytest.mark.parametrize("algo", ["auto", "complete", "quasi", "fpt", "brute"])
def test_decide_algos_agree_on_complete_instance(algo, tmp_path, capsys):
    path = write_instance(tmp_path, gen_synthetic((2, 2, 1), seed=3))
    assert main(["decide", path, "--algo", algo]) == 0
    assert capsys.readouterr().out.strip() == "yes"


def test_decide_witness_line_is_a_real_tree(tmp_path, capsys):
    g = gen_synthetic((3, 2, 2), seed=7)
    path = write_instance(tmp_path, g)
    assert main(["decide", path, "--witness"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "yes"
    from ictree.graph import Edge
    assert is_interconnection_tree(
        g, [Edge.make(u, v, 1.0) for u, v in named_edges(g, lines[1])])


def test_decide_no_witness_line_on_no(tmp_path, capsys):
    path = write_instance(tmp_path, gen_synthetic((1, 1, 1), seed=0))
    assert main(["decide", path, "--witness"]) == 1
    assert capsys.readouterr().out.strip() == "no"


def test_decide_quasi_on_general_instance_exits_two(tmp_path, capsys):
    # keep only a perfect matching between parts 2 and 3: they are not joined
    g = gen_synthetic((2, 2, 2), seed=1)
    keep = [e for e in g.edges
            if not (g.part_of(e.u) == 2 and g.part_of(e.v) == 3)]
    keep.append(next(e for e in g.edges
                     if g.part_of(e.u) == 2 and g.part_of(e.v) == 3))
    from ictree.graph import MultipartiteGraph
    h = MultipartiteGraph([list(p) for p in g.parts],
                          [(e.u, e.v, e.w) for e in keep])
    path = write_instance(tmp_path, h)
    assert main(["decide", path, "--algo", "quasi"]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_exits_two(capsys):
    assert main(["decide", "/no/such/file.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_garbage_file_exits_two(tmp_path, capsys):
    p = tmp_path / "junk.json"
    p.write_text("{this is not json", encoding="utf-8")
    assert main(["decide", str(p)]) == 2
    assert "error:" in capsys.readouterr().err


# -- count -----------------------------------------------------------------------


def test_count_complete_closed_form(tmp_path, capsys):
    g = gen_synthetic((3, 2, 1), seed=2)
    path = write_instance(tmp_path, g)
    assert main(["count", path]) == 0
    assert int(capsys.readouterr().out) == count_complete(g)


def test_count_brute_agrees(tmp_path, capsys):
    g = gen_synthetic((2, 2, 2), seed=5)
    path = write_instance(tmp_path, g)
    main(["count", path])
    a = int(capsys.readouterr().out)
    main(["count", path, "--brute"])
    b = int(capsys.readouterr().out)
    assert a == b == 24


# -- enum ------------------------------------------------------------------------


def test_enum_lists_exactly_the_count(tmp_path, capsys):
    g = gen_synthetic((3, 2, 2), seed=9)
    path = write_instance(tmp_path, g)
    assert main(["enum", path]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == count_complete(g)
    assert len(set(lines)) == len(lines)


@pytest.mark.parametrize("algo", ["brute", "bp", "ub", "wge"])
def test_enum_algos_emit_the_same_solution_set(algo, tmp_path, capsys):
    g = gen_synthetic((2, 2, 2), seed=4)
    path = write_instance(tmp_path, g)
    assert main(["enum", path, "--algo", algo]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    got = {named_edges(g, ln) for ln in lines}
    want = {tree_keys(t) for t in enum_brute(g)}
    assert got == want


def test_enum_limit_truncates(tmp_path, capsys):
    path = write_instance(tmp_path, gen_synthetic((3, 3, 2), seed=0))
    assert main(["enum", path, "--limit", "5"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 5


def test_enum_with_weights_column(tmp_path, capsys):
    g = gen_synthetic((2, 2), seed=8)
    path = write_instance(tmp_path, g)
    assert main(["enum", path, "--with-weights"]) == 0
    w_by_tree = {tree_keys(t): sum(e.w for e in t.edges) for t in enum_brute(g)}
    for line in capsys.readouterr().out.strip().splitlines():
        wire, _, wtxt = line.partition("\t")
        assert float(wtxt) == pytest.approx(w_by_tree[named_edges(g, wire)], abs=5e-7)


def test_enum_bp_on_general_instance_exits_two(tmp_path, capsys):
    # defects in two disjoint part pairs: no single part covers both,
    # so no reordering makes the remaining parts pairwise fully joined
    g = gen_synthetic((1, 2, 2, 2), seed=6)
    drop = set()
    for i, j in ((1, 2), (3, 4)):
        drop.add(next((e.u, e.v) for e in g.edges
                      if g.part_of(e.u) == i and g.part_of(e.v) == j))
    from ictree.graph import MultipartiteGraph
    h = MultipartiteGraph([list(p) for p in g.parts],
                          [(e.u, e.v, e.w) for e in g.edges
                           if (e.u, e.v) not in drop])
    path = write_instance(tmp_path, h)
    assert main(["enum", path, "--algo", "bp"]) == 2
    assert "error:" in capsys.readouterr().err


# -- gen -------------------------------------------------------------------------


def test_gen_synthetic_is_deterministic(capsys):
    main(["gen", "synthetic", "--sizes", "3,2,2", "--seed", "11"])
    first = capsys.readouterr().out
    main(["gen", "synthetic", "--sizes", "3,2,2", "--seed", "11"])
    assert capsys.readouterr().out == first
    main(["gen", "synthetic", "--sizes", "3,2,2", "--seed", "12"])
    assert capsys.readouterr().out != first


def test_gen_synthetic_defaults(capsys):
    assert main(["gen", "synthetic"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert tuple(len(p) for p in g.parts) == (5, 4, 3, 3, 2, 1)
    assert all(0.1 <= e.w <= 10.0 for e in g.edges)


def test_gen_writes_output_file(tmp_path, capsys):
    out = tmp_path / "inst.json"
    assert main(["gen", "synthetic", "--sizes", "2,2", "--seed", "0",
                 "-o", str(out)]) == 0
    g = parse_graph(out.read_text(encoding="utf-8"))
    assert tuple(len(p) for p in g.parts) == (2, 2)
    assert json.loads(out.read_text(encoding="utf-8"))["seed"] == 0


def test_gen_hampath_triangle(capsys):
    assert main(["gen", "hampath", "--edges", "0-1,1-2,0-2", "--n", "3"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert (g.n, g.m, g.k) == (6, 6, 3)


def test_gen_euclid_distance(capsys):
    assert main(["gen", "euclid", "--points", "a:0,0,0;b:3,4,0"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert g.m == 1 and g.edges[0].w == pytest.approx(5.0)


# -- bench -----------------------------------------------------------------------


def test_bench_csv_shape(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    assert main(["bench", "synthetic:3,2,2", "--repeat", "3",
                 "-o", str(out)]) == 0
    with open(out, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["instance", "algo", "heuristic", "n_solutions", "ni",
                       "nr", "mean_10000", "wall_ms", "truncated", "error"]
    body = rows[1:]
    assert len(body) == 3 * 4  # one BE row + one per heuristic, per variant
    assert {r[1] for r in body} == {"BE", "WGE"}
    for r in body:
        assert r[2] == "n/a" if r[1] == "BE" else r[2] in ("MaxV", "MinAvg", "MinEdge")
        assert int(r[3]) == 48  # (3+2+2-3 choose 1) * 3*2*2
        assert 0.0 <= float(r[4]) <= 1.0 and 0.0 <= float(r[5]) <= 1.0
        assert r[8] == "false" and r[9] == ""
    err = capsys.readouterr().err
    for h in ("MaxV", "MinAvg", "MinEdge"):
        assert h in err  # aggregate summary goes to stderr


def test_bench_stdout_and_first(capsys):
    assert main(["bench", "synthetic:2,2,2", "--repeat", "2",
                 "--first", "10"]) == 0
    captured = capsys.readouterr()
    body = list(csv.reader(io.StringIO(captured.out)))[1:]
    assert len(body) == 2 * 4
    assert all(r[8] == "true" for r in body)  # 10 < 24 solutions: truncated
    assert all(int(r[3]) == 10 for r in body)


def test_bench_single_file_source(tmp_path, capsys):
    path = write_instance(tmp_path, gen_synthetic((2, 2), seed=1))
    assert main(["bench", path]) == 0
    body = list(csv.reader(io.StringIO(capsys.readouterr().out)))[1:]
    assert len(body) == 4 and body[0][0] == path


# -- metrics ---------------------------------------------------------------------


def test_metrics_sorted_input(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1.0 2.0 3.0 4.0"))
    assert main(["metrics"]) == 0
    got = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert got["n"] == "4"
    assert got["inversions"] == "0"
    assert float(got["ni"]) == 0.0
    assert float(got["nr"]) == 0.0


def test_metrics_reversed_input(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("3\n2\n1\n"))
    assert main(["metrics"]) == 0
    got = dict(line.split() for line in capsys.readouterr().out.splitlines())
    assert got["inversions"] == "3"
    assert float(got["ni"]) == 1.0


# -- installed entry point ---------------------------------------------------------


def test_console_script_help():
    res = subprocess.run(["ictree", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "interconnection" in res.stdout
