import json
import subprocess
import sys

import pytest

from wordrep.cli import main
from wordrep.formats import (
    FormatError,
    coloring_from_json,
    graph_from_json,
    graph_to_json,
    orientation_from_json,
    orientation_to_json,
    to_dot,
)
from wordrep.graph import Graph, cycle_graph, t1_graph
from wordrep.instances import ring_coloring, ring_triangulation
from wordrep.polyomino import triangulation_graph
from wordrep.semitrans import Orientation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


# -- formats ---------------------------------------------------------------------


def test_graph_json_round_trip():
    for g in (t1_graph(), Graph.build((1, 2, 5), [(1, 5)])):
        assert graph_from_json(json.loads(json.dumps(graph_to_json(g)))) == g


def test_graph_json_errors():
    with pytest.raises(FormatError, match="missing key 'edges'"):
        graph_from_json({"n": 3}, "g.json")
    with pytest.raises(FormatError, match=r"g.json: edges\[1\]"):
        graph_from_json({"n": 3, "edges": [[0, 1], [1]]}, "g.json")
    with pytest.raises(FormatError, match="self-loop"):
        graph_from_json({"n": 3, "edges": [[1, 1]]}, "g.json")


def test_orientation_json_round_trip():
    o = Orientation.from_arcs(range(4), [(0, 1), (2, 1), (2, 3), (0, 3)])
    assert orientation_from_json(orientation_to_json(o)) == o
    with pytest.raises(FormatError, match="both ways"):
        orientation_from_json({"n": 2, "arcs": [[0, 1], [1, 0]]})


def test_coloring_json():
    c = ring_coloring()
    assert coloring_from_json(c.to_json()) == c
    assert coloring_from_json({"coloring": c.to_json()}) == c


def test_dot_export():
    g = cycle_graph(3)
    text = to_dot(g)
    assert text.startswith("graph G {") and "0 -- 1;" in text
    o = Orientation.from_arcs(range(3), [(0, 1), (1, 2), (0, 2)])
    assert "0 -> 2;" in to_dot(g, o)
    colored = to_dot(triangulation_graph(ring_triangulation()), coloring=ring_coloring())
    assert "fillcolor" in colored


# -- commands ----------------------------------------------------------------------


def test_word_graph_c4(capsys):
    code, out, _ = run(capsys, "word", "graph", "14213243")
    assert code == 0
    record = json.loads(out)
    assert record["graph"]["edges"] == [[1, 2], [1, 4], [2, 3], [3, 4]]


def test_word_graph_dot(capsys):
    code, out, _ = run(capsys, "word", "graph", "1 2 1", "--format", "dot")
    assert code == 0 and "1 -- 2;" in out


def test_word_check_round_trip(tmp_path, capsys):
    _, out, _ = run(capsys, "word", "graph", "14213243")
    path = tmp_path / "c4.json"
    path.write_text(out)
    code, out, _ = run(capsys, "word", "check", "14213243", str(path))
    assert code == 0 and json.loads(out)["represents"] is True
    code, out, _ = run(capsys, "word", "check", "12341234", str(path))
    assert code == 1 and json.loads(out)["represents"] is False


def test_word_check_alphabet_mismatch(tmp_path, capsys):
    path = write_json(tmp_path / "g.json", graph_to_json(cycle_graph(4)))
    code, _, err = run(capsys, "word", "check", "14213243", path)
    assert code == 2 and "alphabet" in err


def test_orient_solve_t1(tmp_path, capsys):
    path = write_json(tmp_path / "t1.json", graph_to_json(t1_graph()))
    trace = tmp_path / "t1.trace"
    code, out, _ = run(capsys, "orient", "solve", path, "--trace", str(trace))
    assert code == 1
    assert json.loads(out)["outcome"] == "impossible"
    lines = trace.read_text().splitlines()
    assert lines[0].startswith("B ") and any(l.startswith("MC ") for l in lines)


def test_orient_solve_then_verify(tmp_path, capsys):
    path = write_json(tmp_path / "c4.json", graph_to_json(cycle_graph(4)))
    code, out, _ = run(capsys, "orient", "solve", path)
    assert code == 0
    solved = tmp_path / "solved.json"
    solved.write_text(out)
    code, out, _ = run(capsys, "orient", "verify", str(solved))
    assert code == 0 and json.loads(out) == {"status": "ok"}


def test_orient_verify_shortcut(tmp_path, capsys):
    path = write_json(tmp_path / "o.json", {"n": 4, "arcs": [[0, 1], [1, 2], [2, 3], [0, 3]]})
    code, out, _ = run(capsys, "orient", "verify", path)
    record = json.loads(out)
    assert code == 1
    assert record["status"] == "shortcut" and record["shortcut"]["path"] == [0, 1, 2, 3]


def test_orient_budget(tmp_path, capsys, monkeypatch):
    path = write_json(tmp_path / "t1.json", graph_to_json(t1_graph()))
    code, _, err = run(capsys, "orient", "solve", path, "--budget", "5")
    assert code == 2 and "exceeded" in err
    monkeypatch.setenv("WORDREP_BUDGET", "5")
    code, _, _ = run(capsys, "orient", "solve", path)
    assert code == 2


def test_malformed_json_location(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3,\n "edges": [[0, 1],\n')
    code, _, err = run(capsys, "orient", "solve", str(path))
    assert code == 2 and f"{path}:3:" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "orient", "verify", "/nonexistent/o.json")
    assert code == 2 and "/nonexistent/o.json" in err


def test_poly_triangulations_filters(tmp_path, capsys):
    square = tmp_path / "sq.txt"
    square.write_text("##\n##\n")
    code, out, _ = run(capsys, "poly", "triangulations", str(square))
    rows = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and len(rows) == 16
    assert all(r["three_colorable"] == r["semi_transitive"] == (not r["forbidden"]) for r in rows)
    for flag, n in (("3col", 8), ("forbidden", 8), ("solve", 8)):
        _, out, _ = run(capsys, "poly", "triangulations", str(square), "--filter", flag)
        assert len(out.splitlines()) == n


def test_poly_triangulations_bound(tmp_path, capsys):
    square = tmp_path / "sq.txt"
    square.write_text("##\n##\n")
    code, _, err = run(capsys, "poly", "triangulations", str(square), "--max-cells", "3")
    assert code == 2 and "bound" in err


def test_poly_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("#.\n#x\n")
    code, _, err = run(capsys, "poly", "k4", str(bad))
    assert code == 2 and f"{bad}:2:2" in err


def test_poly_k4(tmp_path, capsys):
    strip = tmp_path / "strip.txt"
    strip.write_text("#####\n")
    code, out, _ = run(capsys, "poly", "k4", str(strip))
    assert code == 0 and json.loads(out)["graph"]["n"] == 12
    code, out, _ = run(capsys, "poly", "k4", str(strip), "--orient")
    assert code == 0 and json.loads(out)["verdict"]["status"] == "ok"
    code, out, _ = run(capsys, "poly", "k4", str(strip), "--column-variant")
    assert code == 1 and json.loads(out)["verdict"]["status"] == "shortcut"
    # emitted orientation is accepted back
    o = tmp_path / "o.json"
    o.write_text(out)
    code, _, _ = run(capsys, "orient", "verify", str(o))
    assert code == 1


def test_verify_main_theorem(capsys):
    code, out, _ = run(capsys, "verify", "main-theorem", "--max-cells", "4")
    assert code == 0
    assert out.strip() == "equivalence holds: 362 triangulations checked"


def test_verify_main_theorem_jobs(capsys):
    code, out, _ = run(capsys, "verify", "main-theorem", "--max-cells", "3", "--jobs", "2")
    assert code == 0 and "equivalence holds" in out


def test_pretty(capsys):
    _, out, _ = run(capsys, "--pretty", "word", "graph", "121")
    assert out.count("\n") > 3 and json.loads(out)["word"] == "121"


@pytest.mark.parametrize("argv", [[], ["word"], ["word", "graph"], ["orient", "solve", "x.json", "--bogus"],
                                  ["verify", "main-theorem"], ["orient", "solve", "x", "--budget", "0"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wordrep", "word", "graph", "14213243"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["graph"]["n"] == 4
