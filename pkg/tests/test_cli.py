import numpy as np
import pytest

import hogr
from hogr.cli import EXIT_CAP, EXIT_INPUT, main


def _gen(tmp_path, name, *argv):
    path = str(tmp_path / name)
    assert main(["gen", *argv, "--out", path]) == 0
    return path


def test_gen_and_load_stats(tmp_path, capsys):
    path = _gen(tmp_path, "grid.txt", "flatgrid", "--k", "100")
    assert main(["load-stats", path]) == 0
    out = capsys.readouterr().out
    assert out.startswith("n=10000 m=19800")


def test_gen_to_stdout_pipes_into_load_stats(tmp_path, capsys, monkeypatch):
    import io
    assert main(["gen", "flatgrid", "--k", "4"]) == 0
    text = capsys.readouterr().out
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(text.encode())))
    assert main(["load-stats", "-"]) == 0
    assert capsys.readouterr().out.startswith("n=16 m=24")


def test_gen_binary_round_trip(tmp_path, capsys):
    path = _gen(tmp_path, "g.hogr", "hypergrid", "--rings", "2")
    assert main(["load-stats", path]) == 0
    assert capsys.readouterr().out.startswith("n=29 m=63")


def test_build_is_byte_deterministic(tmp_path):
    graph_path = _gen(tmp_path, "g.txt", "flatgrid", "--k", "12")
    o1 = str(tmp_path / "a.hotr")
    o2 = str(tmp_path / "b.hotr")
    for out in (o1, o2):
        assert main(["build", "hyperbfs", graph_path, "--k", "10",
                     "--strategy", "degree", "--seed", "7", "--out", out]) == 0
    assert open(o1, "rb").read() == open(o2, "rb").read()


def test_query_and_batch(tmp_path, capsys):
    graph_path = _gen(tmp_path, "g.txt", "flatgrid", "--k", "6")
    oracle_path = str(tmp_path / "o.hotr")
    assert main(["build", "hyperbfs", graph_path, "--k", "4", "--seed", "1",
                 "--out", oracle_path]) == 0
    capsys.readouterr()
    assert main(["query", oracle_path, "3", "3"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["query", oracle_path, "0", "35"]) == 0
    assert int(capsys.readouterr().out) >= 10  # opposite grid corners

    pairs_path = tmp_path / "pairs.csv"
    pairs_path.write_text("0,35\n1 2\n")
    assert main(["query-batch", oracle_path, str(pairs_path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and lines[1].startswith("1,2,")


def test_eval_csv_deterministic(tmp_path):
    graph_path = _gen(tmp_path, "g.txt", "flatgrid", "--k", "10")
    oracle_path = str(tmp_path / "o.hotr")
    assert main(["build", "hyperbfs", graph_path, "--k", "3", "--seed", "2",
                 "--out", oracle_path]) == 0
    outs = []
    for name in ("e1.csv", "e2.csv"):
        out = str(tmp_path / name)
        assert main(["eval", graph_path, oracle_path, "--pairs", "500",
                     "--seed", "9", "--out", out]) == 0
        outs.append(open(out, "rb").read())
    assert outs[0] == outs[1]
    assert outs[0].splitlines()[1].startswith(b"dG,count,")


def test_range_report(tmp_path):
    graph_path = _gen(tmp_path, "g.txt", "flatgrid", "--k", "8")
    out = str(tmp_path / "r.csv")
    assert main(["range", graph_path, "--kh", "4", "--kg", "6",
                 "--delta", "7.0", "--pairs", "300", "--seed", "3",
                 "--out", out]) == 0
    lines = open(out).read().splitlines()
    assert lines[0] == "# containment_failures=0"
    assert lines[1] == "dG,mean_lower,mean_upper,mean_width,pairs"


def test_delta_csv_row(tmp_path, capsys):
    graph_path = _gen(tmp_path, "g.txt", "hypergrid", "--rings", "3")
    assert main(["delta", graph_path, "--nodes", "30", "--quadruples", "5000",
                 "--seed", "4"]) == 0
    row = capsys.readouterr().out.strip().split(",")
    assert len(row) == 5 and row[3] == "30" and row[4] == "4"


def test_bench_shape(tmp_path, capsys):
    graph_path = _gen(tmp_path, "g.txt", "flatgrid", "--k", "20")
    assert main(["bench", graph_path, "--queries", "1000", "--k", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "load_graph_sec,build_tree_sec,query_batch_sec,queries"
    assert lines[1].endswith(",1000")


def test_exit_codes(tmp_path, monkeypatch):
    assert main(["no-such-command"]) == 2
    assert main(["load-stats", str(tmp_path / "missing.txt")]) == EXIT_INPUT
    assert main(["gen", "flatgrid", "--k", "1"]) == EXIT_INPUT

    graph_path = _gen(tmp_path, "g.txt", "flatgrid", "--k", "5")

    def refuse(*a, **kw):
        raise hogr.CapExceededError("capacity cap exceeded")

    monkeypatch.setattr("hogr.cli.exact.sample_pairs", refuse)
    oracle_path = str(tmp_path / "o.hotr")
    assert main(["build", "hyperbfs", graph_path, "--k", "1", "--seed", "0",
                 "--out", oracle_path]) == 0
    assert main(["eval", graph_path, oracle_path, "--pairs", "10",
                 "--seed", "0"]) == EXIT_CAP
