import json

import pytest

from edgeideal.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main, parse_pairs, parse_subset
from edgeideal.constructions import complete_bipartite, matching_graph, realize, ribbon
from edgeideal.errors import UsageError
from edgeideal.graph import format_edge_list, graph6_decode, graph6_encode

COMMON = ["--workers", "1", "--log-level", "ERROR"]


def run(capsys, *argv):
    code = main(list(argv) + COMMON)
    return code, capsys.readouterr()


def test_invariants_of_complete_graph(capsys):
    code, captured = run(capsys, "invariants", "--graph6", "C~", "--format", "json")
    assert code == EXIT_OK
    record = json.loads(captured.out)
    assert (record["n"], record["edges"], record["alpha"]) == (4, 6, 1)
    assert (record["reg"], record["degH"], record["hPoly"]) == (1, 1, "1 + 3*t")
    assert record["betti"]
    assert record["boundsOk"] is True


def test_invariants_of_single_vertex(capsys):
    code, captured = run(capsys, "invariants", "--graph6", "@", "--format", "json")
    assert code == EXIT_OK
    record = json.loads(captured.out)
    assert (record["n"], record["hPoly"], record["reg"], record["degH"]) == (1, "1", 0, 0)


def test_invariants_from_edge_list(capsys, tmp_path):
    path = tmp_path / "ribbon.txt"
    path.write_text("# the ribbon\n" + format_edge_list(ribbon()))
    code, captured = run(capsys, "invariants", "--edges", str(path), "--format", "json")
    assert code == EXIT_OK
    record = json.loads(captured.out)
    assert (record["reg"], record["degH"], record["hPoly"]) == (2, 1, "1 + 3*t")


def test_invariants_text_output(capsys):
    code, captured = run(capsys, "invariants", "--graph6", graph6_encode(complete_bipartite(2, 2)), "--format", "text")
    assert code == EXIT_OK
    assert "total:" in captured.out


def test_invariants_tsv_output(capsys):
    code, captured = run(capsys, "invariants", "--graph6", "A_", "--format", "tsv")
    assert code == EXIT_OK
    assert "A_" in captured.out


def test_invariants_rejects_bad_graph6(capsys):
    code, captured = run(capsys, "invariants", "--graph6", "C~~")
    assert code == EXIT_USAGE
    assert captured.out == ""


def test_invariants_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "invariants", "--edges", str(tmp_path / "absent.txt"))
    assert code == EXIT_USAGE


def test_invariants_respects_desk_cap(capsys, caplog):
    thirteen_isolated = "L" + "?" * 13
    assert graph6_decode(thirteen_isolated).n == 13
    code, captured = run(capsys, "invariants", "--graph6", thirteen_isolated, "--desk-cap", "12")
    assert code == 3
    assert "cap is 12" in caplog.text
    code, _ = run(capsys, "invariants", "--graph6", thirteen_isolated, "--desk-cap", "13")
    assert code == EXIT_OK


def test_unknown_log_level(capsys):
    assert main(["invariants", "--graph6", "A_", "--log-level", "chatty"]) == EXIT_USAGE


def test_unknown_field(capsys):
    code, _ = run(capsys, "invariants", "--graph6", "A_", "--field", "GF4")
    assert code == EXIT_USAGE


def test_invariants_over_rationals(capsys):
    code, captured = run(capsys, "invariants", "--graph6", graph6_encode(ribbon()), "--field", "QQ", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(captured.out)["field"] == "QQ"


def test_missing_subcommand():
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_construct_complete_bipartite(capsys):
    code, captured = run(capsys, "construct", "--family", "kdd", "-d", "3", "--check")
    assert code == EXIT_OK
    assert graph6_decode(captured.out.strip()) == complete_bipartite(3, 3)


def test_construct_realize_with_check(capsys):
    code, captured = run(capsys, "construct", "--family", "realize", "-r", "4", "-d", "2", "--check")
    assert code == EXIT_OK
    assert graph6_decode(captured.out.strip()) == realize(4, 2)


def test_construct_emits_edge_list(capsys):
    code, captured = run(capsys, "construct", "--family", "matching", "-m", "2", "--emit", "edges")
    assert code == EXIT_OK
    assert captured.out == format_edge_list(matching_graph(2))


def test_construct_rejects_small_r(capsys):
    code, _ = run(capsys, "construct", "--family", "gr", "-r", "2")
    assert code == EXIT_USAGE


def test_construct_needs_family_parameters(capsys, caplog):
    code, captured = run(capsys, "construct", "--family", "star")
    assert code == EXIT_USAGE
    assert "needs -n" in caplog.text


def test_construct_cone_over_two_edges(capsys):
    base = graph6_encode(matching_graph(2))
    code, captured = run(capsys, "construct", "--family", "cone", "--graph6", base, "--subset", "all", "--check")
    assert code == EXIT_OK
    assert graph6_decode(captured.out.strip()).n == 5


def test_construct_cone_without_guarantee(capsys, caplog):
    base = graph6_encode(matching_graph(2))
    code, captured = run(capsys, "construct", "--family", "cone", "--graph6", base, "--subset", "0,1,2", "--check")
    assert code == EXIT_CHECK_FAILED
    assert "cardinality" in caplog.text
    code, _ = run(capsys, "construct", "--family", "cone", "--graph6", base, "--subset", "0,1,2")
    assert code == EXIT_OK


def test_construct_cone_needs_subset(capsys):
    code, _ = run(capsys, "construct", "--family", "cone", "--graph6", "A_")
    assert code == EXIT_USAGE


def test_enumerate_four_vertices(capsys):
    code, captured = run(capsys, "enumerate", "--n", "4", "--no-progress", "--format", "json")
    assert code == EXIT_OK
    record = json.loads(captured.out)
    assert record["totalGraphs"] == 11
    assert sum(row["count"] for row in record["rows"]) == 11


def test_enumerate_expect_absent(capsys, caplog):
    code, _ = run(capsys, "enumerate", "--n", "6", "--no-progress", "--format", "tsv", "--expect-absent", "3,1")
    assert code == EXIT_OK
    code, captured = run(capsys, "enumerate", "--n", "6", "--no-progress", "--expect-absent", "3,1;2,1")
    assert code == EXIT_CHECK_FAILED
    assert "(2, 1)" in caplog.text


def test_enumerate_from_corpus(capsys, tmp_path):
    path = tmp_path / "corpus.g6"
    path.write_text("A_\n\n" + graph6_encode(ribbon()) + "\n")
    code, captured = run(capsys, "enumerate", "--input", str(path), "--no-progress", "--format", "json")
    assert code == EXIT_OK
    assert [(row["r"], row["d"]) for row in json.loads(captured.out)["rows"]] == [(1, 1), (2, 1)]


def test_enumerate_reports_corpus_line(capsys, caplog, tmp_path):
    path = tmp_path / "corpus.g6"
    path.write_text("A_\nnot graph6\n")
    code, captured = run(capsys, "enumerate", "--input", str(path))
    assert code == EXIT_USAGE
    assert "line 2" in caplog.text


def test_enumerate_needs_a_source(capsys):
    code, _ = run(capsys, "enumerate")
    assert code == EXIT_USAGE


def test_verify_corpus_command(capsys, tmp_path):
    path = tmp_path / "corpus.g6"
    path.write_text("\n".join(graph6_encode(complete_bipartite(d, d)) for d in range(1, 5)) + "\n")
    code, captured = run(capsys, "verify", "--input", str(path), "--checks", "sum-bound", "--format", "text")
    assert code == EXIT_OK
    assert captured.out.strip() == "sum-bound\t4\t0"


def test_verify_rejects_unknown_check(capsys, tmp_path):
    path = tmp_path / "corpus.g6"
    path.write_text("A_\n")
    code, _ = run(capsys, "verify", "--input", str(path), "--checks", "everything")
    assert code == EXIT_USAGE


def test_parse_pairs():
    assert parse_pairs("3,1;4,1;4,2") == [(3, 1), (4, 1), (4, 2)]
    assert parse_pairs("") == []
    with pytest.raises(UsageError):
        parse_pairs("3;1")


def test_parse_subset():
    assert parse_subset("all", 4) == 0b1111
    assert parse_subset("0, 2", 4) == 0b0101
    with pytest.raises(UsageError):
        parse_subset("a,b", 4)


def test_enumerate_cross_field(capsys):
    code, captured = run(capsys, "enumerate", "--n", "5", "--no-progress", "--format", "json", "--cross-field", "QQ")
    assert code == EXIT_OK
    cross = json.loads(captured.out)["crossField"]
    assert (cross["baseField"], cross["field"], cross["mismatches"]) == ("GF(2)", "QQ", [])
    assert cross["checked"] > 0


def test_enumerate_cross_field_rejects_same_field(capsys):
    code, captured = run(capsys, "enumerate", "--n", "3", "--no-progress", "--cross-field", "GF2")
    assert code == EXIT_USAGE
    assert captured.out == ""
