"""Tests for edge-list, DIMACS, DOT and JSON sidecar handling."""

import json
import os
import tempfile

import pytest

from token_digraphs import Digraph, Graph, ParseError, family, reduce, token_digraph
from token_digraphs.cnf import CnfFormula
from token_digraphs.formats import (
    gadget_role_map,
    load_digraph,
    load_dimacs,
    parse_digraph,
    parse_dimacs,
    parse_graph,
    save_edge_list,
    save_json,
    to_dimacs,
    to_dot,
    to_edge_list,
    token_node_map,
)


class TestEdgeList:
    def test_parse_digraph(self):
        d = parse_digraph("3 3\n0 1\n1 2\n2 0\n")
        assert d == Digraph(3, ((0, 1), (1, 2), (2, 0)))

    def test_comments_and_blank_lines_ignored(self):
        d = parse_digraph("# a digon\n\n2 2\n0 1\n# back\n1 0\n")
        assert d.num_arcs == 2

    def test_canonical_output(self):
        text = "3 2\n0 1\n1 2\n"
        assert to_edge_list(parse_digraph(text)) == text

    def test_serializer_sorts(self):
        d = Digraph(3, ((2, 0), (0, 1)))
        assert to_edge_list(d) == "3 2\n0 1\n2 0\n"

    def test_graph_round_trip_canonical(self):
        g = parse_graph("3 2\n1 0\n2 1\n")
        assert to_edge_list(g) == "3 2\n0 1\n1 2\n"

    def test_missing_header(self):
        with pytest.raises(ParseError, match="empty input"):
            parse_digraph("# nothing\n")

    def test_self_loop_reports_line(self):
        with pytest.raises(ParseError) as info:
            parse_digraph("2 1\n1 1\n")
        assert info.value.line == 2
        assert str(info.value).startswith("line 2:")

    def test_out_of_range(self):
        with pytest.raises(ParseError, match="out of range"):
            parse_digraph("2 1\n0 5\n")

    def test_duplicate_arc(self):
        with pytest.raises(ParseError, match="duplicate arc"):
            parse_digraph("2 2\n0 1\n0 1\n")

    def test_digon_is_fine_for_digraphs(self):
        assert parse_digraph("2 2\n0 1\n1 0\n").num_arcs == 2

    def test_digon_is_duplicate_for_graphs(self):
        with pytest.raises(ParseError, match="duplicate edge"):
            parse_graph("2 2\n0 1\n1 0\n")

    def test_count_mismatch(self):
        with pytest.raises(ParseError, match="declares 3"):
            parse_digraph("3 3\n0 1\n")

    def test_non_integer(self):
        with pytest.raises(ParseError, match="integers"):
            parse_digraph("2 1\n0 x\n")

    def test_parse_error_is_graph_error(self):
        from token_digraphs import GraphError

        assert issubclass(ParseError, GraphError)


class TestDimacs:
    def test_parse(self):
        text = "c example\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n"
        f = parse_dimacs(text)
        assert f == CnfFormula(3, ((1, -2, 3), (-1, 2, 3)))

    def test_clause_may_span_lines(self):
        f = parse_dimacs("p cnf 2 1\n1 2\n-1 0\n")
        assert f.clauses == ((1, 2, -1),)

    def test_canonical_round_trip(self):
        text = "p cnf 3 1\n1 -2 3 0\n"
        assert to_dimacs(parse_dimacs(text)) == text

    def test_wrong_clause_width(self):
        with pytest.raises(ParseError, match="exactly 3"):
            parse_dimacs("p cnf 2 1\n1 2 0\n")

    def test_literal_out_of_range(self):
        with pytest.raises(ParseError, match="exceeds"):
            parse_dimacs("p cnf 2 1\n1 2 3 0\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="before"):
            parse_dimacs("1 2 3 0\n")

    def test_unterminated_clause(self):
        with pytest.raises(ParseError, match="terminated"):
            parse_dimacs("p cnf 3 1\n1 2 3\n")


class TestDot:
    def test_directed_dot(self):
        text = to_dot(family("cycle", 3, directed=True))
        assert text.startswith('digraph "G" {')
        assert "  0 -> 1;" in text
        assert text.rstrip().endswith("}")

    def test_undirected_dot(self):
        text = to_dot(Graph(2, ((0, 1),)), name="edge")
        assert text.startswith('graph "edge" {')
        assert "  0 -- 1;" in text

    def test_labels_and_colors(self):
        text = to_dot(Graph(2, ((0, 1),)), labels=["a", "b"], colors=[0, 1])
        assert 'label="a"' in text
        assert "fillcolor" in text
        assert "class=1" in text


class TestSidecars:
    def test_token_node_map(self):
        token = token_digraph(family("cycle", 4, directed=True), 2)
        payload = token_node_map(token)
        assert payload["host_n"] == 4
        assert payload["k"] == 2
        assert payload["nodes"][0] == [0, 1]
        assert len(payload["nodes"]) == 6

    def test_gadget_role_map(self):
        gadget = reduce(CnfFormula(3, ((1, -2, 3),)))
        payload = gadget_role_map(gadget)
        kinds = [r["kind"] for r in payload["roles"]]
        assert kinds.count("literal") == 6
        assert kinds.count("clause") == 3
        assert kinds[-1] == "sink"


class TestFiles:
    def test_save_and_load(self):
        d = family("path", 4, directed=True)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "p4.txt")
            save_edge_list(d, path)
            assert load_digraph(path) == d

    def test_save_json_sorted(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "x.json")
            save_json({"b": 1, "a": 2}, path)
            with open(path) as f:
                text = f.read()
            assert text.index('"a"') < text.index('"b"')
            assert json.loads(text) == {"a": 2, "b": 1}

    def test_load_dimacs(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "f.cnf")
            with open(path, "w") as f:
                f.write("p cnf 3 1\n1 2 3 0\n")
            assert load_dimacs(path).num_clauses == 1
