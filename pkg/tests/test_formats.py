import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus_lines as regenerate_corpus
from graphs import C4, K3, L_P3, P3, P4, Q3
from pstdecide.decider import decide_all, decide_pst
from pstdecide.formats import (
    InputSpec,
    ParseError,
    encode_graph6,
    load_matrix,
    parse_edgelist,
    parse_graph6,
    parse_matrix,
    verdict_from_dict,
    verdict_to_dict,
)


@pytest.mark.parametrize("line, n, edges", [
    ("A_", 2, [(0, 1)]),
    ("Bg", 3, [(0, 1), (1, 2)]),
    ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
    (">>graph6<<A_", 2, [(0, 1)]),
    ("@", 1, []),
])
def test_parse_graph6(line, n, edges):
    got_n, got = parse_graph6(line)
    assert got_n == n
    assert sorted(got) == edges


@pytest.mark.parametrize("line", ["A", "A_A", "A\x1f", "~?@A", "", "B\x7f"])
def test_parse_graph6_rejects(line):
    with pytest.raises(ParseError):
        parse_graph6(line)


def test_encode_graph6():
    assert encode_graph6(3, [(0, 1), (1, 2)]) == "Bg"


def test_edgelist_and_matrix():
    assert parse_edgelist("n 2\n0 1") == (2, [(0, 1)])
    assert parse_edgelist("# comment\n0 1\n1 2\n") == (3, [(0, 1), (1, 2)])
    assert parse_matrix("0 1\n1 0").entries == ((0, 1), (1, 0))
    for bad in ["0 2\n1 0", "0 1\n1", "0 x\nx 0", ""]:
        with pytest.raises(ParseError):
            parse_matrix(bad)
    for bad in ["n 2\n0 2", "0 1 2", "0 a"]:
        with pytest.raises(ParseError):
            parse_edgelist(bad)


def test_load_matrix_models():
    assert load_matrix("Bg", "graph6", "laplacian") == L_P3
    assert load_matrix("0 1 0\n1 0 1\n0 1 0", "matrix", "laplacian") == L_P3
    raw = load_matrix("2 1\n1 -3", "matrix", "raw")
    assert raw.entries == ((2, 1), (1, -3))
    with pytest.raises(ParseError):
        load_matrix("0 2\n2 0", "matrix", "adjacency")
    with pytest.raises(ParseError):
        load_matrix("A_", "graph6", "raw")
    with pytest.raises(ValueError):
        InputSpec("-", "graph6", "raw")


def test_corpus_file_is_reproducible(corpus_lines):
    assert corpus_lines == regenerate_corpus()
    sizes = [parse_graph6(line)[0] for line in corpus_lines]
    assert len(corpus_lines) == 143
    assert sizes.count(6) == 112


def test_corpus_parse_matches_networkx_and_round_trips(corpus_lines):
    for line in corpus_lines:
        n, edges = parse_graph6(line)
        G = nx.from_graph6_bytes(line.encode())
        assert n == G.number_of_nodes()
        assert sorted(edges) == sorted(tuple(sorted(e)) for e in G.edges())
        assert encode_graph6(n, edges) == line


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 62).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                        .filter(lambda e: e[0] < e[1]), max_size=40))))
def test_graph6_round_trip(g):
    n, edges = g
    line = encode_graph6(n, sorted(edges))
    got_n, got = parse_graph6(line)
    assert got_n == n and sorted(got) == sorted(edges)
    assert nx.to_graph6_bytes(_nx(n, edges), header=False).decode().strip() == line


def _nx(n, edges):
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    return G


@pytest.mark.parametrize("M", [P3, C4, K3, P4, L_P3, Q3])
def test_verdict_json_round_trip(M):
    for v in decide_all(M):
        d = json.loads(json.dumps(verdict_to_dict(v)))
        assert verdict_from_dict(d) == v


def test_yes_record_schema():
    d = verdict_to_dict(decide_pst(P3, 0, 2))
    assert d["status"] == "yes" and d["pair"] == [0, 2]
    assert (d["g"], d["delta"], d["time"]) == (1, 2, "pi/sqrt(2)")
    assert d["time_decimal"] == "2.2214414690791831"
    assert [s["sign"] for s in d["signs"]] == [1, -1, 1]


def test_no_record_schema():
    d = verdict_to_dict(decide_pst(P4, 0, 3))
    assert d["failure"] == "NotPeriodic"
    assert d["witness"] == {"reason": "MissingIntegerZRoot", "poly": [16, -12, 1]}


def test_verdict_from_dict_rejects_garbage():
    with pytest.raises(ValueError):
        verdict_from_dict({"status": "no", "pair": [0, 1], "failure": "Bogus", "witness": {}})
    with pytest.raises(ValueError):
        verdict_from_dict({"status": "perhaps", "pair": [0, 1]})
