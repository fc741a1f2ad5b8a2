import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gcorr.graphgen import Graph, erdos_renyi
from gcorr.io import GraphFile, GraphFormat, GraphFormatError, parse_graph, read_graph, write_graph

PATH_GRAPH = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.uint8)


def test_tsv_path_graph(tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text("0\t1\n1\t2\n")
    g = parse_graph(GraphFile(f, GraphFormat.EDGE_LIST_TSV, 3))
    np.testing.assert_array_equal(g.adjacency, PATH_GRAPH)


def test_tsv_duplicates_and_reversed_pairs(tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text("0\t1\n1\t0\n1\t2\n2\t1\n")
    np.testing.assert_array_equal(parse_graph(f, n=3).adjacency, PATH_GRAPH)


def test_tsv_self_loop_dropped(tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text("0\t1\n1\t2\n2\t2\n")
    graph, loops = read_graph(f, n=3)
    assert loops == 1
    with pytest.warns(UserWarning, match="dropped 1 self-loop"):
        g = parse_graph(f, n=3)
    np.testing.assert_array_equal(g.adjacency, PATH_GRAPH)


def test_matrix_market_one_indexed(tmp_path):
    f = tmp_path / "g.mtx"
    f.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n3 3 2\n1 2\n2 3\n")
    np.testing.assert_array_equal(parse_graph(f).adjacency, PATH_GRAPH)
    out = write_graph(Graph(PATH_GRAPH), tmp_path / "w.mtx")
    np.testing.assert_array_equal(parse_graph(out).adjacency, PATH_GRAPH)


def test_malformed_line_reports_line_number(tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text("0\t1\n1\tx\n")
    with pytest.raises(GraphFormatError) as err:
        parse_graph(f)
    assert err.value.lineno == 2
    assert ":2:" in str(err.value)


def test_out_of_range_node(tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text("0\t1\n1\t3\n")
    with pytest.raises(GraphFormatError, match="out of range"):
        parse_graph(f, n=3)
    m = tmp_path / "g.mtx"
    m.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n4 1\n")
    with pytest.raises(GraphFormatError):
        parse_graph(m)


def test_dense_csv_rejects_asymmetric(tmp_path):
    f = tmp_path / "g.csv"
    f.write_text("0,1,0\n0,0,1\n0,1,0\n")
    with pytest.raises(GraphFormatError, match="symmetric"):
        parse_graph(f)


def test_unknown_suffix(tmp_path):
    with pytest.raises(ValueError):
        parse_graph(tmp_path / "g.xyz")


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(2, 30), st.floats(0, 1), st.integers(0, 2**32), st.sampled_from(list(GraphFormat)))
def test_round_trip(tmp_path, n, p, seed, fmt):
    g = erdos_renyi(n, p, seed)
    path = write_graph(g, tmp_path / f"g.{fmt.value}")
    back = parse_graph(path, n=n if fmt is GraphFormat.EDGE_LIST_TSV else None)
    assert np.array_equal(back.adjacency, g.adjacency)
    assert back.adjacency.dtype == g.adjacency.dtype
