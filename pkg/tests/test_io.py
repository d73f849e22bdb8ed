"""Tests for netcorr.io (edge-list and CSV formats)."""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from context import netcorr  # noqa: F401
from factories import K23_EDGES, write, write_signal
from netcorr.graph import GraphError, complete_bipartite_graph, parse_edge_list
from netcorr.io import (
    FormatError,
    embedding_to_csv,
    load_edge_list,
    load_embedding_csv,
    load_signal_csv,
    load_weight_csv,
    matrix_to_csv,
    read_matrix_csv,
    signal_to_csv,
    weight_to_csv,
)
from netcorr.metrics import commute_time_embedding, effective_resistance
from netcorr.weights import exp_weight


@pytest.fixture
def k23():
    return complete_bipartite_graph(2, 3)


class TestEdgeList:
    def test_load(self, tmp_path):
        g = load_edge_list(write(tmp_path / "k23.txt", K23_EDGES))
        assert g.n == 5 and g.m == 6

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_edge_list(tmp_path / "absent.txt")

    def test_parse_errors_surface(self, tmp_path):
        with pytest.raises(GraphError):
            load_edge_list(write(tmp_path / "loop.txt", "a a\n"))


class TestMatrixCsv:
    def test_written_matrix_reads_back_exactly(self, tmp_path, k23):
        omega = effective_resistance(k23)
        path = tmp_path / "omega.csv"
        matrix_to_csv(omega.values, omega.nodes, path)
        values, labels = read_matrix_csv(path)
        assert labels == list(k23.nodes)
        assert_array_equal(values, omega.values)

    def test_header_must_match_rows(self, tmp_path):
        path = write(tmp_path / "bad.csv", "node,a,b\nb,0,1\na,1,0\n")
        with pytest.raises(FormatError, match="differ"):
            read_matrix_csv(path)

    def test_first_column_must_be_node(self, tmp_path):
        path = write(tmp_path / "bad.csv", "id,a,b\na,0,1\nb,1,0\n")
        with pytest.raises(FormatError, match="first column"):
            read_matrix_csv(path)

    def test_non_numeric_entry(self, tmp_path):
        path = write(tmp_path / "bad.csv", "node,a,b\na,0,x\nb,1,0\n")
        with pytest.raises(FormatError):
            read_matrix_csv(path)

    def test_empty_file(self, tmp_path):
        with pytest.raises(FormatError):
            read_matrix_csv(write(tmp_path / "empty.csv", ""))


class TestWeightCsv:
    def test_reordered_into_graph_order(self, tmp_path, k23):
        w = exp_weight(effective_resistance(k23), 1.0)
        order = [4, 2, 0, 1, 3]
        labels = [k23.nodes[i] for i in order]
        path = tmp_path / "w.csv"
        matrix_to_csv(w.values[np.ix_(order, order)], labels, path)
        loaded = load_weight_csv(path, k23)
        assert loaded.nodes == k23.nodes
        assert_array_equal(loaded.values, w.values)
        assert loaded.source_kind == "external"

    def test_label_mismatch(self, tmp_path, k23):
        path = tmp_path / "w.csv"
        matrix_to_csv(np.eye(2), ["u1", "zz"], path)
        with pytest.raises(FormatError, match="missing"):
            load_weight_csv(path, k23)

    def test_weight_to_csv_text(self, k23):
        w = exp_weight(effective_resistance(k23), 1.0)
        text = weight_to_csv(w)
        assert text.splitlines()[0] == "node,u1,u2,v1,v2,v3"
        assert text.splitlines()[1].startswith("u1,1,")


class TestSignalCsv:
    def test_reordered_into_graph_order(self, tmp_path, k23):
        path = write_signal(tmp_path / "x.csv", ["v3", "u1", "v1", "u2", "v2"], [5.0, 1.0, 3.0, 2.0, 4.0])
        x = load_signal_csv(path, k23)
        assert x.nodes == k23.nodes
        assert_array_equal(x.values, [1.0, 2.0, 3.0, 4.0, 5.0])

    def test_missing_node(self, tmp_path, k23):
        path = write_signal(tmp_path / "x.csv", ["u1", "u2", "v1", "v2"], [1.0, 2.0, 3.0, 4.0])
        with pytest.raises(FormatError, match="missing"):
            load_signal_csv(path, k23)

    def test_duplicate_node(self, tmp_path, k23):
        path = write_signal(tmp_path / "x.csv", ["u1", "u1", "u2", "v1", "v2", "v3"], [1, 1, 2, 3, 4, 5])
        with pytest.raises(FormatError, match="duplicate"):
            load_signal_csv(path, k23)

    def test_extra_column(self, tmp_path, k23):
        path = write(tmp_path / "x.csv", "node,value,other\nu1,1,1\n")
        with pytest.raises(FormatError, match="node,value"):
            load_signal_csv(path, k23)

    def test_blank_value(self, tmp_path, k23):
        path = write(tmp_path / "x.csv", "node,value\nu1,1\nu2,\nv1,3\nv2,4\nv3,5\n")
        with pytest.raises(FormatError, match="non-finite"):
            load_signal_csv(path, k23)

    def test_signal_to_csv_reads_back(self, tmp_path, k23):
        path = write_signal(tmp_path / "x.csv", list(k23.nodes), [0.1, 0.2, 0.3, 0.4, 1 / 3])
        x = load_signal_csv(path, k23)
        again = tmp_path / "again.csv"
        again.write_text(signal_to_csv(x), encoding="utf-8")
        assert_array_equal(load_signal_csv(again, k23).values, x.values)


class TestEmbeddingCsv:
    def test_commute_time_embedding_reads_back(self, tmp_path, k23):
        z = commute_time_embedding(k23)
        path = tmp_path / "z.csv"
        embedding_to_csv(z, path)
        assert path.read_text().splitlines()[0] == "node,c1,c2,c3,c4"
        loaded = load_embedding_csv(path, k23)
        assert_array_equal(loaded.coordinates, z.coordinates)

    def test_rows_follow_graph_order(self, tmp_path, k23):
        path = write(tmp_path / "z.csv", "node,c1\nv3,5\nv2,4\nv1,3\nu2,2\nu1,1\n")
        loaded = load_embedding_csv(path, k23)
        assert loaded.nodes == k23.nodes
        assert_allclose(loaded.coordinates[:, 0], [1, 2, 3, 4, 5])

    def test_no_coordinates(self, tmp_path):
        with pytest.raises(FormatError, match="no coordinate"):
            load_embedding_csv(write(tmp_path / "z.csv", "node\na\nb\n"))


class TestMissingValueLookalikeLabels:
    EDGES = "NA b\nb null\nnull nan\nnan NA\n"

    def test_signal_labels_survive(self, tmp_path):
        g = parse_edge_list(self.EDGES)
        path = write_signal(tmp_path / "x.csv", ["nan", "null", "b", "NA"], [4.0, 3.0, 2.0, 1.0])
        x = load_signal_csv(path, g)
        assert x.nodes == g.nodes
        assert_array_equal(x.values, [1.0, 2.0, 3.0, 4.0])

    def test_matrix_reads_back_with_same_labels(self, tmp_path):
        g = parse_edge_list(self.EDGES)
        omega = effective_resistance(g)
        path = tmp_path / "omega.csv"
        matrix_to_csv(omega.values, omega.nodes, path)
        values, labels = read_matrix_csv(path)
        assert labels == ["NA", "b", "null", "nan"]
        assert_array_equal(values, omega.values)

    def test_literal_nan_value_is_still_rejected(self, tmp_path):
        g = parse_edge_list(self.EDGES)
        path = write(tmp_path / "x.csv", "node,value\nNA,1\nb,nan\nnull,3\nnan,4\n")
        with pytest.raises(FormatError, match="non-finite"):
            load_signal_csv(path, g)
