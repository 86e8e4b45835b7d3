from __future__ import annotations

import random
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from narrastyle.graph import (GraphError, WeightedGraph, build_graph,
                              export_graph, read_edge_csv, write_edge_csv)


def simple_graph():
    return WeightedGraph(nodes=("a", "b", "c"),
                         edges=((0, 1, 0.5), (1, 2, 0.25)))


class TestWeightedGraph:
    def test_total_weight(self):
        assert simple_graph().total_weight() == 0.75

    def test_adjacency_symmetric(self):
        A = simple_graph().adjacency()
        assert A[0, 1] == A[1, 0] == 0.5
        assert A[0, 2] == 0.0
        assert np.array_equal(A, A.T)

    def test_duplicate_nodes_rejected(self):
        with pytest.raises(GraphError, match="duplicate node"):
            WeightedGraph(nodes=("a", "a"), edges=())

    def test_bad_endpoints(self):
        with pytest.raises(GraphError, match="endpoints"):
            WeightedGraph(nodes=("a", "b"), edges=((1, 0, 0.5),))
        with pytest.raises(GraphError, match="endpoints"):
            WeightedGraph(nodes=("a", "b"), edges=((0, 0, 0.5),))

    def test_duplicate_edge(self):
        with pytest.raises(GraphError, match="duplicate edge"):
            WeightedGraph(nodes=("a", "b"), edges=((0, 1, 0.5), (0, 1, 0.2)))

    def test_nonpositive_weight(self):
        with pytest.raises(GraphError, match="finite positive"):
            WeightedGraph(nodes=("a", "b"), edges=((0, 1, 0.0),))
        with pytest.raises(GraphError, match="finite positive"):
            WeightedGraph(nodes=("a", "b"), edges=((0, 1, float("nan")),))


class TestBuildGraph:
    def test_threshold_strict(self):
        M = np.array([[1.0, 0.0, 0.3], [0.0, 1.0, 0.5], [0.3, 0.5, 1.0]])
        g = build_graph(("a", "b", "c"), M, edge_threshold=0.3)
        assert g.edges == ((1, 2, 0.5),)

    def test_default_keeps_positive(self):
        M = np.array([[1.0, 0.4, -0.2], [0.4, 1.0, 0.0], [-0.2, 0.0, 1.0]])
        g = build_graph(("a", "b", "c"), M)
        assert g.edges == ((0, 1, 0.4),)

    def test_diagonal_ignored(self):
        M = np.eye(3)
        g = build_graph(("a", "b", "c"), M)
        assert g.edges == ()

    def test_shape_mismatch(self):
        with pytest.raises(GraphError, match="shape"):
            build_graph(("a", "b"), np.eye(3))

    def test_negative_threshold_rejected(self):
        with pytest.raises(GraphError, match=">= 0"):
            build_graph(("a", "b"), np.eye(2), edge_threshold=-0.1)


class TestEdgeCsvRoundTrip:
    def test_exact_round_trip(self, tmp_path):
        rng = random.Random(9)
        nodes = tuple(f"n{i}" for i in range(8))
        edges = []
        for i in range(8):
            for j in range(i + 1, 8):
                if rng.random() < 0.5:
                    edges.append((i, j, rng.random()))
        g = WeightedGraph(nodes=nodes, edges=tuple(edges))
        path = tmp_path / "edges.csv"
        write_edge_csv(g, path)
        back = read_edge_csv(path, nodes=nodes)
        assert back.nodes == g.nodes
        assert back.edges == g.edges  # weights byte-identical via repr

    def test_node_order_from_first_appearance(self, tmp_path):
        g = WeightedGraph(nodes=("x", "y", "z"), edges=((0, 2, 0.5), (1, 2, 0.3)))
        path = tmp_path / "edges.csv"
        write_edge_csv(g, path)
        back = read_edge_csv(path)
        assert back.nodes == ("x", "z", "y")

    def test_isolated_nodes_preserved_with_explicit_list(self, tmp_path):
        g = WeightedGraph(nodes=("a", "b", "iso"), edges=((0, 1, 1.0),))
        path = tmp_path / "edges.csv"
        write_edge_csv(g, path)
        back = read_edge_csv(path, nodes=("a", "b", "iso"))
        assert back.node_count == 3

    def test_unknown_node_rejected(self, tmp_path):
        g = WeightedGraph(nodes=("a", "b"), edges=((0, 1, 1.0),))
        path = tmp_path / "edges.csv"
        write_edge_csv(g, path)
        with pytest.raises(GraphError, match="unknown node"):
            read_edge_csv(path, nodes=("a",))

    def test_bad_header(self, tmp_path):
        path = tmp_path / "edges.csv"
        path.write_text("from,to,w\n")
        with pytest.raises(GraphError, match="bad edge csv header"):
            read_edge_csv(path)


class TestExports:
    def test_community_csv(self, tmp_path):
        g = simple_graph()
        part = {"a": 0, "b": 0, "c": 1}
        export_graph(g, part, tmp_path / "e.csv", tmp_path / "c.csv")
        lines = (tmp_path / "c.csv").read_text().splitlines()
        assert lines[0] == "node,community"
        assert lines[1:] == ["a,0", "b,0", "c,1"]

    def test_gexf_structure(self, tmp_path):
        g = simple_graph()
        part = {"a": 0, "b": 0, "c": 1}
        gexf = tmp_path / "g.gexf"
        export_graph(g, part, tmp_path / "e.csv", tmp_path / "c.csv", gexf)
        ns = {"g": "http://www.gexf.net/1.2draft"}
        root = ET.parse(gexf).getroot()
        nodes = root.findall(".//g:node", ns)
        edges = root.findall(".//g:edge", ns)
        assert [n.get("id") for n in nodes] == ["a", "b", "c"]
        assert len(edges) == 2
        assert edges[0].get("source") == "a"
        assert edges[0].get("weight") == "0.5"
        attvalues = root.findall(".//g:node[@id='c']//g:attvalue", ns)
        assert attvalues[0].get("value") == "1"
