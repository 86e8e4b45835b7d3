"""Weighted similarity network: construction and file exports."""

from __future__ import annotations

import csv
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph; edges are (i, j, weight) with i < j node indices."""
    nodes: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("duplicate node ids")
        seen = set()
        n = len(self.nodes)
        for i, j, w in self.edges:
            if not (0 <= i < j < n):
                raise GraphError(f"bad edge endpoints ({i}, {j})")
            if (i, j) in seen:
                raise GraphError(f"duplicate edge ({i}, {j})")
            if not (math.isfinite(w) and w > 0):
                raise GraphError(f"edge ({i}, {j}) weight must be finite positive")
            seen.add((i, j))

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def total_weight(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    def adjacency(self) -> np.ndarray:
        A = np.zeros((len(self.nodes), len(self.nodes)), dtype=np.float64)
        for i, j, w in self.edges:
            A[i, j] = w
            A[j, i] = w
        return A


def build_graph(doc_ids: Sequence[str], M: np.ndarray,
                edge_threshold: float = 0.0) -> WeightedGraph:
    """Edge (i, j) with weight M[i][j] for every strictly-above-threshold
    off-diagonal entry; default threshold keeps all positive edges."""
    if edge_threshold < 0:
        raise GraphError("edge_threshold must be >= 0")
    n = len(doc_ids)
    if M.shape != (n, n):
        raise GraphError(f"matrix shape {M.shape} does not match {n} ids")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            w = float(M[i, j])
            if w > edge_threshold:
                edges.append((i, j, w))
    return WeightedGraph(nodes=tuple(doc_ids), edges=tuple(edges))


def write_edge_csv(g: WeightedGraph, path) -> None:
    """`source,target,weight` rows; weights at full precision so the list
    re-imports exactly."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["source", "target", "weight"])
        for i, j, w in g.edges:
            writer.writerow([g.nodes[i], g.nodes[j], repr(w)])


def read_edge_csv(path, nodes: Sequence[str] | None = None) -> WeightedGraph:
    """Rebuild a graph from an edge list; pass `nodes` to preserve isolated
    nodes and node order, otherwise order of first appearance is used."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["source", "target", "weight"]:
            raise GraphError(f"{path}: bad edge csv header {header}")
        for row in reader:
            if len(row) != 3:
                raise GraphError(f"{path}: bad edge row {row}")
            rows.append((row[0], row[1], float(row[2])))
    if nodes is None:
        ordered: list[str] = []
        for a, b, _ in rows:
            for name in (a, b):
                if name not in ordered:
                    ordered.append(name)
        nodes = ordered
    index = {name: i for i, name in enumerate(nodes)}
    edges = []
    for a, b, w in rows:
        if a not in index or b not in index:
            raise GraphError(f"{path}: edge references unknown node")
        i, j = index[a], index[b]
        if i > j:
            i, j = j, i
        edges.append((i, j, w))
    return WeightedGraph(nodes=tuple(nodes), edges=tuple(edges))


def write_community_csv(g: WeightedGraph, partition: Mapping[str, int], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["node", "community"])
        for name in g.nodes:
            writer.writerow([name, partition.get(name, "")])


def write_gexf(g: WeightedGraph, partition: Mapping[str, int], path) -> None:
    root = ET.Element("gexf", xmlns="http://www.gexf.net/1.2draft", version="1.2")
    graph_el = ET.SubElement(root, "graph", defaultedgetype="undirected")
    attrs = ET.SubElement(graph_el, "attributes", {"class": "node"})
    ET.SubElement(attrs, "attribute", id="0", title="community", type="integer")
    nodes_el = ET.SubElement(graph_el, "nodes")
    for name in g.nodes:
        node_el = ET.SubElement(nodes_el, "node", id=name, label=name)
        if name in partition:
            values = ET.SubElement(node_el, "attvalues")
            ET.SubElement(values, "attvalue", attribute="0",
                          value=str(partition[name]))
    edges_el = ET.SubElement(graph_el, "edges")
    for eid, (i, j, w) in enumerate(g.edges):
        ET.SubElement(edges_el, "edge", id=str(eid), source=g.nodes[i],
                      target=g.nodes[j], weight=repr(w))
    ET.indent(root)
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)


def export_graph(g: WeightedGraph, partition: Mapping[str, int],
                 edge_path, community_path, gexf_path=None) -> None:
    write_edge_csv(g, edge_path)
    write_community_csv(g, partition, community_path)
    if gexf_path is not None:
        write_gexf(g, partition, gexf_path)
