"""Breadth-first exploration of the mutation graph of a seed."""

from __future__ import annotations

from dataclasses import dataclass

from .mutation import fn_mutate

__all__ = ["OrbitNode", "OrbitEdge", "OrbitGraph", "explore", "to_dot"]


@dataclass(frozen=True)
class OrbitNode:
    key: str
    collection: object
    potential: object
    depth: int


@dataclass(frozen=True)
class OrbitEdge:
    source: str
    direction: tuple
    target: str


@dataclass(frozen=True)
class OrbitGraph:
    form: object
    nodes: tuple
    edges: tuple
    truncated: bool


def _node_key(form, collection, potential):
    if form.rank == 2:
        form_part = f"k{form.k}"
    else:
        form_part = str(form.matrix)
    parts = [form_part, collection.encode()]
    if potential is not None:
        parts.append(potential.to_string())
    return " | ".join(parts)


def explore(seed, depth, include_potential=False):
    """BFS over seed mutations, one step per distinct direction.

    Nodes are identified by form, collection, and (optionally) the mutated
    potential.  Nodes at the depth limit are not expanded; the graph is
    flagged truncated when any such unexpanded node remains.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    form = seed.form
    start_pot = seed.potential if include_potential else None
    start_key = _node_key(form, seed.collection, start_pot)
    start = OrbitNode(start_key, seed.collection, start_pot, 0)
    nodes = {start_key: start}
    edges = []
    frontier = [start]
    for level in range(depth):
        next_frontier = []
        for node in frontier:
            for d in node.collection.distinct_directions():
                new_col = node.collection.mutate(d, form)
                new_pot = None
                if include_potential:
                    new_pot = fn_mutate(node.potential, d, -form)
                key = _node_key(form, new_col, new_pot)
                edges.append(OrbitEdge(node.key, d, key))
                if key not in nodes:
                    new_node = OrbitNode(key, new_col, new_pot, level + 1)
                    nodes[key] = new_node
                    next_frontier.append(new_node)
        frontier = next_frontier
    return OrbitGraph(
        form=form,
        nodes=tuple(nodes.values()),
        edges=tuple(edges),
        truncated=bool(frontier),
    )


def to_dot(graph):
    """Deterministic DOT rendering of an orbit graph."""
    keys = sorted(node.key for node in graph.nodes)
    ids = {key: f"n{i}" for i, key in enumerate(keys)}
    lines = ["digraph orbit {"]
    for key in keys:
        label = key.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {ids[key]} [label="{label}"];')
    for e in sorted(graph.edges, key=lambda e: (e.source, e.direction, e.target)):
        label = "(" + ",".join(str(x) for x in e.direction) + ")"
        lines.append(f'  {ids[e.source]} -> {ids[e.target]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
