"""Seeded random graph generators for the property suites."""

from __future__ import annotations

import numpy as np

from .graph import Graph, delete_edges, delete_vertex, is_connected

MAX_RETRIES = 10_000


def random_connected_graph(rng: np.random.Generator, n_min: int = 2, n_max: int = 10) -> Graph:
    """Uniform edge-subset draw (random order and size) filtered for connectivity."""
    for _ in range(MAX_RETRIES):
        n = int(rng.integers(n_min, n_max + 1))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        m = int(rng.integers(n - 1, len(pairs) + 1))
        pick = rng.choice(len(pairs), size=m, replace=False)
        g = Graph.from_edges(n, (pairs[i] for i in pick))
        if is_connected(g):
            return g
    raise RuntimeError("could not draw a connected graph")


def random_regular_graph(rng: np.random.Generator, n_min: int = 3, n_max: int = 10) -> Graph:
    """Connected r-regular graph from the pairing model, rejecting loops and multi-edges."""
    for _ in range(MAX_RETRIES):
        n = int(rng.integers(n_min, n_max + 1))
        r = int(rng.integers(2, n))
        if n * r % 2:
            continue
        stubs = np.repeat(np.arange(n), r)
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        edges = {tuple(sorted(map(int, p))) for p in pairs}
        if len(edges) != len(pairs):
            continue
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            return g
    raise RuntimeError("could not draw a connected regular graph")


def _bridges(g: Graph) -> set[tuple[int, int]]:
    out = set()
    for e in g.edges:
        if not is_connected(delete_edges(g, [e])):
            out.add(e)
    return out


def random_connected_proper_subgraph(rng: np.random.Generator, g: Graph) -> Graph | None:
    """Delete a non-cut vertex or some non-bridge edges; None if neither is possible."""
    moves = []
    if g.n >= 2:
        moves.append("vertex")
    if g.m >= g.n:
        moves.append("edges")
    rng.shuffle(moves)
    for move in moves:
        if move == "vertex":
            order = rng.permutation(g.n)
            for v in order:
                h = delete_vertex(g, int(v))
                if is_connected(h):
                    return h
        else:
            h = g
            for _ in range(int(rng.integers(1, g.m - g.n + 2))):
                spare = sorted(set(h.edges) - _bridges(h))
                if not spare:
                    break
                h = delete_edges(h, [spare[int(rng.integers(len(spare)))]])
            if h.m < g.m:
                return h
    return None
