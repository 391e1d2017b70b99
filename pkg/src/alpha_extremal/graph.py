"""Labeled simple graphs and the structural operations used by the extremal search.

Vertices are the dense labels ``0..n-1``.  Every surgery returns a new graph;
fresh vertices are appended at the end of the label range so outputs are
deterministic.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

CANONICAL_MAX_N = 16


class GraphError(ValueError):
    """Raised when an operation's precondition on a graph is violated."""


class EdgeListParseError(GraphError):
    """Malformed edge-list document; ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(prefix + message)


class EdgeClass(enum.Enum):
    PENDANT_PATH = "PendantPathEdge"
    INTERNAL_PATH = "InternalPathEdge"
    OTHER = "Other"


class CycleClass(enum.IntEnum):
    """Number of cycles in a tricyclic graph."""

    THREE = 3
    FOUR = 4
    SIX = 6
    SEVEN = 7


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable labeled simple undirected graph.

    ``edges`` is stored as a sorted tuple of ``(u, v)`` pairs with ``u < v``.
    Use :meth:`from_edges` to build one from arbitrary input; it validates
    loops, duplicates and the label range.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("order must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            if u > v:
                raise GraphError(f"edge ({u}, {v}) is not normalized")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise GraphError("edges must be sorted")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        normed = []
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            normed.append(_norm(u, v))
        if len(set(normed)) != len(normed):
            dup = next(e for e in normed if normed.count(e) > 1)
            raise GraphError(f"duplicate edge {dup}")
        return cls(n, tuple(sorted(normed)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def _adj(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_set

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of 0..n-1")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


# --------------------------------------------------------------------------
# edge-list text format

def from_edge_list(text: str) -> Graph:
    """Parse the edge-list format: ``#`` comments, header ``n m``, then ``m`` lines ``u v``."""
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError("negative order or size in header", lineno)
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise EdgeListParseError(f"loop at vertex {a}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise EdgeListParseError(f"vertex out of range 0..{n - 1}", lineno)
        if a > b:
            raise EdgeListParseError(f"expected u < v, got {a} {b}", lineno)
        if (a, b) in seen:
            raise EdgeListParseError(
                f"duplicate edge {a} {b} (first on line {seen[(a, b)]})", lineno)
        seen[(a, b)] = lineno
        edges.append((a, b))
    if header is None:
        raise EdgeListParseError("missing 'n m' header")
    if len(edges) != header[1]:
        raise EdgeListParseError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], tuple(sorted(edges)))


def to_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# basic predicates

def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def pendant_count(g: Graph) -> int:
    return sum(1 for d in g.degrees if d == 1)


def is_tricyclic(g: Graph) -> bool:
    return g.m == g.n + 2 and is_connected(g)


# --------------------------------------------------------------------------
# cycles

def _bfs_tree(g: Graph) -> tuple[list[int], list[int]]:
    parent = [-1] * g.n
    depth = [-1] * g.n
    depth[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in sorted(g.neighbors(v)):
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                queue.append(w)
    return parent, depth


def fundamental_cycles(g: Graph) -> list[frozenset[tuple[int, int]]]:
    """Edge sets of the fundamental cycles of a BFS spanning tree rooted at 0."""
    if not is_connected(g):
        raise GraphError("cycle space basis requires a connected graph")
    if g.n == 0:
        return []
    parent, depth = _bfs_tree(g)
    tree = {_norm(v, parent[v]) for v in range(g.n) if parent[v] >= 0}
    cycles = []
    for u, v in g.edges:
        if (u, v) in tree:
            continue
        cyc = {(u, v)}
        a, b = u, v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            cyc.add(_norm(a, parent[a]))
            a = parent[a]
        cycles.append(frozenset(cyc))
    return cycles


def _is_single_cycle(edge_set: frozenset[tuple[int, int]]) -> bool:
    deg: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for u, v in edge_set:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not deg or any(d != 2 for d in deg.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(deg)


def count_cycles(g: Graph) -> int:
    """Number of distinct simple cycles, via combinations of fundamental cycles.

    Every simple cycle is the symmetric difference of a unique nonempty subset
    of fundamental cycles, so checking all ``2**c - 1`` subsets is exact.
    Exponential in the cyclomatic number ``c = m - n + 1``.
    """
    basis = fundamental_cycles(g)
    total = 0
    for r in range(1, len(basis) + 1):
        for combo in combinations(basis, r):
            acc: frozenset[tuple[int, int]] = frozenset()
            for c in combo:
                acc = acc ^ c
            if _is_single_cycle(acc):
                total += 1
    return total


def cycle_class(g: Graph) -> CycleClass:
    if not is_tricyclic(g):
        raise GraphError("cycle class is defined only for tricyclic graphs")
    c = count_cycles(g)
    try:
        return CycleClass(c)
    except ValueError:
        raise RuntimeError(f"tricyclic graph with {c} cycles: cycle counter is broken") from None


# --------------------------------------------------------------------------
# pendant and internal paths

def _walk(g: Graph, prev: int, cur: int, start_edge: tuple[int, int]) -> tuple[list[int], bool]:
    """Follow degree-2 vertices from ``cur`` away from ``prev``.

    Returns the visited vertices ending at the first vertex whose degree is not 2,
    and a flag that is True when the walk closed up on the starting edge
    (the component is a bare cycle).
    """
    path = [cur]
    while g.degrees[cur] == 2:
        nxt = next(w for w in g.neighbors(cur) if w != prev) if len(g.neighbors(cur)) == 2 else prev
        if _norm(cur, nxt) == start_edge:
            return path, True
        prev, cur = cur, nxt
        path.append(cur)
    return path, False


def _chain(g: Graph, u: int, v: int) -> tuple[list[int], bool]:
    """Maximal degree-2 chain through edge uv, as a vertex sequence end-to-end."""
    e = _norm(u, v)
    forward, closed = _walk(g, u, v, e)
    if closed:
        return [u] + forward, True
    backward, _ = _walk(g, v, u, e)
    return list(reversed(backward)) + forward, False


def classify_edge(g: Graph, u: int, v: int) -> EdgeClass:
    """Tag an edge as lying on a pendant path, an internal path, or neither."""
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    chain, closed = _chain(g, u, v)
    if closed:
        return EdgeClass.OTHER
    d_first, d_last = g.degrees[chain[0]], g.degrees[chain[-1]]
    if d_first == 1 or d_last == 1:
        # needs a start vertex of degree >= 2 somewhere on the chain
        if d_first == 1 and d_last == 1 and len(chain) < 3:
            return EdgeClass.OTHER
        return EdgeClass.PENDANT_PATH
    return EdgeClass.INTERNAL_PATH


@dataclass(frozen=True)
class PathInfo:
    start: int
    end: int
    length: int
    vertices: tuple[int, ...]

    @property
    def closed(self) -> bool:
        return self.start == self.end


def pendant_paths(g: Graph) -> list[PathInfo]:
    """Maximal pendant paths, each from its attachment vertex (degree >= 3) to a leaf.

    Components that are bare paths are not reported.
    """
    out = []
    for leaf in range(g.n):
        if g.degrees[leaf] != 1:
            continue
        (nb,) = g.neighbors(leaf)
        chain, _ = _chain(g, leaf, nb)
        if chain[0] != leaf:
            chain.reverse()
        end = chain[-1]
        if g.degrees[end] >= 3:
            out.append(PathInfo(end, leaf, len(chain) - 1, tuple(reversed(chain))))
    return sorted(out, key=lambda p: (p.start, -p.length, p.end))


def internal_paths(g: Graph) -> list[PathInfo]:
    """All internal paths: degree-2 chains whose ends (possibly equal) have degree >= 3."""
    found = {}
    for u, v in g.edges:
        chain, closed = _chain(g, u, v)
        if closed:
            continue
        if g.degrees[chain[0]] >= 3 and g.degrees[chain[-1]] >= 3:
            key = frozenset(_norm(a, b) for a, b in zip(chain, chain[1:]))
            if key not in found:
                a, b = chain[0], chain[-1]
                if (a, b) > (b, a) or (a == b and chain[1] > chain[-2]):
                    chain = list(reversed(chain))
                found[key] = PathInfo(chain[0], chain[-1], len(chain) - 1, tuple(chain))
    return sorted(found.values(), key=lambda p: p.vertices)


# --------------------------------------------------------------------------
# surgeries

def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    """Replace edge uv by u-w-v with w the fresh label n."""
    e = _norm(u, v)
    if e not in g.edge_set:
        raise GraphError(f"({u}, {v}) is not an edge")
    w = g.n
    edges = [x for x in g.edges if x != e] + [(e[0], w), (e[1], w)]
    return Graph.from_edges(g.n + 1, edges)


def relocate_neighbors(g: Graph, u: int, v: int, moved: Iterable[int]) -> Graph:
    """Move the edges from v to each vertex of ``moved`` over to u."""
    moved = set(moved)
    if not moved:
        raise GraphError("the relocated neighbor set must be nonempty")
    if u == v:
        raise GraphError("u and v must differ")
    nv, nu = g.neighbors(v), g.neighbors(u)
    for w in moved:
        if w == u:
            raise GraphError("relocated set may not contain u")
        if w not in nv:
            raise GraphError(f"vertex {w} is not a neighbor of {v}")
        if w in nu:
            raise GraphError(f"vertex {w} is already adjacent to {u}")
    drop = {_norm(v, w) for w in moved}
    edges = [e for e in g.edges if e not in drop] + [_norm(u, w) for w in moved]
    return Graph.from_edges(g.n, edges)


def attach_pendant_paths(g: Graph, v: int, lengths: Sequence[int]) -> Graph:
    """Append one fresh path per entry of ``lengths`` and join its first vertex to v."""
    if not lengths:
        raise GraphError("at least one path length is required")
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if any(int(l) < 1 for l in lengths):
        raise GraphError("path lengths must be >= 1")
    edges = list(g.edges)
    nxt = g.n
    for length in lengths:
        prev = v
        for _ in range(int(length)):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove v and relabel the remaining vertices order-preservingly."""
    keep = [w for w in range(g.n) if w != v]
    index = {w: i for i, w in enumerate(keep)}
    return Graph.from_edges(g.n - 1, ((index[a], index[b]) for a, b in g.edges if v not in (a, b)))


def delete_edges(g: Graph, removed: Iterable[tuple[int, int]]) -> Graph:
    drop = {_norm(a, b) for a, b in removed}
    if not drop <= g.edge_set:
        raise GraphError("can only delete existing edges")
    return Graph(g.n, tuple(e for e in g.edges if e not in drop))


# --------------------------------------------------------------------------
# isomorphism

def _invariant_screen(g: Graph, h: Graph) -> bool:
    if (g.n, g.m) != (h.n, h.m) or sorted(g.degrees) != sorted(h.degrees):
        return False
    if g.n == 0:
        return True
    sg = np.linalg.eigvalsh(g.adjacency_matrix())
    sh = np.linalg.eigvalsh(h.adjacency_matrix())
    return bool(np.all(np.abs(sg - sh) <= 1e-9))


def _search_order(g: Graph) -> list[int]:
    # connected-first order keeps adjacency checks informative early
    order: list[int] = []
    placed = set()
    for root in sorted(range(g.n), key=lambda v: (-g.degrees[v], v)):
        if root in placed:
            continue
        queue = deque([root])
        placed.add(root)
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(g.neighbors(x), key=lambda w: (-g.degrees[w], w)):
                if y not in placed:
                    placed.add(y)
                    queue.append(y)
    return order


def find_isomorphism(g: Graph, h: Graph) -> dict[int, int] | None:
    """An edge-preserving bijection V(g) -> V(h), or None."""
    if not _invariant_screen(g, h):
        return None
    order = _search_order(g)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in range(h.n):
            if y in used or h.degrees[y] != g.degrees[x]:
                continue
            if all(g.has_edge(x, a) == h.has_edge(y, b) for a, b in mapping.items()):
                mapping[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del mapping[x]
                used.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def canonical_labeling(g: Graph) -> tuple[bytes, list[int]]:
    """Canonical byte string and a permutation ``perm`` with ``g.relabel(perm)`` canonical.

    Position classes follow the degree partition (higher degree first).  Among
    all compatible placements the upper-triangular adjacency bits, read column
    by column ((0,1), (0,2), (1,2), (0,3), ...), are lexicographically minimal.
    Twins (same neighborhood apart from each other) are interchangeable, so
    only one of them is tried per position.
    """
    n = g.n
    if n > CANONICAL_MAX_N:
        raise GraphError(f"canonical form supports n <= {CANONICAL_MAX_N}, got {n}")
    deg = g.degrees
    slot_degree = sorted(deg, reverse=True)
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    best_cols: list[int] | None = None
    best_perm: list[int] | None = None
    cols: list[int] = []
    placed: list[int] = []
    used = 0

    def column(v: int) -> int:
        c = 0
        for q in placed:
            c = (c << 1) | ((adj[v] >> q) & 1)
        return c

    def rec(p: int) -> None:
        nonlocal best_cols, best_perm, used
        if best_cols is not None and cols > best_cols[:p]:
            return
        if p == n:
            best_cols = cols.copy()
            best_perm = placed.copy()
            return
        want = slot_degree[p]
        cands: list[int] = []
        for v in range(n):
            if (used >> v) & 1 or deg[v] != want:
                continue
            if any((adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in cands):
                continue
            cands.append(v)
        for c, v in sorted((column(v), v) for v in cands):
            cols.append(c)
            placed.append(v)
            used |= 1 << v
            rec(p + 1)
            used &= ~(1 << v)
            placed.pop()
            cols.pop()

    rec(0)
    perm = [0] * n
    for pos, v in enumerate(best_perm or []):
        perm[v] = pos
    bits = []
    for c_index, c in enumerate(best_cols or []):
        width = c_index
        bits.extend((c >> (width - 1 - i)) & 1 for i in range(width))
    payload = bytes([n]) + bytes(np.packbits(np.array(bits, dtype=np.uint8)).tolist())
    return payload, perm


def canonical_form(g: Graph) -> bytes:
    return canonical_labeling(g)[0]


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g)[1])
